#pragma once

#include <cstdint>
#include <span>

#include "fia/deriv.hpp"
#include "fia/random.hpp"

namespace fia {

/// Stateless seed derivation (splitmix64 finalizer), so trial i of a
/// campaign has the same stream no matter which worker runs it.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

/// Uniform residue over Zp; over Q a fraction with numerator in
/// [-magnitude, magnitude] and denominator in [1, 3]; over Z an integer in
/// [-magnitude, magnitude].
Scalar random_scalar(Rng& rng, CoeffRing ring, long magnitude = 3);

/// Each coefficient is nonzero-sampled with probability `density`.
FiElement random_element(Rng& rng, const PosetRef& poset, CoeffRing ring, double density = 0.6);

LinearEndo random_endo(Rng& rng, const PosetRef& poset, CoeffRing ring, double density = 0.3);

/// Random combination of the given basis.
LinearEndo random_combination(Rng& rng, std::span<const LinearEndo> basis, const PosetRef& poset, CoeffRing ring);

TransitiveMap random_transitive_map(Rng& rng, const PosetRef& poset, CoeffRing ring);

/// s(x,y) = f(y) - f(x) for a random f.
TransitiveMap random_coboundary(Rng& rng, const PosetRef& poset, CoeffRing ring);

}  // namespace fia
