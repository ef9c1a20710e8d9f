#include "fia/sampling.hpp"

namespace fia {

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ull * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

Scalar random_scalar(Rng& rng, CoeffRing ring, long magnitude) {
  switch (ring.kind()) {
    case CoeffRing::Kind::Zp: return Scalar::from_residue(ring, rng.below(ring.modulus()));
    case CoeffRing::Kind::Z: return Scalar::from_int(ring, rng.between(-magnitude, magnitude));
    case CoeffRing::Kind::Q: {
      long num = rng.between(-magnitude, magnitude);
      long den = rng.between(1, 3);
      return Scalar::from_fraction(ring, mpz_class(num), mpz_class(den));
    }
  }
  return Scalar::zero(ring);
}

FiElement random_element(Rng& rng, const PosetRef& poset, CoeffRing ring, double density) {
  FiElement a(poset, ring);
  for (std::size_t k = 0; k < poset->pair_count(); ++k) {
    if (rng.chance(density)) a.set(k, random_scalar(rng, ring));
  }
  return a;
}

LinearEndo random_endo(Rng& rng, const PosetRef& poset, CoeffRing ring, double density) {
  LinearEndo d(poset, ring);
  const std::size_t n = d.dimension();
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.chance(density)) d.set_entry(i, j, random_scalar(rng, ring));
    }
  }
  return d;
}

LinearEndo random_combination(Rng& rng, std::span<const LinearEndo> basis, const PosetRef& poset, CoeffRing ring) {
  LinearEndo d(poset, ring);
  for (const auto& b : basis) d = d + random_scalar(rng, ring) * b;
  return d;
}

TransitiveMap random_transitive_map(Rng& rng, const PosetRef& poset, CoeffRing ring) {
  TransitiveMap s(poset, ring);
  for (std::size_t k = 0; k < poset->pair_count(); ++k) s.set(k, random_scalar(rng, ring));
  return s;
}

TransitiveMap random_coboundary(Rng& rng, const PosetRef& poset, CoeffRing ring) {
  std::vector<Scalar> f;
  for (std::size_t x = 0; x < poset->size(); ++x) f.push_back(random_scalar(rng, ring));
  return TransitiveMap::coboundary(poset, ring, f);
}

}  // namespace fia
