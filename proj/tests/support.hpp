#pragma once

#include <string>
#include <vector>

#include "fia/deriv.hpp"
#include "fia/linalg.hpp"

// Shared fixtures and brute-force oracles. The oracles deliberately go through
// FiElement products instead of the index arithmetic used by the library.

namespace fia::testing {

inline PosetRef parse(const char* text) { return share(parse_poset(text)); }

inline PosetRef singleton() { return parse("elements: x\n"); }
inline PosetRef chain2() { return parse("elements: x y\nx < y\n"); }
inline PosetRef chain3() { return parse("elements: x y z\nx < y\ny < z\n"); }
inline PosetRef antichain2() { return parse("elements: a b\n"); }
inline PosetRef vee() { return parse("elements: a b c\na < c\nb < c\n"); }

inline FiElement basis_unit(const PosetRef& p, CoeffRing ring, std::size_t k) {
  const auto pr = p->pairs()[k];
  return FiElement::unit(p, ring, pr.from, pr.to);
}

/// Leibniz rule on every pair of basis units, via full products.
inline bool leibniz_oracle(const LinearEndo& d) {
  const auto& p = d.poset_ref();
  const std::size_t n = p->pair_count();
  for (std::size_t a = 0; a < n; ++a) {
    const auto ea = basis_unit(p, d.ring(), a);
    for (std::size_t b = 0; b < n; ++b) {
      const auto eb = basis_unit(p, d.ring(), b);
      if (!(d.apply(ea * eb) == d.apply(ea) * eb + ea * d.apply(eb))) return false;
    }
  }
  return true;
}

/// Dense Leibniz constraint matrix in the n^2 column-major entries of d, built
/// by applying each matrix unit endo E_{ij} to the products of basis pairs.
/// Its nullity is the dimension of the derivation space.
inline std::size_t derivation_dimension_oracle(const PosetRef& p, CoeffRing ring) {
  const std::size_t n = p->pair_count();
  Matrix m(ring, n * n * n, n * n);
  for (std::size_t v = 0; v < n * n; ++v) {
    LinearEndo e(p, ring);
    e.set_entry(v % n, v / n, Scalar::one(ring));
    for (std::size_t a = 0; a < n; ++a) {
      const auto ea = basis_unit(p, ring, a);
      for (std::size_t b = 0; b < n; ++b) {
        const auto eb = basis_unit(p, ring, b);
        const auto defect = e.apply(ea * eb) - e.apply(ea) * eb - ea * e.apply(eb);
        for (const auto& [r, c] : defect.entries()) m.at((a * n + b) * n + r, v) = c;
      }
    }
  }
  return n * n - rank(m);
}

}  // namespace fia::testing
