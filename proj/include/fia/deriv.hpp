#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <vector>

#include "fia/element.hpp"

namespace fia {

/// Linear endomorphism of the incidence algebra, as a square matrix over the
/// canonical pair basis. Column j is the image of the j-th basis unit.
class LinearEndo {
 public:
  LinearEndo(PosetRef poset, CoeffRing ring);

  static LinearEndo zero(PosetRef poset, CoeffRing ring) { return LinearEndo(std::move(poset), ring); }
  static LinearEndo identity(PosetRef poset, CoeffRing ring);
  /// Columns given as elements; columns.size() must equal the pair count.
  static LinearEndo from_columns(PosetRef poset, CoeffRing ring, const std::vector<FiElement>& columns);
  /// Flat column-major vector: entry (row i, column j) at j * dim + i.
  static LinearEndo from_flat(PosetRef poset, CoeffRing ring, std::span<const Scalar> flat);

  const Poset& poset() const noexcept { return *poset_; }
  const PosetRef& poset_ref() const noexcept { return poset_; }
  const CoeffRing& ring() const noexcept { return ring_; }
  std::size_t dimension() const noexcept { return dim_; }

  const Scalar& entry(std::size_t row, std::size_t col) const { return matrix_[col * dim_ + row]; }
  void set_entry(std::size_t row, std::size_t col, const Scalar& value);

  FiElement column(std::size_t col) const;
  FiElement apply(const FiElement& a) const;
  const std::vector<Scalar>& flat() const noexcept { return matrix_; }

  /// Number of nonzero matrix entries.
  std::size_t nonzero_count() const;
  bool is_zero() const { return nonzero_count() == 0; }

  friend LinearEndo operator+(const LinearEndo& a, const LinearEndo& b);
  friend LinearEndo operator-(const LinearEndo& a, const LinearEndo& b);
  friend LinearEndo operator*(const Scalar& c, const LinearEndo& a);
  friend bool operator==(const LinearEndo& a, const LinearEndo& b);

 private:
  void require_compatible(const LinearEndo& other) const;

  PosetRef poset_;
  CoeffRing ring_;
  std::size_t dim_;
  std::vector<Scalar> matrix_;
};

/// Map from comparable pairs to scalars (zeros implicit). A transitive
/// cocycle satisfies s(x,y) + s(y,z) = s(x,z) for all x <= y <= z.
class TransitiveMap {
 public:
  TransitiveMap(PosetRef poset, CoeffRing ring);

  /// s(x,y) = f(y) - f(x), with f given per element index.
  static TransitiveMap coboundary(PosetRef poset, CoeffRing ring, std::span<const Scalar> f);

  const Poset& poset() const noexcept { return *poset_; }
  const PosetRef& poset_ref() const noexcept { return poset_; }
  const CoeffRing& ring() const noexcept { return ring_; }

  Scalar value(std::size_t x, std::size_t y) const;
  Scalar at(std::size_t pair_index) const;
  void set(std::size_t pair_index, const Scalar& value);
  const std::map<std::size_t, Scalar>& values() const noexcept { return values_; }

  friend bool operator==(const TransitiveMap& a, const TransitiveMap& b);

 private:
  PosetRef poset_;
  CoeffRing ring_;
  std::map<std::size_t, Scalar> values_;
};

/// d = ad_alpha + L_sigma plus the count of entries where that fails.
struct Decomposition {
  FiElement alpha;
  TransitiveMap sigma;
  std::size_t residual_norm = 0;
};

/// Leibniz rule on every pair of basis units, evaluated entrywise. By
/// bilinearity of convolution this is the Leibniz rule on the whole algebra.
bool is_derivation(const LinearEndo& d);

/// ad_a : r -> a r - r a.
LinearEndo inner(const FiElement& a);

/// L_sigma : a -> (x,y) |-> sigma(x,y) a(x,y).
LinearEndo sigma_endo(const TransitiveMap& sigma);

bool is_cocycle(const TransitiveMap& sigma);

/// Basis of the derivation space: the nullspace of the basis-pair Leibniz
/// system in the n^2 matrix entries (column-major variable order), from the
/// reduced echelon form. Field rings only.
std::vector<LinearEndo> derivation_basis(const PosetRef& poset, CoeffRing ring);

/// Linearly independent subset of {ad_{e_xy}} (greedy in pair order) spanning
/// the inner derivations. Field rings only.
std::vector<LinearEndo> inner_basis(const PosetRef& poset, CoeffRing ring);

/// dim(derivations) - dim(inner derivations).
std::size_t h1_dimension(const PosetRef& poset, CoeffRing ring);

/// Rank of a family of endomorphisms viewed as flat vectors.
std::size_t span_rank(std::span<const LinearEndo> family, const PosetRef& poset, CoeffRing ring);

/// True when every member of `candidates` lies in the span of `basis`.
bool span_contains(std::span<const LinearEndo> basis, std::span<const LinearEndo> candidates);

/// alpha(x,y) = d(e_y)(x,y); d' = d - ad_alpha; sigma(x,y) = d'(e_xy)(x,y);
/// residual counts nonzero entries of d - ad_alpha - L_sigma.
Decomposition decompose(const LinearEndo& d);

/// d(e) == d(e) e + e d(e). Throws unless e is idempotent.
bool idempotent_identity_check(const LinearEndo& d, const FiElement& e);

}  // namespace fia
