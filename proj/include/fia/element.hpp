#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string_view>
#include <vector>

#include "fia/poset.hpp"
#include "fia/scalar.hpp"

namespace fia {

/// Element of the incidence algebra of a finite poset over a coefficient ring.
///
/// Stored sparsely: a map from canonical pair index to nonzero coefficient.
/// For finite posets every formal sum is finitary, so no finitarity check is
/// needed. Values are immutable in spirit: every operation returns a new element.
class FiElement {
 public:
  FiElement(PosetRef poset, CoeffRing ring);

  static FiElement zero(PosetRef poset, CoeffRing ring) { return FiElement(std::move(poset), ring); }
  /// Matrix unit e_xy. Throws unless x <= y.
  static FiElement unit(PosetRef poset, CoeffRing ring, std::size_t x, std::size_t y);
  static FiElement unit(PosetRef poset, CoeffRing ring, std::string_view x, std::string_view y);
  /// Diagonal idempotent e_X = sum of e_xx over x in X.
  static FiElement idempotent(PosetRef poset, CoeffRing ring, std::span<const std::size_t> subset);
  static FiElement idempotent(PosetRef poset, CoeffRing ring, const std::vector<std::string>& subset);
  /// Same, with X given as a bitmask over element indices.
  static FiElement idempotent_mask(PosetRef poset, CoeffRing ring, std::uint64_t mask);
  static FiElement zeta(PosetRef poset, CoeffRing ring);
  static FiElement delta(PosetRef poset, CoeffRing ring);
  /// Moebius function: the inverse of zeta.
  static FiElement moebius(PosetRef poset, CoeffRing ring);

  const Poset& poset() const noexcept { return *poset_; }
  const PosetRef& poset_ref() const noexcept { return poset_; }
  const CoeffRing& ring() const noexcept { return ring_; }

  /// Coefficient at (x, y); zero for x not <= y.
  Scalar coeff(std::size_t x, std::size_t y) const;
  Scalar coeff(std::string_view x, std::string_view y) const;
  /// Coefficient at canonical pair index.
  Scalar at(std::size_t pair_index) const;

  /// Sets the coefficient at a canonical pair index (zero erases).
  void set(std::size_t pair_index, const Scalar& value);
  /// Adds to the coefficient at a canonical pair index.
  void accumulate(std::size_t pair_index, const Scalar& value);

  bool is_zero() const noexcept { return entries_.empty(); }
  std::size_t nonzero_count() const noexcept { return entries_.size(); }
  const std::map<std::size_t, Scalar>& entries() const noexcept { return entries_; }

  FiElement operator-() const;
  friend FiElement operator+(const FiElement& a, const FiElement& b);
  friend FiElement operator-(const FiElement& a, const FiElement& b);
  /// Convolution: (ab)(x,y) = sum over x <= z <= y of a(x,z) b(z,y).
  friend FiElement operator*(const FiElement& a, const FiElement& b);
  friend FiElement operator*(const Scalar& c, const FiElement& a);

  friend bool operator==(const FiElement& a, const FiElement& b);

  /// e_x a e_y, computed by the short form a(x,y) e_xy (zero if x is not <= y).
  FiElement sandwich(std::size_t x, std::size_t y) const;

  /// Restriction to row x and column y of the interval [x, y]:
  ///   a(x,y) e_xy + sum_{x<=v<y} a(x,v) e_xv + sum_{x<u<=y} a(u,y) e_uy.
  /// Linear and idempotent. Throws unless x <= y.
  FiElement restrict(std::size_t x, std::size_t y) const;

  /// Dense coefficient vector in canonical pair order.
  std::vector<Scalar> to_dense() const;
  static FiElement from_dense(PosetRef poset, CoeffRing ring, std::span<const Scalar> values);

 private:
  void require_compatible(const FiElement& other) const;

  PosetRef poset_;
  CoeffRing ring_;
  std::map<std::size_t, Scalar> entries_;
};

/// Throws unless both elements live over the same poset and ring.
void require_same_algebra(const Poset& a, const CoeffRing& ra, const Poset& b, const CoeffRing& rb);

}  // namespace fia
