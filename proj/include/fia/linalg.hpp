#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "fia/scalar.hpp"

namespace fia {

/// Dense row-major matrix of scalars from one ring.
class Matrix {
 public:
  Matrix(CoeffRing ring, std::size_t rows, std::size_t cols)
      : ring_(ring), rows_(rows), cols_(cols), entries_(rows * cols, Scalar::zero(ring)) {}

  const CoeffRing& ring() const noexcept { return ring_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  const Scalar& at(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  Scalar& at(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  CoeffRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Scalar> entries_;
};

/// Reduced row echelon form. Pivots are chosen as the first nonzero entry in
/// column order, so the result is reproducible.
struct Echelon {
  Matrix reduced;
  std::vector<std::size_t> pivots;  // pivot column of row r is pivots[r]

  std::size_t rank() const noexcept { return pivots.size(); }
};

// All of the following require a field (Q or Zp) and throw fia::Error over Z.

Echelon row_reduce(const Matrix& a);
std::size_t rank(const Matrix& a);
/// Basis of {x : a x = 0}: one vector per free column, in column order, with
/// a 1 in that free column.
std::vector<std::vector<Scalar>> nullspace(const Matrix& a);
/// Some x with a x = b (free variables set to zero), or nullopt.
std::optional<std::vector<Scalar>> solve(const Matrix& a, std::span<const Scalar> b);

using SparseRow = std::vector<std::pair<std::size_t, Scalar>>;

/// Homogeneous linear system built one equation at a time. Each equation is
/// reduced against the pivots seen so far, so storage stays proportional to
/// the rank rather than to the number of equations.
class SparseHomogeneousSystem {
 public:
  SparseHomogeneousSystem(CoeffRing ring, std::size_t variables);
  ~SparseHomogeneousSystem();
  SparseHomogeneousSystem(SparseHomogeneousSystem&&) noexcept;
  SparseHomogeneousSystem& operator=(SparseHomogeneousSystem&&) noexcept;

  /// Terms may repeat a variable; coefficients are summed.
  void add_equation(const SparseRow& terms);

  std::size_t variables() const noexcept;
  std::size_t rank() const;
  /// Nullspace basis from the reduced echelon form, same convention as nullspace().
  std::vector<std::vector<Scalar>> nullspace_basis() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

/// Decides, for many vectors a, whether T(a) lies in the span of the G_i(a)
/// for fixed square maps G_i and T. The maps are stored once as sparse columns
/// in field-native form; each query builds and reduces only the nonzero rows.
class SpanMembership {
 public:
  /// Every map is n x n and column-major: entry (i, j) at j * n + i.
  SpanMembership(CoeffRing ring, std::size_t n, const std::vector<std::span<const Scalar>>& generators,
                 std::span<const Scalar> target);
  ~SpanMembership();
  SpanMembership(SpanMembership&&) noexcept;
  SpanMembership& operator=(SpanMembership&&) noexcept;

  /// Some c with sum c_i G_i(a) = T(a) (free coefficients zero), or nullopt.
  /// Safe to call concurrently.
  std::optional<std::vector<Scalar>> solve(const SparseRow& a) const;
  bool contains(const SparseRow& a) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace fia
