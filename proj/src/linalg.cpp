#include "fia/linalg.hpp"

#include <algorithm>
#include <variant>

#include "fia/kernels.hpp"

namespace fia {

namespace {

struct RationalField {
  using T = mpq_class;
  CoeffRing ring;

  T zero() const { return T(0); }
  bool is_zero(const T& v) const { return sgn(v) == 0; }
  T from(const Scalar& s) const {
    T q(s.numerator(), s.denominator());
    return q;
  }
  Scalar to(const T& v) const { return Scalar::from_fraction(ring, v.get_num(), v.get_den()); }
  T one() const { return T(1); }
  T inv(const T& v) const { return T(1 / v); }
  T neg(const T& v) const { return T(-v); }
  T mul(const T& a, const T& b) const { return T(a * b); }
  T add(const T& a, const T& b) const { return T(a + b); }

  void axpy(std::span<T> dst, std::span<const T> src, const T& f) const {
    for (std::size_t i = 0; i < dst.size(); ++i) {
      if (sgn(src[i]) != 0) dst[i] += f * src[i];
    }
  }
  void scale(std::span<T> row, const T& f) const {
    for (auto& v : row) v *= f;
  }
};

struct PrimeField {
  using T = std::uint32_t;
  CoeffRing ring;
  std::uint32_t p;
  kernels::ModRowOps ops;

  explicit PrimeField(CoeffRing r) : ring(r), p(r.modulus()), ops(kernels::select(r.modulus())) {}

  T zero() const { return 0; }
  T one() const { return 1 % p; }
  bool is_zero(T v) const { return v == 0; }
  T from(const Scalar& s) const { return s.residue(); }
  Scalar to(T v) const { return Scalar::from_residue(ring, v); }
  T inv(T v) const { return Scalar::from_residue(ring, v).inverse().residue(); }
  T neg(T v) const { return v == 0 ? 0 : p - v; }
  T mul(T a, T b) const { return static_cast<T>(std::uint64_t{a} * b % p); }
  T add(T a, T b) const { return static_cast<T>((std::uint64_t{a} + b) % p); }

  void axpy(std::span<T> dst, std::span<const T> src, T f) const { ops.axpy_mod(dst, src, f, p); }
  void scale(std::span<T> row, T f) const { ops.scale_mod(row, f, p); }
};

template <class Fn>
decltype(auto) with_field(const CoeffRing& ring, Fn&& fn) {
  switch (ring.kind()) {
    case CoeffRing::Kind::Q: return fn(RationalField{ring});
    case CoeffRing::Kind::Zp: return fn(PrimeField(ring));
    case CoeffRing::Kind::Z: break;
  }
  throw Error("exact solving needs a field ring (q or zp:P), got z");
}

template <class F>
std::vector<typename F::T> load(const F& f, const Matrix& a, std::size_t extra_cols = 0) {
  const std::size_t w = a.cols() + extra_cols;
  std::vector<typename F::T> out(a.rows() * w, f.zero());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) out[i * w + j] = f.from(a.at(i, j));
  }
  return out;
}

/// In-place RREF of a rows x cols row-major buffer. Returns pivot columns.
template <class F>
std::vector<std::size_t> rref_in_place(const F& f, std::vector<typename F::T>& a, std::size_t rows,
                                       std::size_t cols) {
  using T = typename F::T;
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  auto row = [&](std::size_t i, std::size_t from) { return std::span<T>(a.data() + i * cols + from, cols - from); };
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t found = rows;
    for (std::size_t i = r; i < rows; ++i) {
      if (!f.is_zero(a[i * cols + c])) {
        found = i;
        break;
      }
    }
    if (found == rows) continue;
    if (found != r) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(found * cols),
                       a.begin() + static_cast<std::ptrdiff_t>((found + 1) * cols),
                       a.begin() + static_cast<std::ptrdiff_t>(r * cols));
    }
    f.scale(row(r, c), f.inv(a[r * cols + c]));
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || f.is_zero(a[i * cols + c])) continue;
      T factor = f.neg(a[i * cols + c]);
      f.axpy(row(i, c), row(r, c), factor);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

Echelon row_reduce(const Matrix& a) {
  return with_field(a.ring(), [&](const auto& f) {
    auto buf = load(f, a);
    auto pivots = rref_in_place(f, buf, a.rows(), a.cols());
    Matrix out(a.ring(), a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
      for (std::size_t j = 0; j < a.cols(); ++j) out.at(i, j) = f.to(buf[i * a.cols() + j]);
    }
    return Echelon{std::move(out), std::move(pivots)};
  });
}

std::size_t rank(const Matrix& a) {
  return with_field(a.ring(), [&](const auto& f) {
    auto buf = load(f, a);
    return rref_in_place(f, buf, a.rows(), a.cols()).size();
  });
}

std::vector<std::vector<Scalar>> nullspace(const Matrix& a) {
  return with_field(a.ring(), [&](const auto& f) {
    const std::size_t cols = a.cols();
    auto buf = load(f, a);
    auto pivots = rref_in_place(f, buf, a.rows(), cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : pivots) is_pivot[c] = true;
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < cols; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(cols, Scalar::zero(a.ring()));
      v[free] = Scalar::one(a.ring());
      for (std::size_t r = 0; r < pivots.size(); ++r) {
        v[pivots[r]] = f.to(f.neg(buf[r * cols + free]));
      }
      basis.push_back(std::move(v));
    }
    return basis;
  });
}

std::optional<std::vector<Scalar>> solve(const Matrix& a, std::span<const Scalar> b) {
  if (b.size() != a.rows()) throw Error("right-hand side length does not match matrix rows");
  return with_field(a.ring(), [&](const auto& f) -> std::optional<std::vector<Scalar>> {
    const std::size_t w = a.cols() + 1;
    auto buf = load(f, a, 1);
    for (std::size_t i = 0; i < a.rows(); ++i) buf[i * w + a.cols()] = f.from(b[i]);
    auto pivots = rref_in_place(f, buf, a.rows(), w);
    if (!pivots.empty() && pivots.back() == a.cols()) return std::nullopt;
    std::vector<Scalar> x(a.cols(), Scalar::zero(a.ring()));
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = f.to(buf[r * w + a.cols()]);
    return x;
  });
}

namespace {

template <class F>
class SparseEliminator {
 public:
  using T = typename F::T;
  using Row = std::vector<std::pair<std::size_t, T>>;

  SparseEliminator(F field, std::size_t vars) : f_(std::move(field)), pivot_rows_(vars) {}

  void add(const SparseRow& terms) {
    Row row;
    row.reserve(terms.size());
    for (const auto& [col, value] : terms) {
      if (col >= pivot_rows_.size()) throw Error("equation references variable out of range");
      row.emplace_back(col, f_.from(value));
    }
    std::sort(row.begin(), row.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    Row merged;
    for (auto& [col, value] : row) {
      if (!merged.empty() && merged.back().first == col) {
        merged.back().second = f_.add(merged.back().second, value);
      } else {
        merged.emplace_back(col, value);
      }
    }
    std::erase_if(merged, [&](const auto& e) { return f_.is_zero(e.second); });
    reduce(merged, 0);
    if (merged.empty()) return;
    T inv = f_.inv(merged.front().second);
    for (auto& e : merged) e.second = f_.mul(e.second, inv);
    std::size_t lead = merged.front().first;
    pivot_rows_[lead] = std::move(merged);
    ++rank_;
  }

  std::size_t rank() const { return rank_; }
  std::size_t variables() const { return pivot_rows_.size(); }

  std::vector<std::vector<Scalar>> nullspace() const {
    // Back-substitute into reduced echelon form, largest pivot first.
    std::vector<Row> rows(pivot_rows_.size());
    std::vector<bool> is_pivot(pivot_rows_.size(), false);
    for (std::size_t c = pivot_rows_.size(); c-- > 0;) {
      if (pivot_rows_[c].empty()) continue;
      is_pivot[c] = true;
      Row row = pivot_rows_[c];
      reduce_with(row, 1, rows);
      rows[c] = std::move(row);
    }
    const std::size_t n = pivot_rows_.size();
    std::vector<std::vector<std::pair<std::size_t, T>>> by_free(n);
    for (std::size_t c = 0; c < n; ++c) {
      if (!is_pivot[c]) continue;
      for (std::size_t k = 1; k < rows[c].size(); ++k) by_free[rows[c][k].first].emplace_back(c, rows[c][k].second);
    }
    std::vector<std::vector<Scalar>> basis;
    for (std::size_t free = 0; free < n; ++free) {
      if (is_pivot[free]) continue;
      std::vector<Scalar> v(n, f_.to(f_.zero()));
      v[free] = f_.to(f_.one());
      for (const auto& [c, value] : by_free[free]) v[c] = f_.to(f_.neg(value));
      basis.push_back(std::move(v));
    }
    return basis;
  }

 private:
  void reduce(Row& row, std::size_t start) const { reduce_with(row, start, pivot_rows_); }

  // Eliminates, from position `start` on, every entry whose column has a row in `pivots`.
  void reduce_with(Row& row, std::size_t start, const std::vector<Row>& pivots) const {
    std::size_t k = start;
    while (k < row.size()) {
      const std::size_t col = row[k].first;
      const Row& piv = pivots[col];
      if (piv.empty()) {
        ++k;
        continue;
      }
      const T factor = f_.neg(row[k].second);
      Row merged;
      merged.reserve(row.size() + piv.size());
      merged.insert(merged.end(), row.begin(), row.begin() + static_cast<std::ptrdiff_t>(k));
      std::size_t a = k;
      std::size_t b = 0;
      while (a < row.size() || b < piv.size()) {
        if (b == piv.size() || (a < row.size() && row[a].first < piv[b].first)) {
          merged.push_back(row[a++]);
        } else if (a == row.size() || piv[b].first < row[a].first) {
          merged.emplace_back(piv[b].first, f_.mul(factor, piv[b].second));
          ++b;
        } else {
          T v = f_.add(row[a].second, f_.mul(factor, piv[b].second));
          if (!f_.is_zero(v)) merged.emplace_back(row[a].first, v);
          ++a;
          ++b;
        }
      }
      row = std::move(merged);
    }
  }

  F f_;
  std::vector<Row> pivot_rows_;
  std::size_t rank_ = 0;
};

}  // namespace

struct SparseHomogeneousSystem::Impl {
  CoeffRing ring;
  std::variant<SparseEliminator<RationalField>, SparseEliminator<PrimeField>> elim;
};

SparseHomogeneousSystem::SparseHomogeneousSystem(CoeffRing ring, std::size_t variables) {
  impl_ = with_field(ring, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    return std::make_unique<Impl>(Impl{ring, SparseEliminator<F>(f, variables)});
  });
}

SparseHomogeneousSystem::~SparseHomogeneousSystem() = default;
SparseHomogeneousSystem::SparseHomogeneousSystem(SparseHomogeneousSystem&&) noexcept = default;
SparseHomogeneousSystem& SparseHomogeneousSystem::operator=(SparseHomogeneousSystem&&) noexcept = default;

void SparseHomogeneousSystem::add_equation(const SparseRow& terms) {
  std::visit([&](auto& e) { e.add(terms); }, impl_->elim);
}

std::size_t SparseHomogeneousSystem::variables() const noexcept {
  return std::visit([](const auto& e) { return e.variables(); }, impl_->elim);
}

std::size_t SparseHomogeneousSystem::rank() const {
  return std::visit([](const auto& e) { return e.rank(); }, impl_->elim);
}

std::vector<std::vector<Scalar>> SparseHomogeneousSystem::nullspace_basis() const {
  return std::visit([](const auto& e) { return e.nullspace(); }, impl_->elim);
}

namespace {

template <class F>
class MembershipSolver {
 public:
  using T = typename F::T;
  using Column = std::vector<std::pair<std::size_t, T>>;

  MembershipSolver(F field, std::size_t n, const std::vector<std::span<const Scalar>>& generators,
                   std::span<const Scalar> target)
      : f_(std::move(field)), n_(n), maps_(generators.size() + 1) {
    for (std::size_t m = 0; m <= generators.size(); ++m) {
      const auto flat = m < generators.size() ? generators[m] : target;
      if (flat.size() != n * n) throw Error("map size does not match the dimension");
      auto& cols = maps_[m];
      cols.resize(n);
      for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
          const Scalar& v = flat[j * n + i];
          if (!v.is_zero()) cols[j].emplace_back(i, f_.from(v));
        }
      }
    }
  }

  // Reduced augmented system [G_0(a) ... G_{k-1}(a) | T(a)] over its nonzero rows.
  std::optional<std::vector<T>> solve(const SparseRow& a) const {
    const std::size_t w = maps_.size();
    std::vector<std::pair<std::size_t, T>> probe;
    probe.reserve(a.size());
    for (const auto& [j, v] : a) {
      if (j >= n_) throw Error("probe index out of range");
      if (!v.is_zero()) probe.emplace_back(j, f_.from(v));
    }
    std::vector<std::size_t> slot(n_, n_);
    std::vector<T> buf;
    std::size_t rows = 0;
    for (std::size_t m = 0; m < w; ++m) {
      for (const auto& [j, av] : probe) {
        for (const auto& [i, mv] : maps_[m][j]) {
          if (slot[i] == n_) {
            slot[i] = rows++;
            buf.resize(rows * w, f_.zero());
          }
          T& cell = buf[slot[i] * w + m];
          cell = f_.add(cell, f_.mul(av, mv));
        }
      }
    }
    const auto pivots = rref_in_place(f_, buf, rows, w);
    if (!pivots.empty() && pivots.back() == w - 1) return std::nullopt;
    std::vector<T> x(w - 1, f_.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = buf[r * w + w - 1];
    return x;
  }

  Scalar to_scalar(const T& v) const { return f_.to(v); }

 private:
  F f_;
  std::size_t n_;
  std::vector<std::vector<Column>> maps_;  // maps_[m][j] = column j of map m; the last map is the target
};

}  // namespace

struct SpanMembership::Impl {
  std::variant<MembershipSolver<RationalField>, MembershipSolver<PrimeField>> solver;
};

SpanMembership::SpanMembership(CoeffRing ring, std::size_t n, const std::vector<std::span<const Scalar>>& generators,
                               std::span<const Scalar> target) {
  impl_ = with_field(ring, [&](const auto& f) {
    using F = std::decay_t<decltype(f)>;
    return std::make_unique<Impl>(Impl{MembershipSolver<F>(f, n, generators, target)});
  });
}

SpanMembership::~SpanMembership() = default;
SpanMembership::SpanMembership(SpanMembership&&) noexcept = default;
SpanMembership& SpanMembership::operator=(SpanMembership&&) noexcept = default;

std::optional<std::vector<Scalar>> SpanMembership::solve(const SparseRow& a) const {
  return std::visit(
      [&](const auto& s) -> std::optional<std::vector<Scalar>> {
        auto x = s.solve(a);
        if (!x) return std::nullopt;
        std::vector<Scalar> out;
        out.reserve(x->size());
        for (const auto& v : *x) out.push_back(s.to_scalar(v));
        return out;
      },
      impl_->solver);
}

bool SpanMembership::contains(const SparseRow& a) const {
  return std::visit([&](const auto& s) { return s.solve(a).has_value(); }, impl_->solver);
}

}  // namespace fia
