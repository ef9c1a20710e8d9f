#include "fia/deriv.hpp"

#include <optional>

#include "fia/linalg.hpp"

namespace fia {

namespace {

struct Entry {
  std::size_t row;
  std::size_t col;
};

// Visits every (basis pair a = e_xy, b = e_uv, output coordinate k = (s,t)) for
// which some term of  d(e_xy e_uv)(s,t) - (d(e_xy) e_uv)(s,t) - (e_xy d(e_uv))(s,t)
// can be nonzero, passing the matrix entries that carry each term:
//   lhs  = d(e_xv)(s,t)            when y == u
//   right = d(e_xy)(s,u)           when t == v and s <= u
//   left  = d(e_uv)(y,t)           when s == x and y <= t
template <class Fn>
void for_each_leibniz_equation(const Poset& p, Fn&& fn) {
  const auto& pairs = p.pairs();
  const std::size_t n = pairs.size();
  for (std::size_t a = 0; a < n; ++a) {
    const auto [x, y] = pairs[a];
    for (std::size_t b = 0; b < n; ++b) {
      const auto [u, v] = pairs[b];
      std::optional<std::size_t> product;
      if (y == u) product = p.pair_index(x, v);
      for (std::size_t k = 0; k < n; ++k) {
        const auto [s, t] = pairs[k];
        std::optional<Entry> lhs, right, left;
        if (product) lhs = Entry{k, *product};
        if (t == v) {
          if (auto r = p.pair_index(s, u)) right = Entry{*r, a};
        }
        if (s == x) {
          if (auto r = p.pair_index(y, t)) left = Entry{*r, b};
        }
        if (lhs || right || left) {
          if (!fn(lhs, right, left)) return;
        }
      }
    }
  }
}

}  // namespace

LinearEndo::LinearEndo(PosetRef poset, CoeffRing ring)
    : poset_(std::move(poset)), ring_(ring), dim_(poset_->pair_count()), matrix_(dim_ * dim_, Scalar::zero(ring)) {}

LinearEndo LinearEndo::identity(PosetRef poset, CoeffRing ring) {
  LinearEndo d(std::move(poset), ring);
  for (std::size_t i = 0; i < d.dim_; ++i) d.set_entry(i, i, Scalar::one(ring));
  return d;
}

LinearEndo LinearEndo::from_columns(PosetRef poset, CoeffRing ring, const std::vector<FiElement>& columns) {
  LinearEndo d(std::move(poset), ring);
  if (columns.size() != d.dim_) throw Error("column count does not match pair count");
  for (std::size_t j = 0; j < d.dim_; ++j) {
    require_same_algebra(*d.poset_, ring, columns[j].poset(), columns[j].ring());
    for (const auto& [i, v] : columns[j].entries()) d.set_entry(i, j, v);
  }
  return d;
}

LinearEndo LinearEndo::from_flat(PosetRef poset, CoeffRing ring, std::span<const Scalar> flat) {
  LinearEndo d(std::move(poset), ring);
  if (flat.size() != d.matrix_.size()) throw Error("flat vector length does not match dimension squared");
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (!(flat[i].ring() == ring)) throw Error("ring mismatch in endomorphism entry");
    d.matrix_[i] = flat[i];
  }
  return d;
}

void LinearEndo::set_entry(std::size_t row, std::size_t col, const Scalar& value) {
  if (row >= dim_ || col >= dim_) throw Error("matrix index out of range");
  if (!(value.ring() == ring_)) throw Error("ring mismatch in endomorphism entry");
  matrix_[col * dim_ + row] = value;
}

FiElement LinearEndo::column(std::size_t col) const {
  FiElement out(poset_, ring_);
  for (std::size_t i = 0; i < dim_; ++i) out.set(i, entry(i, col));
  return out;
}

FiElement LinearEndo::apply(const FiElement& a) const {
  require_same_algebra(*poset_, ring_, a.poset(), a.ring());
  std::vector<Scalar> acc(dim_, Scalar::zero(ring_));
  for (const auto& [j, coeff] : a.entries()) {
    for (std::size_t i = 0; i < dim_; ++i) {
      const Scalar& m = entry(i, j);
      if (!m.is_zero()) acc[i] += m * coeff;
    }
  }
  return FiElement::from_dense(poset_, ring_, acc);
}

std::size_t LinearEndo::nonzero_count() const {
  std::size_t n = 0;
  for (const auto& s : matrix_) n += s.is_zero() ? 0 : 1;
  return n;
}

void LinearEndo::require_compatible(const LinearEndo& other) const {
  require_same_algebra(*poset_, ring_, *other.poset_, other.ring_);
}

LinearEndo operator+(const LinearEndo& a, const LinearEndo& b) {
  a.require_compatible(b);
  LinearEndo out = a;
  for (std::size_t i = 0; i < out.matrix_.size(); ++i) out.matrix_[i] += b.matrix_[i];
  return out;
}

LinearEndo operator-(const LinearEndo& a, const LinearEndo& b) {
  a.require_compatible(b);
  LinearEndo out = a;
  for (std::size_t i = 0; i < out.matrix_.size(); ++i) out.matrix_[i] -= b.matrix_[i];
  return out;
}

LinearEndo operator*(const Scalar& c, const LinearEndo& a) {
  if (!(c.ring() == a.ring_)) throw Error("ring mismatch in scalar multiple");
  LinearEndo out = a;
  for (auto& m : out.matrix_) m = c * m;
  return out;
}

bool operator==(const LinearEndo& a, const LinearEndo& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.matrix_ == b.matrix_;
}

TransitiveMap::TransitiveMap(PosetRef poset, CoeffRing ring) : poset_(std::move(poset)), ring_(ring) {}

TransitiveMap TransitiveMap::coboundary(PosetRef poset, CoeffRing ring, std::span<const Scalar> f) {
  TransitiveMap s(std::move(poset), ring);
  if (f.size() != s.poset_->size()) throw Error("coboundary needs one value per element");
  const auto& pairs = s.poset_->pairs();
  for (std::size_t i = 0; i < pairs.size(); ++i) s.set(i, f[pairs[i].to] - f[pairs[i].from]);
  return s;
}

Scalar TransitiveMap::value(std::size_t x, std::size_t y) const {
  auto idx = poset_->pair_index(x, y);
  return idx ? at(*idx) : Scalar::zero(ring_);
}

Scalar TransitiveMap::at(std::size_t pair_index) const {
  auto it = values_.find(pair_index);
  return it == values_.end() ? Scalar::zero(ring_) : it->second;
}

void TransitiveMap::set(std::size_t pair_index, const Scalar& value) {
  if (pair_index >= poset_->pair_count()) throw Error("pair index out of range");
  if (!(value.ring() == ring_)) throw Error("ring mismatch in transitive map");
  if (value.is_zero()) {
    values_.erase(pair_index);
  } else {
    values_.insert_or_assign(pair_index, value);
  }
}

bool operator==(const TransitiveMap& a, const TransitiveMap& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.values_ == b.values_;
}

bool is_derivation(const LinearEndo& d) {
  bool ok = true;
  const Scalar zero = Scalar::zero(d.ring());
  for_each_leibniz_equation(d.poset(), [&](const auto& lhs, const auto& right, const auto& left) {
    Scalar v = lhs ? d.entry(lhs->row, lhs->col) : zero;
    if (right) v -= d.entry(right->row, right->col);
    if (left) v -= d.entry(left->row, left->col);
    ok = v.is_zero();
    return ok;
  });
  return ok;
}

LinearEndo inner(const FiElement& a) {
  const auto& p = a.poset_ref();
  std::vector<FiElement> cols;
  cols.reserve(p->pair_count());
  for (const auto& pr : p->pairs()) {
    FiElement b = FiElement::unit(p, a.ring(), pr.from, pr.to);
    cols.push_back(a * b - b * a);
  }
  return LinearEndo::from_columns(p, a.ring(), cols);
}

LinearEndo sigma_endo(const TransitiveMap& sigma) {
  LinearEndo d(sigma.poset_ref(), sigma.ring());
  for (const auto& [i, v] : sigma.values()) d.set_entry(i, i, v);
  return d;
}

bool is_cocycle(const TransitiveMap& sigma) {
  const Poset& p = sigma.poset();
  for (const auto& xy : p.pairs()) {
    const Scalar sxy = sigma.value(xy.from, xy.to);
    auto [begin, end] = p.row_range(xy.to);
    for (std::size_t k = begin; k < end; ++k) {
      const std::size_t z = p.pairs()[k].to;
      if (!(sxy + sigma.at(k) == sigma.value(xy.from, z))) return false;
    }
  }
  return true;
}

std::vector<LinearEndo> derivation_basis(const PosetRef& poset, CoeffRing ring) {
  if (!ring.is_field()) throw Error("derivation_basis needs a field ring (q or zp:P), got z");
  const std::size_t n = poset->pair_count();
  SparseHomogeneousSystem system(ring, n * n);
  const Scalar one = Scalar::one(ring);
  const Scalar minus_one = -one;
  SparseRow terms;
  for_each_leibniz_equation(*poset, [&](const auto& lhs, const auto& right, const auto& left) {
    terms.clear();
    if (lhs) terms.emplace_back(lhs->col * n + lhs->row, one);
    if (right) terms.emplace_back(right->col * n + right->row, minus_one);
    if (left) terms.emplace_back(left->col * n + left->row, minus_one);
    system.add_equation(terms);
    return true;
  });
  std::vector<LinearEndo> basis;
  for (const auto& v : system.nullspace_basis()) basis.push_back(LinearEndo::from_flat(poset, ring, v));
  return basis;
}

std::vector<LinearEndo> inner_basis(const PosetRef& poset, CoeffRing ring) {
  if (!ring.is_field()) throw Error("inner_basis needs a field ring (q or zp:P), got z");
  const std::size_t n = poset->pair_count();
  std::vector<LinearEndo> generators;
  for (const auto& pr : poset->pairs()) generators.push_back(inner(FiElement::unit(poset, ring, pr.from, pr.to)));
  Matrix m(ring, n * n, n);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < n * n; ++i) m.at(i, j) = generators[j].flat()[i];
  }
  std::vector<LinearEndo> basis;
  for (auto c : row_reduce(m).pivots) basis.push_back(generators[c]);
  return basis;
}

std::size_t h1_dimension(const PosetRef& poset, CoeffRing ring) {
  return derivation_basis(poset, ring).size() - inner_basis(poset, ring).size();
}

std::size_t span_rank(std::span<const LinearEndo> family, const PosetRef& poset, CoeffRing ring) {
  const std::size_t n = poset->pair_count();
  Matrix m(ring, family.size(), n * n);
  for (std::size_t r = 0; r < family.size(); ++r) {
    require_same_algebra(*poset, ring, family[r].poset(), family[r].ring());
    for (std::size_t i = 0; i < n * n; ++i) m.at(r, i) = family[r].flat()[i];
  }
  return rank(m);
}

bool span_contains(std::span<const LinearEndo> basis, std::span<const LinearEndo> candidates) {
  if (candidates.empty()) return true;
  const auto& poset = candidates.front().poset_ref();
  const auto ring = candidates.front().ring();
  std::vector<LinearEndo> all(basis.begin(), basis.end());
  all.insert(all.end(), candidates.begin(), candidates.end());
  return span_rank(all, poset, ring) == span_rank(basis, poset, ring);
}

Decomposition decompose(const LinearEndo& d) {
  const auto& poset = d.poset_ref();
  const Poset& p = *poset;
  const auto ring = d.ring();
  FiElement alpha(poset, ring);
  for (std::size_t k = 0; k < p.pair_count(); ++k) {
    const auto y = p.pairs()[k].to;
    alpha.set(k, d.entry(k, *p.pair_index(y, y)));
  }
  const LinearEndo reduced = d - inner(alpha);
  TransitiveMap sigma(poset, ring);
  for (std::size_t k = 0; k < p.pair_count(); ++k) sigma.set(k, reduced.entry(k, k));
  const std::size_t residual = (reduced - sigma_endo(sigma)).nonzero_count();
  return Decomposition{std::move(alpha), std::move(sigma), residual};
}

bool idempotent_identity_check(const LinearEndo& d, const FiElement& e) {
  if (!(e * e == e)) throw Error("idempotent_identity_check: element is not idempotent");
  const FiElement de = d.apply(e);
  return de == de * e + e * de;
}

}  // namespace fia
