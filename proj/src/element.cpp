#include "fia/element.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

namespace fia {

void require_same_algebra(const Poset& a, const CoeffRing& ra, const Poset& b, const CoeffRing& rb) {
  if (!(ra == rb)) throw Error("ring mismatch: " + ra.designator() + " vs " + rb.designator());
  if (&a != &b && !(a == b)) throw Error("poset mismatch");
}

FiElement::FiElement(PosetRef poset, CoeffRing ring) : poset_(std::move(poset)), ring_(ring) {
  if (!poset_) throw Error("null poset");
}

FiElement FiElement::unit(PosetRef poset, CoeffRing ring, std::size_t x, std::size_t y) {
  FiElement e(std::move(poset), ring);
  e.entries_.emplace(e.poset_->require_pair(x, y), Scalar::one(ring));
  if (e.entries_.begin()->second.is_zero()) e.entries_.clear();
  return e;
}

FiElement FiElement::unit(PosetRef poset, CoeffRing ring, std::string_view x, std::string_view y) {
  auto xi = poset->index_of(x);
  auto yi = poset->index_of(y);
  return unit(std::move(poset), ring, xi, yi);
}

FiElement FiElement::idempotent(PosetRef poset, CoeffRing ring, std::span<const std::size_t> subset) {
  std::uint64_t mask = 0;
  for (auto x : subset) {
    if (x >= poset->size()) throw Error("subset element out of range");
    mask |= std::uint64_t{1} << x;
  }
  return idempotent_mask(std::move(poset), ring, mask);
}

FiElement FiElement::idempotent(PosetRef poset, CoeffRing ring, const std::vector<std::string>& subset) {
  std::vector<std::size_t> idx;
  for (const auto& l : subset) idx.push_back(poset->index_of(l));
  return idempotent(std::move(poset), ring, idx);
}

FiElement FiElement::idempotent_mask(PosetRef poset, CoeffRing ring, std::uint64_t mask) {
  FiElement e(std::move(poset), ring);
  for (std::size_t x = 0; x < e.poset_->size(); ++x) {
    if ((mask >> x) & 1u) e.set(*e.poset_->pair_index(x, x), Scalar::one(ring));
  }
  return e;
}

FiElement FiElement::zeta(PosetRef poset, CoeffRing ring) {
  FiElement e(std::move(poset), ring);
  for (std::size_t i = 0; i < e.poset_->pair_count(); ++i) e.set(i, Scalar::one(ring));
  return e;
}

FiElement FiElement::delta(PosetRef poset, CoeffRing ring) {
  const std::uint64_t all = poset->size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << poset->size()) - 1;
  return idempotent_mask(std::move(poset), ring, all);
}

FiElement FiElement::moebius(PosetRef poset, CoeffRing ring) {
  FiElement mu(std::move(poset), ring);
  const Poset& p = *mu.poset_;
  // A linear extension: strictly smaller elements have strictly smaller down-sets.
  std::vector<std::size_t> order(p.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::popcount(p.down_set(a)) < std::popcount(p.down_set(b));
  });
  for (std::size_t x = 0; x < p.size(); ++x) {
    mu.set(*p.pair_index(x, x), Scalar::one(ring));
    for (auto y : order) {
      if (!p.less(x, y)) continue;
      Scalar sum = Scalar::zero(ring);
      for (auto z : p.interval(x, y)) {
        if (z != y) sum += mu.coeff(x, z);
      }
      mu.set(*p.pair_index(x, y), -sum);
    }
  }
  return mu;
}

Scalar FiElement::coeff(std::size_t x, std::size_t y) const {
  if (x >= poset_->size() || y >= poset_->size()) throw Error("element index out of range");
  auto idx = poset_->pair_index(x, y);
  if (!idx) return Scalar::zero(ring_);
  return at(*idx);
}

Scalar FiElement::coeff(std::string_view x, std::string_view y) const {
  return coeff(poset_->index_of(x), poset_->index_of(y));
}

Scalar FiElement::at(std::size_t pair_index) const {
  auto it = entries_.find(pair_index);
  return it == entries_.end() ? Scalar::zero(ring_) : it->second;
}

void FiElement::set(std::size_t pair_index, const Scalar& value) {
  if (pair_index >= poset_->pair_count()) throw Error("pair index out of range");
  if (!(value.ring() == ring_)) throw Error("ring mismatch in element entry");
  if (value.is_zero()) {
    entries_.erase(pair_index);
  } else {
    entries_.insert_or_assign(pair_index, value);
  }
}

void FiElement::accumulate(std::size_t pair_index, const Scalar& value) {
  if (value.is_zero()) return;
  auto it = entries_.find(pair_index);
  if (it == entries_.end()) {
    set(pair_index, value);
    return;
  }
  it->second += value;
  if (it->second.is_zero()) entries_.erase(it);
}

void FiElement::require_compatible(const FiElement& other) const {
  require_same_algebra(*poset_, ring_, *other.poset_, other.ring_);
}

FiElement FiElement::operator-() const {
  FiElement out(poset_, ring_);
  for (const auto& [k, v] : entries_) out.entries_.emplace(k, -v);
  return out;
}

FiElement operator+(const FiElement& a, const FiElement& b) {
  a.require_compatible(b);
  FiElement out = a;
  for (const auto& [k, v] : b.entries_) out.accumulate(k, v);
  return out;
}

FiElement operator-(const FiElement& a, const FiElement& b) { return a + (-b); }

FiElement operator*(const FiElement& a, const FiElement& b) {
  a.require_compatible(b);
  const Poset& p = *a.poset_;
  FiElement out(a.poset_, a.ring_);
  for (const auto& [ka, va] : a.entries_) {
    const Pair& xz = p.pairs()[ka];
    auto [begin, end] = p.row_range(xz.to);
    for (auto it = b.entries_.lower_bound(begin); it != b.entries_.end() && it->first < end; ++it) {
      const Pair& zy = p.pairs()[it->first];
      out.accumulate(*p.pair_index(xz.from, zy.to), va * it->second);
    }
  }
  return out;
}

FiElement operator*(const Scalar& c, const FiElement& a) {
  if (!(c.ring() == a.ring_)) throw Error("ring mismatch in scalar multiple");
  FiElement out(a.poset_, a.ring_);
  if (c.is_zero()) return out;
  for (const auto& [k, v] : a.entries_) out.set(k, c * v);
  return out;
}

bool operator==(const FiElement& a, const FiElement& b) {
  if (!(a.ring_ == b.ring_)) return false;
  if (a.poset_ != b.poset_ && !(*a.poset_ == *b.poset_)) return false;
  return a.entries_ == b.entries_;
}

FiElement FiElement::sandwich(std::size_t x, std::size_t y) const {
  if (x >= poset_->size() || y >= poset_->size()) throw Error("element index out of range");
  FiElement out(poset_, ring_);
  if (auto idx = poset_->pair_index(x, y)) out.set(*idx, at(*idx));
  return out;
}

FiElement FiElement::restrict(std::size_t x, std::size_t y) const {
  const Poset& p = *poset_;
  FiElement out(poset_, ring_);
  for (auto z : p.interval(x, y)) {
    auto row = *p.pair_index(x, z);
    out.set(row, at(row));
    if (z != x) {
      auto col = *p.pair_index(z, y);
      out.set(col, at(col));
    }
  }
  return out;
}

std::vector<Scalar> FiElement::to_dense() const {
  std::vector<Scalar> out(poset_->pair_count(), Scalar::zero(ring_));
  for (const auto& [k, v] : entries_) out[k] = v;
  return out;
}

FiElement FiElement::from_dense(PosetRef poset, CoeffRing ring, std::span<const Scalar> values) {
  FiElement out(std::move(poset), ring);
  if (values.size() != out.poset_->pair_count()) throw Error("dense vector length does not match pair count");
  for (std::size_t i = 0; i < values.size(); ++i) out.set(i, values[i]);
  return out;
}

}  // namespace fia
