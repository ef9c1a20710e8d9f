#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fia/error.hpp"

namespace fia {

/// Ordered pair of element indices, used both for covers and for comparable pairs.
struct Pair {
  std::uint32_t from = 0;
  std::uint32_t to = 0;

  friend auto operator<=>(const Pair&, const Pair&) = default;
};

/// Finite partially ordered set with at most `kMaxElements` elements.
///
/// Elements are identified by their declaration index. The order relation is
/// stored as one bitmask row per element (bit y of row x set iff x <= y).
/// Immutable after construction.
class Poset {
 public:
  static constexpr std::size_t kMaxElements = 64;

  /// Builds the poset generated by `relations` (strict pairs a < b, not
  /// necessarily covers). Throws on duplicate labels, bad labels or cycles.
  static Poset from_relations(std::vector<std::string> labels, const std::vector<Pair>& relations);

  std::size_t size() const noexcept { return labels_.size(); }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const std::string& label(std::size_t index) const { return labels_.at(index); }
  std::optional<std::size_t> find(std::string_view label) const;
  /// Throws fia::Error for unknown labels.
  std::size_t index_of(std::string_view label) const;

  bool leq(std::size_t x, std::size_t y) const { return (up_.at(x) >> y) & 1u; }
  bool leq(std::string_view x, std::string_view y) const { return leq(index_of(x), index_of(y)); }
  bool less(std::size_t x, std::size_t y) const { return x != y && leq(x, y); }

  /// Bitmask of {y : x <= y} and {z : z <= y}.
  std::uint64_t up_set(std::size_t x) const { return up_.at(x); }
  std::uint64_t down_set(std::size_t y) const { return down_.at(y); }

  /// All z with x <= z <= y in declaration order. Throws unless x <= y.
  std::vector<std::size_t> interval(std::size_t x, std::size_t y) const;
  std::vector<std::string> interval(std::string_view x, std::string_view y) const;

  /// Comparable pairs in canonical basis order (lexicographic by index).
  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t pair_count() const noexcept { return pairs_.size(); }
  /// Position of (x, y) in `pairs()`, or nullopt when x is not <= y.
  std::optional<std::size_t> pair_index(std::size_t x, std::size_t y) const;
  /// Like pair_index but throws when x is not <= y.
  std::size_t require_pair(std::size_t x, std::size_t y) const;
  /// Half-open range of pair indices whose first component is x.
  std::pair<std::size_t, std::size_t> row_range(std::size_t x) const {
    return {pair_offset_.at(x), pair_offset_.at(x + 1)};
  }

  /// Transitive reduction of the strict order, in canonical pair order.
  const std::vector<Pair>& covers() const noexcept { return covers_; }

  /// Canonical text form accepted by parse_poset.
  std::string serialize() const;
  /// 64-bit FNV-1a of `serialize()`, as 16 lowercase hex digits.
  std::string hash_hex() const;

  /// Structural equality: same labels, same order.
  friend bool operator==(const Poset& a, const Poset& b) { return a.labels_ == b.labels_ && a.up_ == b.up_; }

 private:
  Poset() = default;

  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<std::uint64_t> up_;
  std::vector<std::uint64_t> down_;
  std::vector<Pair> pairs_;
  // pair_offset_[x] = position of the first pair with from == x.
  std::vector<std::size_t> pair_offset_;
  std::vector<Pair> covers_;
};

using PosetRef = std::shared_ptr<const Poset>;

inline PosetRef share(Poset p) { return std::make_shared<const Poset>(std::move(p)); }

/// Parses the poset text format:
///
///     # comment
///     elements: a b c
///     a < b
///     b < c
///
/// Throws ParseError (with line number) on malformed input.
Poset parse_poset(std::string_view text);

/// Random DAG on n nodes closed transitively. Node labels are "p0".."p{n-1}".
/// An edge between the i-th and j-th nodes (i < j) of a seeded random
/// permutation is kept with probability `density`.
Poset random_poset(std::size_t n, double density, std::uint64_t seed);

/// Named posets used throughout tests and docs.
namespace posets {
Poset chain(std::size_t n);  // labels x0 < x1 < ...
Poset antichain(std::size_t n);
}  // namespace posets

}  // namespace fia
