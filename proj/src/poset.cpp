#include "fia/poset.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>
#include <numeric>
#include <sstream>

#include "fia/random.hpp"

namespace fia {

namespace {

bool valid_label(std::string_view label) {
  if (label.empty()) return false;
  return std::all_of(label.begin(), label.end(), [](char c) {
    return (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
  });
}

std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

}  // namespace

Poset Poset::from_relations(std::vector<std::string> labels, const std::vector<Pair>& relations) {
  if (labels.size() > kMaxElements) {
    throw Error("poset has " + std::to_string(labels.size()) + " elements; the cap is 64");
  }
  Poset p;
  const std::size_t n = labels.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!valid_label(labels[i])) throw Error("invalid element label '" + labels[i] + "'");
    if (!p.index_.emplace(labels[i], i).second) throw Error("duplicate element label '" + labels[i] + "'");
  }
  p.labels_ = std::move(labels);

  p.up_.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) p.up_[i] = std::uint64_t{1} << i;
  for (const auto& r : relations) {
    if (r.from >= n || r.to >= n) throw Error("relation references an element out of range");
    if (r.from == r.to) throw Error("cycle detected: '" + p.labels_[r.from] + "' < itself");
    p.up_[r.from] |= std::uint64_t{1} << r.to;
  }
  // Warshall closure on bit rows.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if ((p.up_[i] >> k) & 1u) p.up_[i] |= p.up_[k];
    }
  }
  p.down_.assign(n, 0);
  for (std::size_t x = 0; x < n; ++x) {
    for (std::size_t y = 0; y < n; ++y) {
      if ((p.up_[x] >> y) & 1u) p.down_[y] |= std::uint64_t{1} << x;
    }
  }
  for (std::size_t x = 0; x < n; ++x) {
    std::uint64_t both = p.up_[x] & p.down_[x] & ~(std::uint64_t{1} << x);
    if (both != 0) {
      auto y = static_cast<std::size_t>(std::countr_zero(both));
      throw Error("cycle detected between '" + p.labels_[x] + "' and '" + p.labels_[y] + "'");
    }
  }

  p.pair_offset_.assign(n + 1, 0);
  for (std::uint32_t x = 0; x < n; ++x) {
    p.pair_offset_[x] = p.pairs_.size();
    for (std::uint32_t y = 0; y < n; ++y) {
      if ((p.up_[x] >> y) & 1u) p.pairs_.push_back({x, y});
    }
  }
  p.pair_offset_[n] = p.pairs_.size();

  for (const auto& pr : p.pairs_) {
    if (pr.from == pr.to) continue;
    std::uint64_t between = p.up_[pr.from] & p.down_[pr.to];
    between &= ~((std::uint64_t{1} << pr.from) | (std::uint64_t{1} << pr.to));
    if (between == 0) p.covers_.push_back(pr);
  }
  return p;
}

std::optional<std::size_t> Poset::find(std::string_view label) const {
  auto it = index_.find(std::string(label));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Poset::index_of(std::string_view label) const {
  auto idx = find(label);
  if (!idx) throw Error("unknown element label '" + std::string(label) + "'");
  return *idx;
}

std::vector<std::size_t> Poset::interval(std::size_t x, std::size_t y) const {
  if (!leq(x, y)) throw Error("interval [" + label(x) + ", " + label(y) + "] is empty: x is not <= y");
  std::vector<std::size_t> out;
  std::uint64_t mask = up_[x] & down_[y];
  while (mask != 0) {
    out.push_back(static_cast<std::size_t>(std::countr_zero(mask)));
    mask &= mask - 1;
  }
  return out;
}

std::vector<std::string> Poset::interval(std::string_view x, std::string_view y) const {
  std::vector<std::string> out;
  for (auto z : interval(index_of(x), index_of(y))) out.push_back(labels_[z]);
  return out;
}

std::optional<std::size_t> Poset::pair_index(std::size_t x, std::size_t y) const {
  if (x >= size() || y >= size() || !leq(x, y)) return std::nullopt;
  // Pairs starting at x are ordered by y, so the rank of y among up_[x] is the offset.
  std::uint64_t below_y = up_[x] & ((std::uint64_t{1} << y) - 1);
  return pair_offset_[x] + static_cast<std::size_t>(std::popcount(below_y));
}

std::size_t Poset::require_pair(std::size_t x, std::size_t y) const {
  auto idx = pair_index(x, y);
  if (!idx) throw Error("'" + label(x) + "' is not <= '" + label(y) + "'");
  return *idx;
}

std::string Poset::serialize() const {
  std::string out = "elements:";
  for (const auto& l : labels_) out += " " + l;
  out += "\n";
  for (const auto& c : covers_) out += labels_[c.from] + " < " + labels_[c.to] + "\n";
  return out;
}

std::string Poset::hash_hex() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : serialize()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Poset parse_poset(std::string_view text) {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::uint32_t> index;
  std::vector<Pair> relations;
  bool have_elements = false;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    auto tokens = split_ws(line);
    if (tokens.empty() || tokens.front().starts_with('#')) {
      if (end == text.size()) break;
      continue;
    }
    if (!have_elements) {
      std::string_view head = tokens.front();
      std::vector<std::string_view> rest(tokens.begin() + 1, tokens.end());
      if (head.starts_with("elements:")) {
        if (head.size() > 9) rest.insert(rest.begin(), head.substr(9));
      } else if (head == "elements" && !rest.empty() && rest.front() == ":") {
        rest.erase(rest.begin());
      } else {
        throw ParseError("expected 'elements:' header", line_no);
      }
      for (auto tok : rest) {
        if (!valid_label(tok)) throw ParseError("invalid element label '" + std::string(tok) + "'", line_no);
        std::string s(tok);
        if (!index.emplace(s, static_cast<std::uint32_t>(labels.size())).second) {
          throw ParseError("duplicate element label '" + s + "'", line_no);
        }
        labels.push_back(std::move(s));
      }
      if (labels.size() > Poset::kMaxElements) throw ParseError("more than 64 elements", line_no);
      have_elements = true;
    } else {
      if (tokens.size() != 3 || tokens[1] != "<") throw ParseError("expected '<a> < <b>'", line_no);
      auto a = index.find(std::string(tokens[0]));
      auto b = index.find(std::string(tokens[2]));
      if (a == index.end()) throw ParseError("cover references undeclared label '" + std::string(tokens[0]) + "'", line_no);
      if (b == index.end()) throw ParseError("cover references undeclared label '" + std::string(tokens[2]) + "'", line_no);
      if (a->second == b->second) throw ParseError("cycle detected: '" + a->first + "' < itself", line_no);
      relations.push_back({a->second, b->second});
    }
    if (end == text.size()) break;
  }
  if (!have_elements) throw ParseError("missing 'elements:' header", line_no);
  try {
    return Poset::from_relations(std::move(labels), relations);
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    throw ParseError(e.what());
  }
}

Poset random_poset(std::size_t n, double density, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::uint32_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0u);
  for (std::size_t i = n; i > 1; --i) {
    std::swap(perm[i - 1], perm[rng.below(i)]);
  }
  std::vector<Pair> edges;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (rng.chance(density)) edges.push_back({perm[i], perm[j]});
    }
  }
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return Poset::from_relations(std::move(labels), edges);
}

namespace posets {

Poset chain(std::size_t n) {
  std::vector<std::string> labels;
  std::vector<Pair> rel;
  for (std::uint32_t i = 0; i < n; ++i) {
    labels.push_back("x" + std::to_string(i));
    if (i > 0) rel.push_back({i - 1, i});
  }
  return Poset::from_relations(std::move(labels), rel);
}

Poset antichain(std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) labels.push_back("a" + std::to_string(i));
  return Poset::from_relations(std::move(labels), {});
}

}  // namespace posets

}  // namespace fia
