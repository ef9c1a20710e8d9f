#include "fia/io.hpp"

#include <set>

namespace fia::io {

namespace {

mpz_class parse_decimal(const json& j, const char* field) {
  if (!j.is_string()) throw ParseError(std::string("scalar field '") + field + "' must be a decimal string");
  const auto& s = j.get_ref<const std::string&>();
  mpz_class v;
  if (s.empty() || v.set_str(s, 10) != 0) throw ParseError("bad decimal '" + s + "'");
  return v;
}

const json& require(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing key '") + key + "'");
  return j.at(key);
}

std::size_t label_index(const Poset& p, const json& j, const char* key) {
  const json& v = require(j, key);
  if (!v.is_string()) throw ParseError(std::string("'") + key + "' must be a label string");
  auto idx = p.find(v.get_ref<const std::string&>());
  if (!idx) throw ParseError("unknown label '" + v.get<std::string>() + "'");
  return *idx;
}

json pair_entries(const Poset& p, const std::map<std::size_t, Scalar>& entries) {
  json out = json::array();
  for (const auto& [k, v] : entries) {
    const auto& pr = p.pairs()[k];
    out.push_back({{"from", p.label(pr.from)}, {"to", p.label(pr.to)}, {"value", scalar_to_json(v)}});
  }
  return out;
}

}  // namespace

json scalar_to_json(const Scalar& s) {
  switch (s.ring().kind()) {
    case CoeffRing::Kind::Q: return {{"num", s.numerator().get_str()}, {"den", s.denominator().get_str()}};
    case CoeffRing::Kind::Z: return {{"int", s.numerator().get_str()}};
    case CoeffRing::Kind::Zp: return {{"res", s.residue()}};
  }
  return {};
}

Scalar scalar_from_json(const CoeffRing& ring, const json& j) {
  if (!j.is_object()) throw ParseError("scalar must be a JSON object");
  switch (ring.kind()) {
    case CoeffRing::Kind::Q: {
      mpz_class num = parse_decimal(require(j, "num"), "num");
      mpz_class den = parse_decimal(require(j, "den"), "den");
      if (den <= 0) throw ParseError("denominator must be positive");
      return Scalar::from_fraction(ring, num, den);
    }
    case CoeffRing::Kind::Z: return Scalar::from_integer(ring, parse_decimal(require(j, "int"), "int"));
    case CoeffRing::Kind::Zp: {
      const json& r = require(j, "res");
      if (!r.is_number_integer()) throw ParseError("'res' must be an integer");
      const auto v = r.get<long long>();
      if (v < 0 || v >= static_cast<long long>(ring.modulus())) {
        throw ParseError("residue " + std::to_string(v) + " outside [0, " + std::to_string(ring.modulus()) + ")");
      }
      return Scalar::from_residue(ring, static_cast<std::uint64_t>(v));
    }
  }
  throw ParseError("unreachable ring kind");
}

json element_to_json(const FiElement& a) {
  return {{"ring", a.ring().designator()}, {"entries", pair_entries(a.poset(), a.entries())}};
}

FiElement element_from_json(const PosetRef& poset, const json& j) {
  const json& ring_j = require(j, "ring");
  if (!ring_j.is_string()) throw ParseError("'ring' must be a designator string");
  const CoeffRing ring = CoeffRing::parse(ring_j.get_ref<const std::string&>());
  const json& entries = require(j, "entries");
  if (!entries.is_array()) throw ParseError("'entries' must be an array");
  FiElement a(poset, ring);
  std::set<std::size_t> seen;
  for (const auto& e : entries) {
    const auto x = label_index(*poset, e, "from");
    const auto y = label_index(*poset, e, "to");
    auto idx = poset->pair_index(x, y);
    if (!idx) throw ParseError("entry (" + poset->label(x) + "," + poset->label(y) + ") is not a comparable pair");
    if (!seen.insert(*idx).second) {
      throw ParseError("duplicate entry (" + poset->label(x) + "," + poset->label(y) + ")");
    }
    Scalar v = scalar_from_json(ring, require(e, "value"));
    if (v.is_zero()) throw ParseError("zero value stored at (" + poset->label(x) + "," + poset->label(y) + ")");
    a.set(*idx, v);
  }
  return a;
}

json endo_to_json(const LinearEndo& d) {
  json columns = json::array();
  for (std::size_t c = 0; c < d.dimension(); ++c) {
    json col = json::array();
    for (std::size_t r = 0; r < d.dimension(); ++r) col.push_back(scalar_to_json(d.entry(r, c)));
    columns.push_back(std::move(col));
  }
  return {{"ring", d.ring().designator()}, {"poset_hash", d.poset().hash_hex()}, {"columns", std::move(columns)}};
}

LinearEndo endo_from_json(const PosetRef& poset, const json& j) {
  const json& ring_j = require(j, "ring");
  if (!ring_j.is_string()) throw ParseError("'ring' must be a designator string");
  const CoeffRing ring = CoeffRing::parse(ring_j.get_ref<const std::string&>());
  if (j.contains("poset_hash")) {
    const json& h = j.at("poset_hash");
    if (!h.is_string() || h.get_ref<const std::string&>() != poset->hash_hex()) {
      throw ParseError("poset_hash does not match the poset (expected " + poset->hash_hex() + ")");
    }
  }
  const json& columns = require(j, "columns");
  const std::size_t n = poset->pair_count();
  if (!columns.is_array() || columns.size() != n) {
    throw ParseError("'columns' must hold " + std::to_string(n) + " columns");
  }
  LinearEndo d(poset, ring);
  for (std::size_t c = 0; c < n; ++c) {
    const json& col = columns[c];
    if (!col.is_array() || col.size() != n) {
      throw ParseError("column " + std::to_string(c) + " must hold " + std::to_string(n) + " entries");
    }
    for (std::size_t r = 0; r < n; ++r) d.set_entry(r, c, scalar_from_json(ring, col[r]));
  }
  return d;
}

json sigma_to_json(const TransitiveMap& sigma) { return pair_entries(sigma.poset(), sigma.values()); }

json decomposition_to_json(const Decomposition& dec) {
  return {{"alpha", element_to_json(dec.alpha)}, {"sigma", sigma_to_json(dec.sigma)}, {"residual", dec.residual_norm}};
}

json local_report_to_json(const LocalCheckReport& r, const CoeffRing& ring) {
  json out = {{"mode", std::string(mode_name(r.mode))},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"probes_checked", r.probes_checked},
              {"ring", ring.designator()}};
  if (r.failing_probe) out["failing_probe"] = element_to_json(*r.failing_probe);
  return out;
}

json lemma_report_to_json(const LemmaReport& r) {
  json checks = json::object();
  std::uint64_t cases = 0;
  for (const auto& c : r.checks) {
    json entry = {{"passed", c.passed}, {"cases", c.cases}};
    if (!c.passed) entry["first_failure"] = c.first_failure;
    checks[c.name] = std::move(entry);
    cases += c.cases;
  }
  return {{"mode", "lemmas"},
          {"verdict", std::string(verdict_name(r.all_passed() ? Verdict::confirmed : Verdict::refuted))},
          {"probes_checked", cases},
          {"checks", std::move(checks)}};
}

json theorem_report_to_json(const TheoremReport& r) {
  json out = {{"mode", r.mode},
              {"verdict", std::string(verdict_name(r.verdict))},
              {"probes_checked", r.probes_checked},
              {"ring", r.ring.designator()},
              {"poset_hash", r.poset_hash}};
  if (r.endos) out["endos"] = *r.endos;
  if (r.s_loc) out["s_loc"] = *r.s_loc;
  if (r.s_der) out["s_der"] = *r.s_der;
  if (r.seed) out["seed"] = *r.seed;
  if (r.trials) {
    out["trials"] = *r.trials;
    out["derivations_passed"] = r.derivations_passed;
    out["non_derivations_sampled"] = r.non_derivations_sampled;
    out["non_derivations_rejected"] = r.non_derivations_rejected;
    out["decompositions_checked"] = r.decompositions_checked;
    out["decompositions_exact"] = r.decompositions_exact;
  }
  if (r.local_mode) out["local_mode"] = *r.local_mode;
  return out;
}

std::string dump(const json& j) { return j.dump(); }

namespace {

void flatten(const json& j, const std::string& prefix, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (const auto& [k, v] : j.items()) flatten(v, prefix.empty() ? k : prefix + "." + k, out);
    return;
  }
  out += prefix + ": " + (j.is_string() ? j.get<std::string>() : j.dump()) + "\n";
}

}  // namespace

std::string to_text(const json& j) {
  std::string out;
  flatten(j, "", out);
  return out;
}

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace fia::io
