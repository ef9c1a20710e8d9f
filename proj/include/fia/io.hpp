#pragma once

#include <string>

#include "json.hpp"

#include "fia/locder.hpp"

// JSON wire formats. Object keys are emitted sorted (nlohmann's default
// std::map storage) and entries in canonical pair order, so a given value
// always serializes to the same bytes.

namespace fia::io {

using nlohmann::json;

json scalar_to_json(const Scalar& s);
/// Throws ParseError when the encoding does not match the ring.
Scalar scalar_from_json(const CoeffRing& ring, const json& j);

/// {"ring": "...", "entries": [{"from","to","value"}...]}
json element_to_json(const FiElement& a);
/// Rejects incomparable pairs, unknown labels, duplicates and zero values.
FiElement element_from_json(const PosetRef& poset, const json& j);

/// {"ring", "poset_hash", "columns": [[...], ...]}, column-major and dense.
json endo_to_json(const LinearEndo& d);
/// A present "poset_hash" must match the poset.
LinearEndo endo_from_json(const PosetRef& poset, const json& j);

json sigma_to_json(const TransitiveMap& sigma);
json decomposition_to_json(const Decomposition& dec);

json local_report_to_json(const LocalCheckReport& r, const CoeffRing& ring);
json lemma_report_to_json(const LemmaReport& r);
json theorem_report_to_json(const TheoremReport& r);

/// Compact single-line dump.
std::string dump(const json& j);

/// Line-oriented rendering: one "key: value" line per scalar field, nested
/// objects flattened with dotted keys.
std::string to_text(const json& j);

json parse_json(const std::string& text);

}  // namespace fia::io
