#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fia/deriv.hpp"

namespace fia {

enum class Verdict : std::uint8_t { local_derivation, rejected, inconclusive, confirmed, refuted };

/// Report spelling: "local_derivation", "rejected", "inconclusive", "confirmed", "REFUTED".
std::string_view verdict_name(Verdict v);

enum class CheckMode : std::uint8_t { exhaustive, spanning };

std::string_view mode_name(CheckMode m);

/// A derivation agreeing with the checked map at one probe element.
struct Witness {
  FiElement element;
  LinearEndo derivation;
};

struct LocalCheckOptions {
  std::uint64_t probe_cap = std::uint64_t{1} << 20;  // exhaustive: p^|pairs| must not exceed this
  std::size_t subset_cap = 12;                       // spanning: all subsets X when |P| <= this
  std::size_t random_probes = 32;                    // spanning: seeded random elements
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0 = FIA_THREADS or 1
};

struct LocalCheckReport {
  Verdict verdict = Verdict::inconclusive;
  std::optional<FiElement> failing_probe;
  std::uint64_t probes_checked = 0;
  CheckMode mode = CheckMode::exhaustive;
};

/// Solves sum c_i B_i(a) = d(a) over the given derivation basis. Returns the
/// witness D = sum c_i B_i, or nullopt when the system is inconsistent.
std::optional<Witness> witness_for(const LinearEndo& d, const FiElement& a, std::span<const LinearEndo> der_basis);

/// Number of elements of FI(P, Zp), i.e. p^|pairs|, or nullopt above `cap`.
std::optional<std::uint64_t> element_count(const Poset& poset, std::uint32_t p, std::uint64_t cap);

/// The probe with the given ordinal: digit k (base p, least significant
/// first) is the coefficient at pair k.
FiElement probe_from_ordinal(const PosetRef& poset, CoeffRing ring, std::uint64_t ordinal);

/// Probes every element over Zp. Never inconclusive. Throws CapError when
/// p^|pairs| exceeds the cap and fia::Error when the ring is not Zp.
LocalCheckReport check_local_exhaustive(const LinearEndo& d, const LocalCheckOptions& options = {});
LocalCheckReport check_local_exhaustive(const LinearEndo& d, std::span<const LinearEndo> der_basis,
                                        const LocalCheckOptions& options = {});

/// Probe list for spanning mode, in checking order: every e_xy, subset
/// idempotents e_X, every a = e_xy + e_yz - e_xz - e_y for chains x < y < z,
/// then seeded random elements.
std::vector<FiElement> spanning_probes(const PosetRef& poset, CoeffRing ring, const LocalCheckOptions& options);

/// Rejected (with a genuine counterexample) or inconclusive; never affirms locality.
LocalCheckReport check_local_spanning(const LinearEndo& d, const LocalCheckOptions& options = {});
LocalCheckReport check_local_spanning(const LinearEndo& d, std::span<const LinearEndo> der_basis,
                                      const LocalCheckOptions& options = {});

struct LemmaOptions {
  std::uint64_t seed = 0;
  std::size_t random_elements = 8;
  std::size_t random_subsets = 16;  // used when |P| > 6; smaller posets get every subset
};

/// One entry per necessary condition that every local derivation satisfies.
struct LemmaCheck {
  std::string name;
  bool passed = true;
  std::uint64_t cases = 0;
  std::string first_failure;  // empty when passed
};

struct LemmaReport {
  std::vector<LemmaCheck> checks;  // fixed order, see lemma_conformance

  bool all_passed() const;
  const LemmaCheck& check(std::string_view name) const;
};

/// Checks, in this order:
///   "restriction"         d(a)(x,y) == d(a|_x^y)(x,y)
///   "subset_idempotent"   d(e_X)(u,v) is d(e_u)(u,v), d(e_v)(u,v) or 0 by membership of u, v in X
///   "corollary"           d(e_x)(x,y) == -d(e_y)(x,y)
///   "idempotent_identity" d(e) == d(e) e + e d(e) on e_x, e_X, e_x + e_xy, e_y + e_xy
///   "reduced_support"     (d - ad_alpha)(e_xy) is supported on (x,y) alone
LemmaReport lemma_conformance(const LinearEndo& d, const LemmaOptions& options = {});

struct TheoremOptions {
  std::uint64_t endo_cap = std::uint64_t{1} << 24;
  LocalCheckOptions local;
};

struct TheoremReport {
  std::string mode;  // "enumerate" or "random"
  Verdict verdict = Verdict::confirmed;
  CoeffRing ring = CoeffRing::rationals();
  std::string poset_hash;
  std::uint64_t probes_checked = 0;

  // enumerate
  std::optional<std::uint64_t> endos;
  std::optional<std::uint64_t> s_loc;
  std::optional<std::uint64_t> s_der;

  // random
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> trials;
  std::uint64_t derivations_passed = 0;
  std::uint64_t non_derivations_sampled = 0;
  std::uint64_t non_derivations_rejected = 0;
  std::uint64_t decompositions_exact = 0;
  std::uint64_t decompositions_checked = 0;
  std::optional<std::string> local_mode;
};

/// Enumerates every linear endomorphism of FI(P, Zp) and compares the set
/// of exhaustively-checked local derivations with the set of derivations.
TheoremReport theorem_verify_enumerate(const PosetRef& poset, std::uint32_t prime, const TheoremOptions& options = {});

/// Random campaigns: `trials` random derivations must pass the local check,
/// `trials` random non-derivations must be rejected, and every map that
/// passes must decompose exactly into ad_alpha + L_sigma with sigma a cocycle.
TheoremReport theorem_verify_random(const PosetRef& poset, CoeffRing ring, std::uint64_t trials, std::uint64_t seed,
                                    const TheoremOptions& options = {});

}  // namespace fia
