#include "fia/locder.hpp"

#include <bit>
#include <functional>

#include "fia/linalg.hpp"
#include "fia/parallel.hpp"
#include "fia/sampling.hpp"

namespace fia {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::local_derivation: return "local_derivation";
    case Verdict::rejected: return "rejected";
    case Verdict::inconclusive: return "inconclusive";
    case Verdict::confirmed: return "confirmed";
    case Verdict::refuted: return "REFUTED";
  }
  return "";
}

std::string_view mode_name(CheckMode m) { return m == CheckMode::exhaustive ? "exhaustive" : "spanning"; }

namespace {

void require_basis(const LinearEndo& d, std::span<const LinearEndo> basis) {
  if (!d.ring().is_field()) throw Error("local-derivation checks need a field ring (q or zp:P), got z");
  for (const auto& b : basis) require_same_algebra(d.poset(), d.ring(), b.poset(), b.ring());
}

SparseRow sparse(const FiElement& a) { return SparseRow(a.entries().begin(), a.entries().end()); }

SpanMembership membership(const LinearEndo& d, std::span<const LinearEndo> basis) {
  std::vector<std::span<const Scalar>> generators;
  generators.reserve(basis.size());
  for (const auto& b : basis) generators.emplace_back(b.flat());
  return SpanMembership(d.ring(), d.dimension(), generators, d.flat());
}

LocalCheckReport find_failing_probe(const LinearEndo& d, std::span<const LinearEndo> basis, std::uint64_t count,
                                    unsigned threads, CheckMode mode,
                                    const std::function<FiElement(std::uint64_t)>& probe) {
  const auto solver = membership(d, basis);
  auto first = parallel_find_first(count, resolve_threads(threads),
                                   [&](std::uint64_t i) { return !solver.contains(sparse(probe(i))); });
  LocalCheckReport report;
  report.mode = mode;
  if (first) {
    report.verdict = Verdict::rejected;
    report.failing_probe = probe(*first);
    report.probes_checked = *first + 1;
  } else {
    report.verdict = mode == CheckMode::exhaustive ? Verdict::local_derivation : Verdict::inconclusive;
    report.probes_checked = count;
  }
  return report;
}

}  // namespace

std::optional<Witness> witness_for(const LinearEndo& d, const FiElement& a, std::span<const LinearEndo> der_basis) {
  require_basis(d, der_basis);
  require_same_algebra(d.poset(), d.ring(), a.poset(), a.ring());
  auto coeffs = membership(d, der_basis).solve(sparse(a));
  if (!coeffs) return std::nullopt;
  LinearEndo w = LinearEndo::zero(d.poset_ref(), d.ring());
  for (std::size_t i = 0; i < der_basis.size(); ++i) {
    if (!(*coeffs)[i].is_zero()) w = w + (*coeffs)[i] * der_basis[i];
  }
  return Witness{a, std::move(w)};
}

std::optional<std::uint64_t> element_count(const Poset& poset, std::uint32_t p, std::uint64_t cap) {
  std::uint64_t count = 1;
  for (std::size_t k = 0; k < poset.pair_count(); ++k) {
    if (count > cap / p) return std::nullopt;
    count *= p;
  }
  if (count > cap) return std::nullopt;
  return count;
}

FiElement probe_from_ordinal(const PosetRef& poset, CoeffRing ring, std::uint64_t ordinal) {
  FiElement a(poset, ring);
  const std::uint32_t p = ring.modulus();
  for (std::size_t k = 0; k < poset->pair_count() && ordinal != 0; ++k) {
    a.set(k, Scalar::from_residue(ring, ordinal % p));
    ordinal /= p;
  }
  return a;
}

LocalCheckReport check_local_exhaustive(const LinearEndo& d, const LocalCheckOptions& options) {
  if (d.ring().kind() != CoeffRing::Kind::Zp) throw Error("exhaustive mode needs a prime field ring (zp:P)");
  const auto basis = derivation_basis(d.poset_ref(), d.ring());
  return check_local_exhaustive(d, basis, options);
}

LocalCheckReport check_local_exhaustive(const LinearEndo& d, std::span<const LinearEndo> der_basis,
                                        const LocalCheckOptions& options) {
  if (d.ring().kind() != CoeffRing::Kind::Zp) throw Error("exhaustive mode needs a prime field ring (zp:P)");
  require_basis(d, der_basis);
  auto count = element_count(d.poset(), d.ring().modulus(), options.probe_cap);
  if (!count) {
    throw CapError("exhaustive check needs " + std::to_string(d.ring().modulus()) + "^" +
                   std::to_string(d.poset().pair_count()) + " probes, above the cap of " +
                   std::to_string(options.probe_cap));
  }
  const auto& poset = d.poset_ref();
  const auto ring = d.ring();
  return find_failing_probe(d, der_basis, *count, options.threads, CheckMode::exhaustive,
                            [&](std::uint64_t i) { return probe_from_ordinal(poset, ring, i); });
}

std::vector<FiElement> spanning_probes(const PosetRef& poset, CoeffRing ring, const LocalCheckOptions& options) {
  const Poset& p = *poset;
  const std::size_t n = p.size();
  std::vector<FiElement> probes;
  for (const auto& pr : p.pairs()) probes.push_back(FiElement::unit(poset, ring, pr.from, pr.to));

  const std::uint64_t all = n == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  if (n <= options.subset_cap) {
    for (std::uint64_t mask = 1; mask <= all && mask != 0; ++mask) {
      probes.push_back(FiElement::idempotent_mask(poset, ring, mask));
      if (mask == all) break;
    }
  } else {
    for (std::size_t x = 0; x < n; ++x) {
      for (std::size_t y = x + 1; y < n; ++y) {
        probes.push_back(FiElement::idempotent_mask(poset, ring, (std::uint64_t{1} << x) | (std::uint64_t{1} << y)));
      }
    }
    for (std::size_t x = 0; x < n; ++x) {
      probes.push_back(FiElement::idempotent_mask(poset, ring, all & ~(std::uint64_t{1} << x)));
    }
    probes.push_back(FiElement::idempotent_mask(poset, ring, all));
  }

  for (const auto& xy : p.pairs()) {
    if (xy.from == xy.to) continue;
    for (std::size_t z = 0; z < n; ++z) {
      if (!p.less(xy.to, z)) continue;
      const auto x = xy.from;
      const auto y = xy.to;
      probes.push_back(FiElement::unit(poset, ring, x, y) + FiElement::unit(poset, ring, y, z) -
                       FiElement::unit(poset, ring, x, z) - FiElement::unit(poset, ring, y, y));
    }
  }

  Rng rng(mix_seed(options.seed, 0x70b3));
  for (std::size_t i = 0; i < options.random_probes; ++i) probes.push_back(random_element(rng, poset, ring));
  return probes;
}

LocalCheckReport check_local_spanning(const LinearEndo& d, const LocalCheckOptions& options) {
  if (!d.ring().is_field()) throw Error("spanning mode needs a field ring (q or zp:P), got z");
  const auto basis = derivation_basis(d.poset_ref(), d.ring());
  return check_local_spanning(d, basis, options);
}

LocalCheckReport check_local_spanning(const LinearEndo& d, std::span<const LinearEndo> der_basis,
                                      const LocalCheckOptions& options) {
  require_basis(d, der_basis);
  const auto probes = spanning_probes(d.poset_ref(), d.ring(), options);
  return find_failing_probe(d, der_basis, probes.size(), options.threads, CheckMode::spanning,
                            [&](std::uint64_t i) { return probes[i]; });
}

bool LemmaReport::all_passed() const {
  for (const auto& c : checks) {
    if (!c.passed) return false;
  }
  return true;
}

const LemmaCheck& LemmaReport::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c;
  }
  throw Error("no lemma check named '" + std::string(name) + "'");
}

namespace {

class CheckRecorder {
 public:
  explicit CheckRecorder(std::string name) { check_.name = std::move(name); }

  void record(bool ok, const std::function<std::string()>& describe) {
    ++check_.cases;
    if (!ok && check_.passed) {
      check_.passed = false;
      check_.first_failure = describe();
    }
  }

  LemmaCheck take() { return std::move(check_); }

 private:
  LemmaCheck check_;
};

std::string pair_label(const Poset& p, std::size_t x, std::size_t y) {
  return "(" + p.label(x) + "," + p.label(y) + ")";
}

std::string subset_label(const Poset& p, std::uint64_t mask) {
  std::string out = "{";
  bool first = true;
  for (std::size_t x = 0; x < p.size(); ++x) {
    if (!((mask >> x) & 1u)) continue;
    if (!first) out += ",";
    out += p.label(x);
    first = false;
  }
  return out + "}";
}

}  // namespace

LemmaReport lemma_conformance(const LinearEndo& d, const LemmaOptions& options) {
  const auto& poset = d.poset_ref();
  const Poset& p = *poset;
  const auto ring = d.ring();
  const std::size_t n = p.size();
  Rng rng(mix_seed(options.seed, 0x1e44a));

  std::vector<std::uint64_t> subsets;
  if (n <= 6) {
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) subsets.push_back(mask);
  } else {
    for (std::size_t i = 0; i < options.random_subsets; ++i) {
      std::uint64_t mask = 0;
      for (std::size_t x = 0; x < n; ++x) {
        if (rng.chance(0.5)) mask |= std::uint64_t{1} << x;
      }
      subsets.push_back(mask);
    }
  }

  std::vector<FiElement> images_of_units;
  for (std::size_t x = 0; x < n; ++x) images_of_units.push_back(d.apply(FiElement::unit(poset, ring, x, x)));

  LemmaReport report;

  {
    CheckRecorder rec("restriction");
    std::vector<FiElement> samples{FiElement::zeta(poset, ring)};
    for (std::size_t i = 0; i < options.random_elements; ++i) samples.push_back(random_element(rng, poset, ring));
    for (std::size_t s = 0; s < samples.size(); ++s) {
      const FiElement image = d.apply(samples[s]);
      for (const auto& pr : p.pairs()) {
        const FiElement restricted = d.apply(samples[s].restrict(pr.from, pr.to));
        rec.record(image.coeff(pr.from, pr.to) == restricted.coeff(pr.from, pr.to),
                   [&] { return "sample " + std::to_string(s) + " at " + pair_label(p, pr.from, pr.to); });
      }
    }
    report.checks.push_back(rec.take());
  }

  {
    CheckRecorder rec("subset_idempotent");
    for (auto mask : subsets) {
      const FiElement image = d.apply(FiElement::idempotent_mask(poset, ring, mask));
      for (const auto& pr : p.pairs()) {
        const bool u_in = (mask >> pr.from) & 1u;
        const bool v_in = (mask >> pr.to) & 1u;
        Scalar expected = Scalar::zero(ring);
        if (u_in && !v_in) expected = images_of_units[pr.from].coeff(pr.from, pr.to);
        if (!u_in && v_in) expected = images_of_units[pr.to].coeff(pr.from, pr.to);
        rec.record(image.coeff(pr.from, pr.to) == expected,
                   [&] { return "X=" + subset_label(p, mask) + " at " + pair_label(p, pr.from, pr.to); });
      }
    }
    report.checks.push_back(rec.take());
  }

  {
    CheckRecorder rec("corollary");
    for (const auto& pr : p.pairs()) {
      rec.record(images_of_units[pr.from].coeff(pr.from, pr.to) == -images_of_units[pr.to].coeff(pr.from, pr.to),
                 [&] { return "at " + pair_label(p, pr.from, pr.to); });
    }
    report.checks.push_back(rec.take());
  }

  {
    CheckRecorder rec("idempotent_identity");
    for (std::size_t x = 0; x < n; ++x) {
      rec.record(idempotent_identity_check(d, FiElement::unit(poset, ring, x, x)),
                 [&] { return "e_" + p.label(x); });
    }
    for (auto mask : subsets) {
      rec.record(idempotent_identity_check(d, FiElement::idempotent_mask(poset, ring, mask)),
                 [&] { return "e_X for X=" + subset_label(p, mask); });
    }
    for (const auto& pr : p.pairs()) {
      if (pr.from == pr.to) continue;
      const FiElement exy = FiElement::unit(poset, ring, pr.from, pr.to);
      rec.record(idempotent_identity_check(d, FiElement::unit(poset, ring, pr.from, pr.from) + exy),
                 [&] { return "e_x + e_xy at " + pair_label(p, pr.from, pr.to); });
      rec.record(idempotent_identity_check(d, FiElement::unit(poset, ring, pr.to, pr.to) + exy),
                 [&] { return "e_y + e_xy at " + pair_label(p, pr.from, pr.to); });
    }
    report.checks.push_back(rec.take());
  }

  {
    CheckRecorder rec("reduced_support");
    const LinearEndo reduced = d - inner(decompose(d).alpha);
    for (std::size_t col = 0; col < d.dimension(); ++col) {
      for (std::size_t row = 0; row < d.dimension(); ++row) {
        if (row == col) continue;
        rec.record(reduced.entry(row, col).is_zero(), [&] {
          const auto& c = p.pairs()[col];
          const auto& r = p.pairs()[row];
          return "d'(e" + pair_label(p, c.from, c.to) + ") at " + pair_label(p, r.from, r.to);
        });
      }
    }
    report.checks.push_back(rec.take());
  }

  return report;
}

namespace {

LinearEndo endo_from_ordinal(const PosetRef& poset, CoeffRing ring, std::uint64_t ordinal) {
  LinearEndo d(poset, ring);
  const std::size_t n = d.dimension();
  const std::uint32_t p = ring.modulus();
  for (std::size_t v = 0; v < n * n && ordinal != 0; ++v) {
    d.set_entry(v % n, v / n, Scalar::from_residue(ring, ordinal % p));
    ordinal /= p;
  }
  return d;
}

struct EnumerationTally {
  std::uint64_t loc = 0;
  std::uint64_t der = 0;
  std::uint64_t der_not_loc = 0;
  std::uint64_t loc_not_der = 0;
  std::uint64_t probes = 0;
};

}  // namespace

TheoremReport theorem_verify_enumerate(const PosetRef& poset, std::uint32_t prime, const TheoremOptions& options) {
  const CoeffRing ring = CoeffRing::prime_field(prime);
  const std::size_t n = poset->pair_count();
  std::uint64_t endos = 1;
  for (std::size_t v = 0; v < n * n; ++v) {
    if (endos > options.endo_cap / prime) {
      throw CapError("enumeration needs " + std::to_string(prime) + "^" + std::to_string(n * n) +
                     " endomorphisms, above the cap of " + std::to_string(options.endo_cap));
    }
    endos *= prime;
  }
  if (endos > options.endo_cap) throw CapError("enumeration above the endomorphism cap");
  if (!element_count(*poset, prime, options.local.probe_cap)) {
    throw CapError("exhaustive local check for this poset exceeds the probe cap");
  }

  const auto basis = derivation_basis(poset, ring);
  LocalCheckOptions inner_opts = options.local;
  inner_opts.threads = 1;

  constexpr std::uint64_t kChunk = 64;
  const std::uint64_t chunks = (endos + kChunk - 1) / kChunk;
  auto tallies = parallel_map(chunks, resolve_threads(options.local.threads), [&](std::size_t c) {
    EnumerationTally t;
    const std::uint64_t end = std::min(endos, (c + 1) * kChunk);
    for (std::uint64_t i = c * kChunk; i < end; ++i) {
      const LinearEndo d = endo_from_ordinal(poset, ring, i);
      const bool der = is_derivation(d);
      const auto local = check_local_exhaustive(d, basis, inner_opts);
      const bool loc = local.verdict == Verdict::local_derivation;
      t.probes += local.probes_checked;
      t.der += der;
      t.loc += loc;
      t.der_not_loc += der && !loc;
      t.loc_not_der += loc && !der;
    }
    return t;
  });

  EnumerationTally total;
  for (const auto& t : tallies) {
    total.loc += t.loc;
    total.der += t.der;
    total.der_not_loc += t.der_not_loc;
    total.loc_not_der += t.loc_not_der;
    total.probes += t.probes;
  }

  TheoremReport report;
  report.mode = "enumerate";
  report.ring = ring;
  report.poset_hash = poset->hash_hex();
  report.endos = endos;
  report.s_loc = total.loc;
  report.s_der = total.der;
  report.probes_checked = total.probes;
  report.verdict = (total.der_not_loc == 0 && total.loc_not_der == 0) ? Verdict::confirmed : Verdict::refuted;
  return report;
}

namespace {

struct TrialOutcome {
  bool derivation_passed = false;
  bool non_derivation_sampled = false;
  bool non_derivation_rejected = false;
  std::uint64_t decompositions_checked = 0;
  std::uint64_t decompositions_exact = 0;
  std::uint64_t probes = 0;
};

}  // namespace

TheoremReport theorem_verify_random(const PosetRef& poset, CoeffRing ring, std::uint64_t trials, std::uint64_t seed,
                                    const TheoremOptions& options) {
  if (!ring.is_field()) throw Error("theorem_verify_random needs a field ring (q or zp:P), got z");
  const auto basis = derivation_basis(poset, ring);
  const bool exhaustive =
      ring.kind() == CoeffRing::Kind::Zp && element_count(*poset, ring.modulus(), options.local.probe_cap).has_value();

  auto run_local = [&](const LinearEndo& d, std::uint64_t trial_seed) {
    LocalCheckOptions opts = options.local;
    opts.threads = 1;
    opts.seed = trial_seed;
    return exhaustive ? check_local_exhaustive(d, basis, opts) : check_local_spanning(d, basis, opts);
  };
  auto check_decomposition = [&](const LinearEndo& d, TrialOutcome& out) {
    const auto dec = decompose(d);
    ++out.decompositions_checked;
    if (dec.residual_norm == 0 && is_cocycle(dec.sigma)) ++out.decompositions_exact;
  };

  auto outcomes = parallel_map(trials, resolve_threads(options.local.threads), [&](std::size_t t) {
    TrialOutcome out;
    Rng rng(mix_seed(seed, t));

    const LinearEndo der = random_combination(rng, basis, poset, ring);
    const auto der_report = run_local(der, mix_seed(seed, t + trials));
    out.probes += der_report.probes_checked;
    out.derivation_passed = der_report.verdict != Verdict::rejected;
    if (out.derivation_passed) check_decomposition(der, out);

    for (int attempt = 0; attempt < 64; ++attempt) {
      LinearEndo candidate = random_endo(rng, poset, ring);
      if (is_derivation(candidate)) continue;
      out.non_derivation_sampled = true;
      const auto report = run_local(candidate, mix_seed(seed, t + 2 * trials));
      out.probes += report.probes_checked;
      out.non_derivation_rejected = report.verdict == Verdict::rejected;
      if (!out.non_derivation_rejected) check_decomposition(candidate, out);
      break;
    }
    return out;
  });

  TheoremReport report;
  report.mode = "random";
  report.ring = ring;
  report.poset_hash = poset->hash_hex();
  report.seed = seed;
  report.trials = trials;
  report.local_mode = std::string(mode_name(exhaustive ? CheckMode::exhaustive : CheckMode::spanning));
  std::uint64_t non_derivations = 0;
  for (const auto& o : outcomes) {
    report.probes_checked += o.probes;
    report.derivations_passed += o.derivation_passed;
    non_derivations += o.non_derivation_sampled;
    report.non_derivations_rejected += o.non_derivation_rejected;
    report.decompositions_checked += o.decompositions_checked;
    report.decompositions_exact += o.decompositions_exact;
  }
  report.non_derivations_sampled = non_derivations;
  const bool ok = report.derivations_passed == trials && report.non_derivations_rejected == non_derivations &&
                  report.decompositions_exact == report.decompositions_checked;
  report.verdict = ok ? Verdict::confirmed : Verdict::refuted;
  return report;
}

}  // namespace fia
