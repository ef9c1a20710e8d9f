#include <cstdlib>

#include "doctest.h"
#include "fia/io.hpp"
#include "fia/sampling.hpp"
#include "support.hpp"

using namespace fia;
using namespace fia::testing;

namespace {

const CoeffRing kQ = CoeffRing::rationals();

// d(e_x) = e_xy on the 2-chain, other columns zero; so d(delta) = e_xy.
LinearEndo bad_map(const PosetRef& p, CoeffRing ring) {
  LinearEndo d(p, ring);
  d.set_entry(*p->pair_index(0, 1), *p->pair_index(0, 0), Scalar::one(ring));
  return d;
}

// Brute-force witness search over Zp: every derivation is p-enumerated from
// the full endo space, independent of derivation_basis.
bool has_witness_brute(const LinearEndo& d, const FiElement& a) {
  const auto& p = d.poset_ref();
  const auto ring = d.ring();
  const std::size_t n = p->pair_count();
  const auto target = d.apply(a);
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n * n; ++i) total *= ring.modulus();
  for (std::uint64_t o = 0; o < total; ++o) {
    std::vector<Scalar> flat;
    std::uint64_t v = o;
    for (std::size_t i = 0; i < n * n; ++i) {
      flat.push_back(Scalar::from_residue(ring, v % ring.modulus()));
      v /= ring.modulus();
    }
    const auto cand = LinearEndo::from_flat(p, ring, flat);
    if (cand.apply(a) == target && leibniz_oracle(cand)) return true;
  }
  return false;
}

}  // namespace

TEST_SUITE("locder") {
  TEST_CASE("witness examples") {
    auto p = chain2();
    const auto basis = derivation_basis(p, kQ);
    Rng rng(2);
    auto d = random_combination(rng, basis, p, kQ);
    auto a = random_element(rng, p, kQ);
    auto w = witness_for(d, a, basis);
    REQUIRE(w);
    CHECK(is_derivation(w->derivation));
    CHECK(w->derivation.apply(a) == d.apply(a));
    CHECK(witness_for(LinearEndo::zero(p, kQ), a, basis));
    CHECK_FALSE(witness_for(bad_map(p, kQ), FiElement::delta(p, kQ), basis));
    CHECK_THROWS_AS(witness_for(LinearEndo::zero(p, CoeffRing::integers()), FiElement::zero(p, CoeffRing::integers()), {}),
                    Error);
  }

  TEST_CASE("probe ordinals") {
    auto p = chain2();
    const auto z3 = CoeffRing::prime_field(3);
    CHECK(probe_from_ordinal(p, z3, 0).is_zero());
    CHECK(probe_from_ordinal(p, z3, 1) == FiElement::unit(p, z3, 0, 0));
    CHECK(probe_from_ordinal(p, z3, 3) == FiElement::unit(p, z3, 0, 1));
    CHECK(element_count(*p, 3, 100) == 27);
    CHECK_FALSE(element_count(*p, 3, 26));
  }

  TEST_CASE("exhaustive examples") {
    auto p = chain2();
    const auto z2 = CoeffRing::prime_field(2);
    for (const auto& d : derivation_basis(p, z2)) {
      auto r = check_local_exhaustive(d);
      CHECK(r.verdict == Verdict::local_derivation);
      CHECK(r.probes_checked == 8);
      CHECK_FALSE(r.failing_probe);
    }
    auto r = check_local_exhaustive(bad_map(p, z2));
    CHECK(r.verdict == Verdict::rejected);
    REQUIRE(r.failing_probe);
    CHECK(*r.failing_probe == FiElement::delta(p, z2));
    CHECK(r.probes_checked == 6);
    CHECK_FALSE(has_witness_brute(bad_map(p, z2), *r.failing_probe));
    CHECK(check_local_exhaustive(LinearEndo::zero(chain3(), CoeffRing::prime_field(3))).verdict ==
          Verdict::local_derivation);
  }

  TEST_CASE("exhaustive errors") {
    CHECK_THROWS_AS(check_local_exhaustive(LinearEndo::zero(chain2(), kQ)), Error);
    LocalCheckOptions o;
    o.probe_cap = 7;
    CHECK_THROWS_AS(check_local_exhaustive(LinearEndo::zero(chain2(), CoeffRing::prime_field(2)), o), CapError);
  }

  TEST_CASE("spanning examples") {
    auto p = chain2();
    Rng rng(3);
    auto d = random_combination(rng, derivation_basis(p, kQ), p, kQ);
    auto r = check_local_spanning(d);
    CHECK(r.verdict == Verdict::inconclusive);
    CHECK(r.mode == CheckMode::spanning);
    CHECK(r.probes_checked == spanning_probes(p, kQ, {}).size());

    auto rb = check_local_spanning(bad_map(p, kQ));
    CHECK(rb.verdict == Verdict::rejected);
    CHECK(*rb.failing_probe == FiElement::delta(p, kQ));

    auto c3 = chain3();
    TransitiveMap s(c3, kQ);
    s.set(*c3->pair_index(0, 1), Scalar::one(kQ));
    s.set(*c3->pair_index(1, 2), Scalar::one(kQ));
    auto rs = check_local_spanning(sigma_endo(s));
    CHECK(rs.verdict == Verdict::rejected);
    const auto cocycle_probe = FiElement::unit(c3, kQ, 0, 1) + FiElement::unit(c3, kQ, 1, 2) -
                               FiElement::unit(c3, kQ, 0, 2) - FiElement::unit(c3, kQ, 1, 1);
    CHECK(*rs.failing_probe == cocycle_probe);
    CHECK_FALSE(witness_for(sigma_endo(s), cocycle_probe, derivation_basis(c3, kQ)));
    CHECK_THROWS_AS(check_local_spanning(LinearEndo::zero(p, CoeffRing::integers())), Error);
  }

  TEST_CASE("spanning probes on a larger poset stay bounded") {
    auto p = share(posets::antichain(14));
    const auto probes = spanning_probes(p, kQ, {});
    // 14 units, C(14,2) pairs, 14 co-singletons, the full set, 32 random.
    CHECK(probes.size() == 14 + 91 + 14 + 1 + 32);
  }

  TEST_CASE("lemma examples") {
    auto p = chain2();
    Rng rng(4);
    auto d = random_combination(rng, derivation_basis(p, kQ), p, kQ);
    CHECK(lemma_conformance(d).all_passed());
    CHECK(lemma_conformance(LinearEndo::zero(p, kQ)).all_passed());
    LinearEndo bad(p, kQ);
    const auto xy = *p->pair_index(0, 1);
    bad.set_entry(xy, *p->pair_index(0, 0), Scalar::one(kQ));
    bad.set_entry(xy, *p->pair_index(1, 1), Scalar::one(kQ));
    const auto report = lemma_conformance(bad);
    CHECK_FALSE(report.all_passed());
    CHECK_FALSE(report.check("corollary").passed);
    CHECK_FALSE(report.check("corollary").first_failure.empty());
    CHECK(report.checks.size() == 5);
  }

  TEST_CASE("theorem enumeration examples") {
    auto r = theorem_verify_enumerate(chain2(), 2);
    CHECK(r.verdict == Verdict::confirmed);
    CHECK(r.endos == 512);
    CHECK(r.s_loc == 4);
    CHECK(r.s_der == 4);
    for (auto p : {singleton(), antichain2()}) {
      auto s = theorem_verify_enumerate(p, 2);
      CHECK(s.verdict == Verdict::confirmed);
      CHECK(s.s_loc == 1);
      CHECK(s.s_der == 1);
    }
    TheoremOptions o;
    o.endo_cap = 511;
    CHECK_THROWS_AS(theorem_verify_enumerate(chain2(), 2, o), CapError);
  }

  TEST_CASE("exhaustive check agrees with brute-force witnesses on a small instance") {
    // Every endo of the singleton over Zp(3), and a sample on the 2-chain over Zp(2).
    const auto z3 = CoeffRing::prime_field(3);
    auto s = singleton();
    for (std::uint32_t v = 0; v < 3; ++v) {
      std::vector<Scalar> flat{Scalar::from_residue(z3, v)};
      auto d = LinearEndo::from_flat(s, z3, flat);
      auto r = check_local_exhaustive(d);
      CHECK((r.verdict == Verdict::local_derivation) == (v == 0));
      if (r.failing_probe) CHECK_FALSE(has_witness_brute(d, *r.failing_probe));
    }
    const auto z2 = CoeffRing::prime_field(2);
    auto p = chain2();
    Rng rng(12);
    for (int t = 0; t < 6; ++t) {
      auto d = random_endo(rng, p, z2, 0.5);
      auto r = check_local_exhaustive(d);
      if (r.failing_probe) CHECK_FALSE(has_witness_brute(d, *r.failing_probe));
      CHECK((r.verdict == Verdict::local_derivation) == leibniz_oracle(d));
    }
  }

  TEST_CASE("random harness") {
    auto r = theorem_verify_random(chain3(), kQ, 100, 42);
    CHECK(r.verdict == Verdict::confirmed);
    CHECK(r.derivations_passed == 100);
    CHECK(r.non_derivations_rejected == r.non_derivations_sampled);
    CHECK(r.non_derivations_sampled == 100);
    CHECK(r.decompositions_exact == r.decompositions_checked);

    auto empty = theorem_verify_random(chain3(), kQ, 0, 1);
    CHECK(empty.verdict == Verdict::confirmed);
    CHECK(empty.derivations_passed == 0);
    CHECK(empty.non_derivations_sampled == 0);

    const auto z3 = CoeffRing::prime_field(3);
    auto rz = theorem_verify_random(chain2(), z3, 50, 7);
    CHECK(rz.verdict == Verdict::confirmed);
    CHECK(rz.local_mode == "exhaustive");
    auto ez = theorem_verify_enumerate(chain2(), 3);
    CHECK(ez.verdict == Verdict::confirmed);
    CHECK(ez.s_der == 9);  // 3^2
  }

  TEST_CASE("reports do not depend on the thread count") {
    auto run = [] {
      std::string out = io::dump(io::theorem_report_to_json(theorem_verify_enumerate(chain2(), 2)));
      out += io::dump(io::theorem_report_to_json(theorem_verify_random(vee(), kQ, 10, 3)));
      out += io::dump(io::local_report_to_json(check_local_exhaustive(bad_map(chain2(), CoeffRing::prime_field(3))),
                                               CoeffRing::prime_field(3)));
      return out;
    };
    setenv("FIA_THREADS", "1", 1);
    const auto one = run();
    setenv("FIA_THREADS", "4", 1);
    const auto four = run();
    unsetenv("FIA_THREADS");
    CHECK(one == four);
  }
}
