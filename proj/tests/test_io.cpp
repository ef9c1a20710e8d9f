#include "doctest.h"
#include "fia/io.hpp"
#include "fia/sampling.hpp"
#include "support.hpp"

using namespace fia;
using namespace fia::testing;

TEST_SUITE("io") {
  TEST_CASE("scalar encodings") {
    const auto q = CoeffRing::rationals();
    CHECK(io::dump(io::scalar_to_json(Scalar::from_fraction(q, -5, 6))) == R"({"den":"6","num":"-5"})");
    CHECK(io::dump(io::scalar_to_json(Scalar::from_int(CoeffRing::integers(), 12))) == R"({"int":"12"})");
    const auto z5 = CoeffRing::prime_field(5);
    CHECK(io::dump(io::scalar_to_json(Scalar::from_int(z5, 7))) == R"({"res":2})");
    CHECK_THROWS_AS(io::scalar_from_json(z5, io::parse_json(R"({"res":5})")), ParseError);
    CHECK_THROWS_AS(io::scalar_from_json(q, io::parse_json(R"({"num":"1","den":"0"})")), ParseError);
    CHECK_THROWS_AS(io::scalar_from_json(q, io::parse_json(R"({"num":1,"den":"2"})")), ParseError);
    CHECK(io::scalar_from_json(q, io::parse_json(R"({"num":"2","den":"4"})")) == Scalar::from_fraction(q, 1, 2));
  }

  TEST_CASE("element and map round trips") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      Rng rng(seed);
      auto p = share(random_poset(5, 0.5, seed));
      for (CoeffRing ring : {CoeffRing::rationals(), CoeffRing::integers(), CoeffRing::prime_field(7)}) {
        auto a = random_element(rng, p, ring);
        CHECK(io::element_from_json(p, io::parse_json(io::dump(io::element_to_json(a)))) == a);
        auto d = random_endo(rng, p, ring);
        CHECK(io::endo_from_json(p, io::parse_json(io::dump(io::endo_to_json(d)))) == d);
      }
    }
  }

  TEST_CASE("element parser rejects bad input") {
    auto p = chain2();
    auto parse = [&](const char* text) { return io::element_from_json(p, io::parse_json(text)); };
    CHECK_THROWS_AS(parse(R"({"ring":"q","entries":[{"from":"y","to":"x","value":{"num":"1","den":"1"}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"ring":"q","entries":[{"from":"x","to":"x","value":{"num":"0","den":"1"}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"ring":"q","entries":[{"from":"x","to":"x","value":{"num":"1","den":"1"}},
                                                    {"from":"x","to":"x","value":{"num":"2","den":"1"}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse(R"({"ring":"q","entries":[{"from":"w","to":"x","value":{"num":"1","den":"1"}}]})"),
                    ParseError);
    CHECK_THROWS_AS(parse("{"), ParseError);
  }

  TEST_CASE("map parser checks shape and hash") {
    auto p = chain2();
    auto j = io::endo_to_json(LinearEndo::zero(p, CoeffRing::prime_field(2)));
    j["poset_hash"] = "0000000000000000";
    CHECK_THROWS_AS(io::endo_from_json(p, j), ParseError);
    j.erase("poset_hash");
    CHECK_NOTHROW(io::endo_from_json(p, j));
    j["columns"].erase(0);
    CHECK_THROWS_AS(io::endo_from_json(p, j), ParseError);
  }

  TEST_CASE("reports") {
    auto p = chain2();
    auto dec = decompose(inner(FiElement::unit(p, CoeffRing::rationals(), 0, 1)));
    const auto text = io::to_text(io::decomposition_to_json(dec));
    CHECK(text.find("residual: 0\n") != std::string::npos);
    TheoremReport empty;
    empty.mode = "enumerate";
    const auto dumped = io::dump(io::theorem_report_to_json(empty));
    CHECK(dumped.rfind(R"({"mode":"enumerate","poset_hash":"","probes_checked":0,)", 0) == 0);
    CHECK(dumped == io::dump(io::theorem_report_to_json(empty)));
  }
}
