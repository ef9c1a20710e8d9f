#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "fia/cli.hpp"
#include "fia/io.hpp"

namespace {

const std::string kData = FIA_TEST_DATA;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result fia_run(std::vector<std::string> args) {
  args.insert(args.begin(), "fia");
  std::ostringstream out, err;
  const int code = fia::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string data(const char* name) { return kData + "/" + name; }

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("poset check") {
    auto r = fia_run({"poset", "check", data("chain3.poset")});
    CHECK(r.code == 0);
    CHECK(r.out.find("elements: 3\n") != std::string::npos);
    CHECK(r.out.find("pairs: 6\n") != std::string::npos);
  }

  TEST_CASE("theorem enumerate") {
    auto r = fia_run({"theorem", "enumerate", data("chain2.poset"), "--ring", "zp:2", "--format", "json"});
    CHECK(r.code == 0);
    auto j = fia::io::parse_json(r.out);
    CHECK(j["s_loc"] == 4);
    CHECK(j["s_der"] == 4);
    CHECK(j["verdict"] == "confirmed");
    CHECK(j["ring"] == "zp:2");
  }

  TEST_CASE("locder verify rejects the bad map") {
    auto r = fia_run({"locder", "verify", data("chain2.poset"), data("bad_map.json"), "--mode", "exhaustive", "--ring",
                      "zp:2", "--format", "json"});
    CHECK(r.code == 1);
    auto j = fia::io::parse_json(r.out);
    CHECK(j["verdict"] == "rejected");
    CHECK(j["failing_probe"]["entries"].size() == 2);
    auto s = fia_run({"locder", "verify", data("chain2.poset"), data("bad_map.json"), "--mode", "spanning"});
    CHECK(s.code == 1);
    CHECK(s.out.find("verdict: rejected\n") != std::string::npos);
  }

  TEST_CASE("der verbs") {
    auto b = fia_run({"der", "basis", data("chain2.poset"), "--format", "json"});
    CHECK(b.code == 0);
    auto j = fia::io::parse_json(b.out);
    CHECK(j["dimension"] == 2);
    CHECK(j["ring"] == "q");
    auto h = fia_run({"der", "h1", data("vee.poset")});
    CHECK(h.code == 0);
    CHECK(h.out.find("h1: 0\n") != std::string::npos);
    auto good = fia_run({"der", "decompose", data("chain2.poset"), data("inner_map.json")});
    CHECK(good.code == 0);
    CHECK(good.out.find("residual: 0\n") != std::string::npos);
    auto bad = fia_run({"der", "decompose", data("chain2.poset"), data("bad_map.json")});
    CHECK(bad.code == 1);
  }

  TEST_CASE("lemmas and random") {
    auto l = fia_run({"locder", "lemmas", data("chain2.poset"), data("inner_map.json"), "--format", "json"});
    CHECK(l.code == 0);
    CHECK(fia::io::parse_json(l.out)["verdict"] == "confirmed");
    auto lb = fia_run({"locder", "lemmas", data("chain2.poset"), data("bad_map.json")});
    CHECK(lb.code == 1);
    CHECK(lb.out.find("verdict: REFUTED\n") != std::string::npos);
    auto r = fia_run({"theorem", "random", data("chain3.poset"), "--trials", "10", "--seed", "42", "--format", "json"});
    CHECK(r.code == 0);
    auto r2 = fia_run({"theorem", "random", data("chain3.poset"), "--trials", "10", "--seed", "42", "--format", "json"});
    CHECK(r.out == r2.out);
  }

  TEST_CASE("errors exit with 2") {
    CHECK(fia_run({"poset", "check", data("missing.poset")}).code == 2);
    CHECK(fia_run({"poset", "check", data("cyclic.poset")}).code == 2);
    CHECK(fia_run({"locder", "verify", data("chain2.poset"), data("malformed.json")}).code == 2);
    CHECK(fia_run({"locder", "verify", data("chain3.poset"), data("bad_map.json")}).code == 2);  // hash mismatch
    CHECK(fia_run({"locder", "verify", data("chain2.poset"), data("bad_map.json"), "--ring", "q"}).code == 2);
    CHECK(fia_run({"theorem", "enumerate", data("chain3.poset"), "--endo-cap", "10"}).code == 2);
    CHECK(fia_run({"theorem", "enumerate", data("chain2.poset"), "--ring", "q"}).code == 2);
    CHECK(fia_run({"der", "h1", data("chain2.poset"), "--ring", "z"}).code == 2);
    CHECK(fia_run({"frobnicate"}).code == 2);
    CHECK(fia_run({}).code == 2);
    CHECK(fia_run({"poset", "check", data("chain2.poset"), "--format", "xml"}).code == 2);
    auto help = fia_run({"--help"});
    CHECK(help.code == 0);
    CHECK(help.out.find("theorem") != std::string::npos);
  }

  TEST_CASE("--out writes the report and leaves inputs alone") {
    const auto path = std::filesystem::temp_directory_path() / "fia_cli_out_test.json";
    std::ifstream before_in(data("bad_map.json"));
    const std::string before((std::istreambuf_iterator<char>(before_in)), {});
    auto r = fia_run({"locder", "verify", data("chain2.poset"), data("bad_map.json"), "--format", "json", "--out",
                      path.string()});
    CHECK(r.code == 1);
    CHECK(r.out.empty());
    std::ifstream f(path);
    const std::string written((std::istreambuf_iterator<char>(f)), {});
    CHECK(fia::io::parse_json(written)["verdict"] == "rejected");
    std::ifstream after_in(data("bad_map.json"));
    CHECK(std::string((std::istreambuf_iterator<char>(after_in)), {}) == before);
    std::filesystem::remove(path);
  }

  TEST_CASE("emitted maps parse back") {
    auto b = fia_run({"der", "basis", data("chain3.poset"), "--ring", "zp:3", "--format", "json"});
    REQUIRE(b.code == 0);
    auto j = fia::io::parse_json(b.out);
    std::ifstream in(data("chain3.poset"));
    const std::string text((std::istreambuf_iterator<char>(in)), {});
    auto p = fia::share(fia::parse_poset(text));
    for (const auto& m : j["basis"]) CHECK(fia::io::dump(fia::io::endo_to_json(fia::io::endo_from_json(p, m))) == m.dump());
  }
}
