#include "fia/cli.hpp"

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "fia/io.hpp"
#include "fia/locder.hpp"

namespace fia::cli {

namespace {

struct CliConfig {
  std::string poset_path;
  std::string map_path;
  std::optional<std::string> ring;
  std::optional<std::string> mode;
  std::uint64_t trials = 100;
  std::uint64_t seed = 0;
  std::uint64_t probe_cap = std::uint64_t{1} << 20;
  std::uint64_t endo_cap = std::uint64_t{1} << 24;
  std::string format = "text";
  std::string out_path;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

PosetRef load_poset(const CliConfig& cfg) { return share(parse_poset(read_file(cfg.poset_path))); }

LinearEndo load_map(const CliConfig& cfg, const PosetRef& poset) {
  LinearEndo d = io::endo_from_json(poset, io::parse_json(read_file(cfg.map_path)));
  if (cfg.ring && !(CoeffRing::parse(*cfg.ring) == d.ring())) {
    throw Error("--ring " + *cfg.ring + " conflicts with the map's ring " + d.ring().designator());
  }
  return d;
}

CoeffRing ring_or(const CliConfig& cfg, const char* fallback) { return CoeffRing::parse(cfg.ring.value_or(fallback)); }

LocalCheckOptions local_options(const CliConfig& cfg) {
  LocalCheckOptions o;
  o.probe_cap = cfg.probe_cap;
  o.seed = cfg.seed;
  return o;
}

struct Outcome {
  io::json report;
  int code = kExitOk;
};

Outcome poset_check(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  return {{{"elements", p->size()},
           {"pairs", p->pair_count()},
           {"covers", p->covers().size()},
           {"poset_hash", p->hash_hex()}}};
}

Outcome der_basis(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto ring = ring_or(cfg, "q");
  io::json basis = io::json::array();
  const auto b = derivation_basis(p, ring);
  for (const auto& d : b) basis.push_back(io::endo_to_json(d));
  return {{{"ring", ring.designator()}, {"dimension", b.size()}, {"basis", std::move(basis)}}};
}

Outcome der_h1(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto ring = ring_or(cfg, "q");
  const auto der = derivation_basis(p, ring).size();
  const auto inn = inner_basis(p, ring).size();
  return {{{"ring", ring.designator()}, {"derivations", der}, {"inner", inn}, {"h1", der - inn}}};
}

Outcome der_decompose(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto d = load_map(cfg, p);
  const auto dec = decompose(d);
  const bool exact = dec.residual_norm == 0 && is_cocycle(dec.sigma);
  return {io::decomposition_to_json(dec), exact ? kExitOk : kExitRefuted};
}

Outcome locder_verify(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto d = load_map(cfg, p);
  const std::string mode = cfg.mode.value_or(d.ring().kind() == CoeffRing::Kind::Zp ? "exhaustive" : "spanning");
  LocalCheckReport r;
  if (mode == "exhaustive") {
    r = check_local_exhaustive(d, local_options(cfg));
  } else if (mode == "spanning") {
    r = check_local_spanning(d, local_options(cfg));
  } else {
    throw Error("unknown --mode '" + mode + "' (expected exhaustive or spanning)");
  }
  auto j = io::local_report_to_json(r, d.ring());
  if (mode == "spanning") j["seed"] = cfg.seed;
  return {std::move(j), r.verdict == Verdict::rejected ? kExitRefuted : kExitOk};
}

Outcome locder_lemmas(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto d = load_map(cfg, p);
  LemmaOptions o;
  o.seed = cfg.seed;
  const auto r = lemma_conformance(d, o);
  auto j = io::lemma_report_to_json(r);
  j["ring"] = d.ring().designator();
  j["seed"] = cfg.seed;
  return {std::move(j), r.all_passed() ? kExitOk : kExitRefuted};
}

TheoremOptions theorem_options(const CliConfig& cfg) {
  TheoremOptions o;
  o.endo_cap = cfg.endo_cap;
  o.local = local_options(cfg);
  return o;
}

Outcome theorem_enumerate(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto ring = ring_or(cfg, "zp:2");
  if (ring.kind() != CoeffRing::Kind::Zp) throw Error("theorem enumerate needs --ring zp:P");
  const auto r = theorem_verify_enumerate(p, ring.modulus(), theorem_options(cfg));
  return {io::theorem_report_to_json(r), r.verdict == Verdict::confirmed ? kExitOk : kExitRefuted};
}

Outcome theorem_random(const CliConfig& cfg) {
  auto p = load_poset(cfg);
  const auto ring = ring_or(cfg, "q");
  const auto r = theorem_verify_random(p, ring, cfg.trials, cfg.seed, theorem_options(cfg));
  return {io::theorem_report_to_json(r), r.verdict == Verdict::confirmed ? kExitOk : kExitRefuted};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact incidence-algebra derivation toolkit", "fia"};
  app.require_subcommand(1);
  CliConfig cfg;

  app.add_option("--ring", cfg.ring, "Coefficient ring: q, z or zp:P");
  app.add_option("--mode", cfg.mode, "Local check mode: exhaustive or spanning");
  app.add_option("--trials", cfg.trials, "Trials per campaign for theorem random");
  app.add_option("--seed", cfg.seed, "Seed for sampled probes and campaigns");
  app.add_option("--probe-cap", cfg.probe_cap, "Cap on exhaustive probes per map");
  app.add_option("--endo-cap", cfg.endo_cap, "Cap on enumerated endomorphisms");
  app.add_option("--format", cfg.format, "Output format")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--out", cfg.out_path, "Write the report to FILE instead of stdout");

  std::optional<Outcome (*)(const CliConfig&)> action;
  auto verb = [&](CLI::App* parent, const char* name, const char* help, Outcome (*fn)(const CliConfig&),
                  bool takes_map) {
    auto* sub = parent->add_subcommand(name, help);
    sub->fallthrough();
    sub->add_option("poset", cfg.poset_path, "Poset file")->required();
    if (takes_map) sub->add_option("map", cfg.map_path, "Linear map JSON file")->required();
    sub->callback([&action, fn] { action = fn; });
  };

  auto* poset = app.add_subcommand("poset", "Poset utilities");
  poset->require_subcommand(1)->fallthrough();
  verb(poset, "check", "Parse a poset and print its sizes", &poset_check, false);

  auto* der = app.add_subcommand("der", "Derivation spaces");
  der->require_subcommand(1)->fallthrough();
  verb(der, "basis", "Basis of the derivation space", &der_basis, false);
  verb(der, "h1", "Dimension of derivations modulo inner derivations", &der_h1, false);
  verb(der, "decompose", "Split a map into inner part and cocycle part", &der_decompose, true);

  auto* locder = app.add_subcommand("locder", "Local derivations");
  locder->require_subcommand(1)->fallthrough();
  verb(locder, "verify", "Check whether a map is a local derivation", &locder_verify, true);
  verb(locder, "lemmas", "Run the necessary conditions for local derivations", &locder_lemmas, true);

  auto* theorem = app.add_subcommand("theorem", "Local derivation theorem harnesses");
  theorem->require_subcommand(1)->fallthrough();
  verb(theorem, "enumerate", "Enumerate every endomorphism over Zp", &theorem_enumerate, false);
  verb(theorem, "random", "Seeded random campaigns", &theorem_random, false);

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "fia: " << e.what() << "\n";
    return kExitError;
  }
  if (!action) {
    err << "fia: no command given\n";
    return kExitError;
  }

  try {
    Outcome result = (*action)(cfg);
    const std::string text = cfg.format == "json" ? io::dump(result.report) + "\n" : io::to_text(result.report);
    if (cfg.out_path.empty()) {
      out << text;
    } else {
      std::ofstream f(cfg.out_path, std::ios::binary);
      if (!f || !(f << text)) throw Error("cannot write '" + cfg.out_path + "'");
    }
    return result.code;
  } catch (const std::exception& e) {
    err << "fia: " << e.what() << "\n";
    return kExitError;
  }
}

}  // namespace fia::cli
