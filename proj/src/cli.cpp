#include "conglab/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "conglab/errors.hpp"
#include "conglab/examples.hpp"
#include "conglab/report.hpp"
#include "conglab/suites.hpp"

namespace conglab {

namespace {

struct Config {
  std::string format = "text";
  std::string caps_text;
  std::uint64_t seed = 1;
  unsigned jobs = 1;
  // analyze
  std::string domain, modulus, example, gens_file;
  // screen-perm, screen-subspace
  std::string input;
  bool all = false;
  std::string field, poly;
  // enumerate-modular
  std::size_t max_index = 8;
  // verify-suite
  std::vector<std::string> suites;
  std::string exhaustive;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot read '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Caps caps_of(const Config& c) {
  Caps caps = Caps::from_environment();
  if (!c.caps_text.empty()) caps = Caps::parse(c.caps_text, caps);
  return caps;
}

void emit(std::ostream& out, const Config& c, const Json& j) {
  if (c.format == "json") {
    out << j.dump(2) << "\n";
  } else {
    out << to_text(j);
  }
}

std::string entry_text(const nlohmann::json& x) {
  if (x.is_string()) return x.get<std::string>();
  if (x.is_number_integer()) return std::to_string(x.get<long long>());
  throw ParseError("matrix entries must be strings or integers");
}

std::vector<MatCode> read_generators(const std::string& path, const QuotientRing& r,
                                     const SL2& ops) {
  nlohmann::json j = read_json(path);
  if (!j.is_array()) throw ParseError(path + ": expected a list of [[a,b],[c,d]] matrices");
  std::vector<MatCode> gens;
  for (const auto& m : j) {
    if (!m.is_array() || m.size() != 2 || !m[0].is_array() || m[0].size() != 2 ||
        !m[1].is_array() || m[1].size() != 2) {
      throw ParseError(path + ": expected [[a,b],[c,d]], got " + m.dump());
    }
    gens.push_back(ops.make(r.parse(entry_text(m[0][0])), r.parse(entry_text(m[0][1])),
                            r.parse(entry_text(m[1][0])), r.parse(entry_text(m[1][1]))));
  }
  return gens;
}

int cmd_analyze(const Config& c, std::ostream& out) {
  Caps caps = caps_of(c);
  Frame f;
  Json facts;
  std::string name;
  if (!c.example.empty()) {
    if (!c.gens_file.empty()) throw PreconditionError("give either --example or --gens");
    auto opt = [](const std::string& s) {
      return s.empty() ? std::nullopt : std::optional<std::string>(s);
    };
    Example e = build_example(c.example, caps, opt(c.domain), opt(c.modulus));
    f = e.frame;
    facts = e.facts;
    name = e.name;
  } else {
    if (c.domain.empty() || c.modulus.empty()) {
      throw PreconditionError("--domain and --modulus are required without --example");
    }
    Domain d = Domain::parse(c.domain);
    ContextPtr ctx = make_context(d, d.parse_ideal(c.modulus), caps);
    SL2 ops(ctx->ring);
    std::vector<MatCode> gens;
    if (!c.gens_file.empty()) gens = read_generators(c.gens_file, *ctx->ring, ops);
    f = frame_subgroup(ctx, FinMatGroup::closure(ctx->ring, gens, caps.group));
  }
  AnalysisReport rep = analyze(f);
  Json body = to_json(f, rep);
  Json j;
  if (!name.empty()) j["example"] = name;
  for (const auto& [k, v] : body.items()) j[k] = v;
  if (!name.empty()) j["facts"] = facts;
  emit(out, c, j);
  return rep.has_violation() ? kExitInternal : kExitOk;
}

int cmd_screen_perm(const Config& c, std::ostream& out) {
  PermRep p = parse_permrep(read_json(c.input));
  PermScreen s = screen_perm(p, c.all, caps_of(c));
  Json body = to_json(s);
  Json j;
  j["index"] = p.degree();
  for (const auto& [k, v] : body.items()) j[k] = v;
  emit(out, c, j);
  return kExitOk;
}

int cmd_screen_subspace(const Config& c, std::ostream& out) {
  std::optional<TranslationSubspace> q;
  if (!c.input.empty()) {
    q = parse_subspace(read_json(c.input));
  } else {
    if (c.field.empty() || c.poly.empty()) {
      throw PreconditionError("give --input, or --field and --f for the standard subspace");
    }
    nlohmann::json desc{{"k", c.field}, {"f", c.poly}, {"basis", nlohmann::json::array()}};
    TranslationSubspace base = parse_subspace(desc);
    q = theorem_4_12_subspace(base.domain(), base.modulus());
  }
  emit(out, c, to_json(*q, screen_translation_subspace(*q, caps_of(c))));
  return kExitOk;
}

int cmd_enumerate(const Config& c, std::ostream& out) {
  Caps caps = caps_of(c);
  Json reps = Json::array();
  for (const PermRep& p : low_index_enumerate(c.max_index, caps)) {
    PermScreen s = screen_perm(p, true, caps);
    Json j = to_json(p);
    j["cusp_split"] = s.split.widths;
    j["level"] = s.split.level;
    j["conclusion"] = s.conclusion;
    reps.push_back(j);
  }
  emit(out, c, Json{{"max_index", c.max_index}, {"count", reps.size()}, {"reps", reps}});
  return kExitOk;
}

int cmd_verify(const Config& c, std::ostream& out) {
  SuiteOptions o;
  o.caps = caps_of(c);
  o.seed = c.seed;
  o.jobs = c.jobs;
  if (!c.exhaustive.empty()) {
    parse_family(c.exhaustive);
    o.exhaustive = c.exhaustive;
  }
  std::vector<std::string> names = c.suites.empty() ? suite_names() : c.suites;
  Json rows = Json::array();
  bool ok = true;
  for (const SuiteResult& r : run_suites(names, o)) {
    ok = ok && r.ok();
    rows.push_back(Json{{"suite", r.name},
                        {"checked", r.checked},
                        {"passed", r.passed},
                        {"failures", r.failures}});
  }
  emit(out, c, Json{{"seed", c.seed}, {"suites", rows}, {"ok", ok}});
  return ok ? kExitOk : kExitSuiteFailure;
}

int exit_code(const Error& e) {
  std::string k = e.kind();
  if (k == "parse") return kExitParse;
  if (k == "cap") return kExitCap;
  if (k == "io") return kExitIo;
  if (k == "precondition") return kExitPrecondition;
  return kExitInternal;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config c;
  CLI::App app{"Congruence subgroup invariants over Dedekind domains"};
  app.require_subcommand(1);
  auto common = [&](CLI::App* s) {
    s->add_option("--format", c.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    s->add_option("--caps", c.caps_text, "ring=N,group=N,factor=N,index=N");
  };
  CLI::App* analyze_cmd = app.add_subcommand("analyze", "analyze a framed congruence subgroup");
  common(analyze_cmd);
  analyze_cmd->add_option("--domain", c.domain, "Z | \"Fq[t] q=N [mod=...]\" | \"Q(sqrt(m))\"");
  analyze_cmd->add_option("--modulus", c.modulus, "ideal, e.g. \"(t)\" or \"[[4,0],[0,4]]\"");
  analyze_cmd->add_option("--example", c.example, "ex2_13 ex3_2 ex3_5 ex4_9 ex4_10 ex5_4");
  analyze_cmd->add_option("--gens", c.gens_file, "JSON list of [[a,b],[c,d]] generators");

  CLI::App* perm_cmd = app.add_subcommand("screen-perm", "screen a modular-group subgroup");
  common(perm_cmd);
  perm_cmd->add_option("--input,input", c.input, "permrep JSON {n, S, T}")->required();
  perm_cmd->add_flag("--all", c.all, "run every screen");

  CLI::App* sub_cmd = app.add_subcommand("screen-subspace", "screen a translation subspace");
  common(sub_cmd);
  sub_cmd->add_option("--input,input", c.input, "subspace JSON {k, f, basis}");
  sub_cmd->add_option("--field", c.field, "k for the standard subspace, e.g. F2");
  sub_cmd->add_option("--f", c.poly, "f for the standard subspace");

  CLI::App* enum_cmd = app.add_subcommand("enumerate-modular", "low-index subgroups of PSL2(Z)");
  common(enum_cmd);
  enum_cmd->add_option("--max-index", c.max_index, "largest index");

  CLI::App* verify_cmd = app.add_subcommand("verify-suite", "run the property suites");
  common(verify_cmd);
  verify_cmd->add_option("--suite", c.suites, "suite name (repeatable)");
  verify_cmd->add_option("--exhaustive", c.exhaustive, "family such as Z/12");
  verify_cmd->add_option("--seed", c.seed, "seed for sampled checks");
  verify_cmd->add_option("--jobs", c.jobs, "worker threads")->check(CLI::PositiveNumber);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "error: parse: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    if (*analyze_cmd) return cmd_analyze(c, out);
    if (*perm_cmd) return cmd_screen_perm(c, out);
    if (*sub_cmd) return cmd_screen_subspace(c, out);
    if (*enum_cmd) return cmd_enumerate(c, out);
    if (*verify_cmd) return cmd_verify(c, out);
  } catch (const Error& e) {
    err << "error: " << e.kind() << ": " << e.what() << "\n";
    return exit_code(e);
  } catch (const std::exception& e) {
    err << "error: internal: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitParse;
}

}  // namespace conglab
