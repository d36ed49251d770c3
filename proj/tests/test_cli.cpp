#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "conglab/cli.hpp"

using namespace conglab;

namespace {

struct CliRun {
  int code;
  std::string out, err;
};

CliRun run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = run_cli(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& body) {
  auto path = std::filesystem::temp_directory_path() / ("conglab_test_" + name);
  std::ofstream(path) << body;
  return path.string();
}

nlohmann::json json_of(const CliRun& r) { return nlohmann::json::parse(r.out); }

void expect_one_line_error(const CliRun& r, const std::string& kind) {
  EXPECT_TRUE(r.out.empty());
  EXPECT_EQ(r.err.rfind("error: " + kind + ": ", 0), 0u) << r.err;
  EXPECT_EQ(std::count(r.err.begin(), r.err.end(), '\n'), 1) << r.err;
}

}  // namespace

TEST(Cli, AnalyzeExampleJson) {
  CliRun r = run({"analyze", "--example", "ex2_13", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  nlohmann::json j = json_of(r);
  EXPECT_EQ(j["example"], "ex2_13");
  EXPECT_EQ(j["index"], 4);
  EXPECT_EQ(j["cusps"].size(), 2u);
  for (const char* key : {"domain", "modulus", "amplitudes", "c_min", "c_max", "level",
                          "quasi_level", "order_ideal", "condition_L", "theorems"}) {
    EXPECT_TRUE(j.contains(key)) << key;
  }
  for (const char* key : {"A", "B", "C", "cusp_split", "unit_square"}) {
    EXPECT_TRUE(j["theorems"].contains(key)) << key;
  }
  EXPECT_TRUE(j["cusps"][0].contains("quasi_amplitude"));
  EXPECT_TRUE(j["cusps"][0]["quasi_amplitude"].contains("index_in_ring"));
}

TEST(Cli, AnalyzeGeneratorsFile) {
  std::string gens = write_temp("gens.json", R"([[[1,1],[0,1]], [["2","0"],["0","2"]]])");
  CliRun r = run({"analyze", "--domain", "Z", "--modulus", "(3)", "--gens", gens, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_EQ(json_of(r)["index"], 4);
  CliRun text = run({"analyze", "--domain", "Z", "--modulus", "(3)", "--gens", gens});
  EXPECT_EQ(text.code, kExitOk);
  EXPECT_NE(text.out.find("index: 4"), std::string::npos) << text.out;
}

TEST(Cli, ScreenPerm) {
  std::string p = write_temp("perm.json", R"({"n":3,"S":[1,0,2],"T":[0,2,1]})");
  CliRun r = run({"screen-perm", p, "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  nlohmann::json j = json_of(r);
  EXPECT_EQ(j["cusp_split"], (nlohmann::json{1, 2}));
  EXPECT_EQ(j["conclusion"], "congruence, level 2");
}

TEST(Cli, ScreenSubspace) {
  CliRun r = run({"screen-subspace", "--field", "F2", "--f", "t^3+t+1", "--format", "json"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  nlohmann::json j = json_of(r);
  EXPECT_EQ(j["ql_codim"], 1);
  EXPECT_EQ(j["congruence_possible"], false);
  EXPECT_FALSE(j["certificate"].is_null());
}

TEST(Cli, EnumerateIsDeterministic) {
  CliRun a = run({"enumerate-modular", "--max-index", "6", "--format", "json"});
  CliRun b = run({"enumerate-modular", "--max-index", "6", "--format", "json"});
  ASSERT_EQ(a.code, kExitOk);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json_of(a)["count"], 1 + 1 + 2 + 2 + 1 + 8);
}

TEST(Cli, VerifySuiteSameSeedSameBytes) {
  std::vector<std::string> args{"verify-suite", "--suite", "lemma2_6", "--suite", "lemma4_5",
                                "--seed", "7", "--format", "json"};
  CliRun a = run(args);
  CliRun b = run(args);
  ASSERT_EQ(a.code, kExitOk) << a.out;
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(json_of(a)["ok"], true);
  args.push_back("--jobs");
  args.push_back("2");
  EXPECT_EQ(run(args).out, a.out);
}

TEST(Cli, ErrorsAreOneLineWithExitCodes) {
  CliRun bad_domain = run({"analyze", "--domain", "R[x]", "--modulus", "(x)"});
  EXPECT_EQ(bad_domain.code, kExitParse);
  expect_one_line_error(bad_domain, "parse");

  CliRun cap = run({"analyze", "--domain", "Z", "--modulus", "(1000)", "--caps", "ring=100"});
  EXPECT_EQ(cap.code, kExitCap);
  expect_one_line_error(cap, "cap");

  CliRun io = run({"screen-perm", "/nonexistent/perm.json"});
  EXPECT_EQ(io.code, kExitIo);
  expect_one_line_error(io, "io");

  std::string rel = write_temp("bad_perm.json", R"({"n":2,"S":[0,1],"T":[0,1]})");
  CliRun intransitive = run({"screen-perm", rel});
  EXPECT_EQ(intransitive.code, kExitParse);
  expect_one_line_error(intransitive, "parse");

  CliRun pre = run({"analyze", "--example", "ex3_2", "--domain", "Z"});
  EXPECT_EQ(pre.code, kExitPrecondition);
  expect_one_line_error(pre, "precondition");

  CliRun unknown = run({"frobnicate"});
  EXPECT_EQ(unknown.code, kExitParse);

  CliRun suite = run({"verify-suite", "--suite", "nope"});
  EXPECT_NE(suite.code, kExitOk);
}
