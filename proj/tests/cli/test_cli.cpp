#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cli.hpp"

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "cslab");
  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation r;
  r.code = cslab::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

nlohmann::json parse(const Invocation& r) { return nlohmann::json::parse(r.out); }

}  // namespace

TEST(Cli, LcsExample) {
  const Invocation r = invoke({"lcs", "--a", "1000", "--b", "0100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["lcs"], 3);
  EXPECT_EQ(j["command"], "lcs");
  EXPECT_EQ(j["config"]["a"], "1000");
  EXPECT_EQ(parse(invoke({"lcs", "--a", "IOOO", "--b", "OIOO", "--engine", "dp"}))["lcs"], 3);
}

TEST(Cli, LcsEmptyString) {
  const Invocation r = invoke({"lcs", "--a", "", "--b", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["lcs"], 0);
}

TEST(Cli, MalformedStringExitsWithInputError) {
  const Invocation r = invoke({"lcs", "--a", "10Z1", "--b", "0"});
  EXPECT_EQ(r.code, 2);
  EXPECT_TRUE(r.out.empty());
  EXPECT_NE(r.err.find("invalid"), std::string::npos);
}

TEST(Cli, UnknownOptionsAndValuesExitTwo) {
  EXPECT_EQ(invoke({"lcs", "--a", "1"}).code, 2);
  EXPECT_EQ(invoke({"fit", "--mode", "guess"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({}).code, 2);
  EXPECT_EQ(invoke({"lcs", "--a", "1", "--b", "1", "--format", "xml"}).code, 2);
  EXPECT_EQ(invoke({"gamma", "--n", "0", "--trials", "1"}).code, 2);
  EXPECT_EQ(invoke({"simulate-b", "--L", "7", "--steps", "10"}).code, 2);
  EXPECT_EQ(invoke({"profile", "--n", "10"}).code, 2);
  EXPECT_EQ(invoke({"verify", "--suite", "nope"}).code, 2);
}

TEST(Cli, HelpExitsZero) {
  const Invocation r = invoke({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("simulate-b"), std::string::npos);
}

TEST(Cli, FitModes) {
  const auto cf = parse(invoke({"fit", "--mode", "closed-form"}));
  EXPECT_NEAR(cf["gamma"].get<double>(), 0.814050, 5e-7);
  const auto as = parse(invoke({"fit", "--mode", "arratia-steele"}));
  EXPECT_NEAR(as["gamma"].get<double>(), 0.828427, 5e-7);
  EXPECT_TRUE(as["exceeds_upper_bound"].get<bool>());
  const Invocation solved = invoke({"fit"});
  ASSERT_EQ(solved.code, 0) << solved.err;
  const auto s = parse(solved);
  EXPECT_LT(std::abs(s["gamma"].get<double>() - cf["gamma"].get<double>()), 2e-6);
  EXPECT_EQ(s["residuals"].size(), 5U);
}

TEST(Cli, GammaIsDeterministic) {
  const std::vector<std::string> args{"gamma", "--n", "2000", "--trials", "20", "--seed", "7"};
  const Invocation a = invoke(args), b = invoke(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto j = parse(a);
  EXPECT_EQ(j["config"]["seed"], 7);
  EXPECT_EQ(j["estimates"][0]["n"], 2000);
  std::vector<std::string> threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  auto t = parse(invoke(threaded));
  EXPECT_EQ(t["estimates"], j["estimates"]);
}

TEST(Cli, SeedFromEnvironment) {
  ::setenv("CSLAB_SEED", "7", 1);
  const auto env = parse(invoke({"gamma", "--n", "500", "--trials", "4"}));
  ::unsetenv("CSLAB_SEED");
  const auto flag = parse(invoke({"gamma", "--n", "500", "--trials", "4", "--seed", "7"}));
  EXPECT_EQ(env["config"]["seed"], 7);
  EXPECT_EQ(env["estimates"], flag["estimates"]);
  EXPECT_EQ(parse(invoke({"gamma", "--n", "500", "--trials", "4"}))["config"]["seed"], 0);
}

TEST(Cli, GammaTableWithExactColumn) {
  const auto j = parse(invoke({"gamma", "--n", "1,2,3", "--trials", "20000", "--exact"}));
  ASSERT_EQ(j["estimates"].size(), 3U);
  EXPECT_EQ(j["estimates"][0]["exact_mean"], 0.5);
  EXPECT_EQ(j["estimates"][1]["exact_mean"], 0.5625);
  for (const auto& row : j["estimates"]) EXPECT_LT(std::abs(row["exact_z"].get<double>()), 4.0);
}

TEST(Cli, SimulateBHalfRate) {
  const Invocation r = invoke({"simulate-b", "--p2", "0.5", "--L", "2000", "--steps", "2000", "--seed", "3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_NEAR(j["even_density"].get<double>(), 0.414213, 0.01 * 0.414213);
  EXPECT_NEAR(j["fbar"].get<double>(), 0.828427, 0.01 * 0.828427);
  EXPECT_EQ(j["config"]["burn_in"], 1000);
}

TEST(Cli, PseudoRatesDoNotChangeSimulateB) {
  auto a = parse(invoke({"simulate-b", "--L", "500", "--steps", "300", "--p0", "0.1", "--p1", "0.9"}));
  auto b = parse(invoke({"simulate-b", "--L", "500", "--steps", "300"}));
  EXPECT_EQ(a["even_density"], b["even_density"]);
  EXPECT_EQ(a["total_swaps"], b["total_swaps"]);
}

TEST(Cli, VerifyExact) {
  const Invocation r = invoke({"verify", "--suite", "exact"});
  EXPECT_EQ(r.code, 0) << r.out;
  EXPECT_TRUE(parse(r)["passed"].get<bool>());
}

TEST(Cli, CsvAndTextFormats) {
  const Invocation csv = invoke({"lcs", "--a", "1000", "--b", "0100", "--format", "csv"});
  EXPECT_EQ(csv.out, "a_length,b_length,engine,lcs\n4,4,bitparallel,3\n");
  const Invocation text = invoke({"lcs", "--a", "1000", "--b", "0100", "--format", "text"});
  EXPECT_NE(text.out.find("lcs: 3\n"), std::string::npos);
  const Invocation prof = invoke({"profile", "--n", "1000", "--ensemble", "2", "--bins", "5", "--format", "csv"});
  ASSERT_EQ(prof.code, 0) << prof.err;
  EXPECT_EQ(prof.out.substr(0, 18), "x,y_mean,y_stderr\n");
  EXPECT_EQ(std::count(prof.out.begin(), prof.out.end(), '\n'), 6);
}

TEST(Cli, FloatsUseSeventeenDigits) {
  const Invocation r = invoke({"fit", "--mode", "arratia-steele"});
  EXPECT_NE(r.out.find("\"gamma\": 0.82842712474619029"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"p0\": 0.5,"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const std::string path = ::testing::TempDir() + "cslab_cli_output.json";
  const Invocation r = invoke({"lcs", "--a", "1", "--b", "1", "--output", path});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = nlohmann::json::parse(in);
  EXPECT_EQ(j["lcs"], 1);
  EXPECT_EQ(j["config"]["output"], path);
}
