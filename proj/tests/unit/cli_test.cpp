#include "gcyc/cli.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace gcyc::cli {
namespace {

const std::filesystem::path kData = GCYC_TEST_DATA;
const std::filesystem::path kScenarios = std::filesystem::path(GCYC_SOURCE_DIR) / "scenarios";

struct Captured {
  CommandResult result;
  std::string out;
  std::string err;
};

Captured run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Captured c;
  c.result = run_command(args, out, err);
  c.out = out.str();
  c.err = err.str();
  return c;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("gcyc_cli_test_" + name);
}

TEST(Cli, SolveExample32) {
  const auto c = run({"solve", "--scenario", "example32", "--x0", "1", "--tol", "1e-8", "--max-iter", "200"});
  ASSERT_EQ(c.result.exit_code, kPass) << c.err;
  const auto& r = c.result.report;
  EXPECT_EQ(r["command"], "solve");
  EXPECT_EQ(r["scenario_id"], "example32");
  EXPECT_EQ(r["seed"], 7);
  EXPECT_TRUE(r["pass"].get<bool>());
  EXPECT_EQ(r["details"]["outcome"], "converged");
  EXPECT_LE(std::abs(r["details"]["final_iterate"][0].get<double>()), 1e-8);
  EXPECT_EQ(r["details"]["a_priori_bound"], 68);
  EXPECT_TRUE(r["details"]["trace_checks"]["pass"].get<bool>());
  EXPECT_EQ(r["details"]["fixed_point"]["membership"], report::Json::parse("[1,2]"));
  EXPECT_TRUE(r["timings"].empty());
  EXPECT_EQ(c.out, c.result.rendered);
}

TEST(Cli, TopLevelLayout) {
  const auto c = run({"certify", "--samples", "500"});
  std::vector<std::string> keys;
  for (auto it = c.result.report.begin(); it != c.result.report.end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"command", "scenario_id", "seed", "pass", "details", "witnesses", "timings"}));
}

TEST(Cli, VerifyCandidates) {
  EXPECT_EQ(run({"verify", "--x0", "0"}).result.exit_code, kPass);
  const auto bad = run({"verify", "--x0", "0.5"});
  EXPECT_EQ(bad.result.exit_code, kCheckFailed);
  EXPECT_FALSE(bad.result.report["witnesses"].empty());
}

TEST(Cli, CheckAxiomsOnCorruptedG) {
  const auto c = run({"check-axioms", "--scenario", (kData / "corrupted-g.scenario").string(), "--samples", "2000"});
  EXPECT_EQ(c.result.exit_code, kCheckFailed);
  EXPECT_FALSE(c.result.report["pass"].get<bool>());
  EXPECT_FALSE(c.result.report["witnesses"].empty());
}

TEST(Cli, CheckCyclicPasses) {
  EXPECT_EQ(run({"check-cyclic", "--samples", "500"}).result.exit_code, kPass);
}

TEST(Cli, EstimateFindsConstants) {
  const auto c = run({"estimate", "--samples", "300", "--resolution", "6"});
  EXPECT_EQ(c.result.exit_code, kPass) << c.err;
  EXPECT_TRUE(c.result.report["details"]["feasible"].get<bool>());
}

TEST(Cli, ReportRunsEverything) {
  const auto c = run({"report", "--samples", "500", "--x0", "0.37"});
  EXPECT_EQ(c.result.exit_code, kPass) << c.err;
  for (const char* part : {"check_axioms", "check_cyclic", "check_control", "certify", "solve"})
    EXPECT_TRUE(c.result.report["details"].contains(part)) << part;
}

TEST(Cli, JsonIsByteIdenticalAcrossRuns) {
  const auto a = run({"certify", "--samples", "1000", "--seed", "42"});
  const auto b = run({"certify", "--samples", "1000", "--seed", "42", "--workers", "4"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TimingsOnlyWhenAsked) {
  const auto c = run({"verify", "--x0", "0", "--timings"});
  EXPECT_TRUE(c.result.report["timings"].contains("run_ms"));
}

TEST(Cli, TraceAndOutFiles) {
  const auto trace = temp_path("trace.csv");
  const auto out = temp_path("report.json");
  const auto c = run({"solve", "--x0", "-1", "--trace", trace.string(), "--out", out.string()});
  ASSERT_EQ(c.result.exit_code, kPass) << c.err;
  EXPECT_TRUE(c.out.empty());
  std::ifstream t(trace);
  std::string header;
  std::getline(t, header);
  EXPECT_EQ(header, "n,x_0,residual,subset_indices");
  std::ifstream o(out);
  std::stringstream buf;
  buf << o.rdbuf();
  EXPECT_EQ(buf.str(), c.result.rendered);
  std::filesystem::remove(trace);
  std::filesystem::remove(out);
}

TEST(Cli, CsvAndTextFormats) {
  const auto csv = run({"verify", "--x0", "0", "--format", "csv"});
  EXPECT_EQ(csv.out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(csv.out.find("details.defect,0"), std::string::npos) << csv.out;
  const auto text = run({"verify", "--x0", "0", "--format", "text"});
  EXPECT_NE(text.out.find("pass: true"), std::string::npos) << text.out;
  const auto solve_csv = run({"solve", "--x0", "1", "--format", "csv"});
  EXPECT_EQ(solve_csv.out.rfind("n,x_0,residual,subset_indices\n", 0), 0u);
}

TEST(Cli, ScenarioFile) {
  const auto c = run({"solve", "--scenario", (kScenarios / "example32.scenario").string(), "--x0", "0.37"});
  EXPECT_EQ(c.result.exit_code, kPass) << c.err;
  EXPECT_EQ(c.result.report["scenario_id"], "example32-file");
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).result.exit_code, kUsageError);
  EXPECT_EQ(run({"frobnicate"}).result.exit_code, kUsageError);
  EXPECT_EQ(run({"solve", "--format", "xml"}).result.exit_code, kUsageError);
  EXPECT_EQ(run({"solve", "--scenario", "no-such-thing"}).result.exit_code, kUsageError);
  EXPECT_EQ(run({"verify"}).result.exit_code, kUsageError);
  EXPECT_EQ(run({"solve", "--x0", "abc"}).result.exit_code, kUsageError);
  const auto bad = run({"certify", "--scenario", (kData / "invalid-gamma.scenario").string()});
  EXPECT_EQ(bad.result.exit_code, kUsageError);
  EXPECT_NE(bad.err.find("gamma"), std::string::npos);
}

TEST(Cli, RuntimeErrors) {
  EXPECT_EQ(run({"solve", "--x0", "5"}).result.exit_code, kRuntimeError);
}

TEST(Cli, HelpExitsCleanly) {
  const auto c = run({"--help"});
  EXPECT_EQ(c.result.exit_code, kPass);
  EXPECT_NE(c.err.find("certify"), std::string::npos);
}

}  // namespace
}  // namespace gcyc::cli
