#include "plg/modular.hpp"
#include "plg_cli.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::ordered_json;
using plg::cli::run;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

ordered_json plg_json(std::vector<std::string> args) {
  args.push_back("--json");
  const Result r = invoke(args);
  EXPECT_EQ(r.code, 0) << r.err;
  return ordered_json::parse(r.out);
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("plg_test_" + name);
}

}  // namespace

TEST(Cli, CheckSl2rVerdict) {
  const ordered_json j = plg_json({"check", "sl2r"});
  EXPECT_EQ(j["model"], "sl2r");
  EXPECT_EQ(j["unimodular"], false);
  ASSERT_EQ(j["dual_modular_character"].size(), 4u);
  EXPECT_NEAR(j["dual_modular_character"][0].get<double>(), 2.0, 1e-12);
  for (const char* key : {"residuals", "f0_samples", "morse", "ground_truth", "printed_field", "seed"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j["printed_field"]["agrees"], false);
}

TEST(Cli, CheckSummaryMentionsPrintedComponents) {
  const Result r = invoke({"check", "sl2r"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("a12 a21"), std::string::npos) << r.out;
}

TEST(Cli, CheckUnimodularModels) {
  for (const char* id : {"lorenz", "eulertop", "liepoisson"}) {
    const ordered_json j = plg_json({"check", id});
    EXPECT_EQ(j["unimodular"], true) << id;
  }
  const ordered_json c = plg_json({"check", "eulertop", "--structure", "pi1"});
  EXPECT_EQ(c["structure"], "pi1");
  EXPECT_EQ(c["unimodular"], true);
}

TEST(Cli, CheckFromConfig) {
  const ordered_json j = plg_json({"check", "--config", std::string(PLG_SOURCE_DIR) + "/configs/sl2r.json"});
  EXPECT_EQ(j["model"], "sl2r-config");
  EXPECT_EQ(j["unimodular"], false);
}

TEST(Cli, MorseVerdicts) {
  EXPECT_EQ(plg_json({"morse", "sl2r", "--H", "contrast"})["verdict"], plg::kVerdictNoVolume);
  const ordered_json t = plg_json({"morse", "sl2r", "--H", "toda_svd"});
  EXPECT_EQ(t["morse"]["is_critical"], false);
  EXPECT_EQ(t["verdict"], plg::kVerdictNotApplicable);
  const ordered_json q = plg_json({"morse", "liepoisson", "--H", "quadratic:1,2,3"});
  EXPECT_EQ(q["morse"]["is_morse"], true);
  EXPECT_EQ(q["verdict"], plg::kVerdictVolume);
}

TEST(Cli, SimulatePreservedAndNot) {
  const ordered_json a = plg_json({"simulate", "eulertop", "--steps", "2000"});
  EXPECT_EQ(a["preserved"], true);
  EXPECT_LT(a["volume_drift"].get<double>(), 1e-9);
  const ordered_json b = plg_json({"simulate", "sl2r", "--H", "toda_svd", "--volume", "left"});
  EXPECT_EQ(b["preserved"], false);
  const Result s = invoke({"simulate", "sl2r", "--H", "toda_svd", "--volume", "left"});
  EXPECT_NE(s.out.find("NOT PRESERVED"), std::string::npos);
}

TEST(Cli, SimulateZeroSteps) {
  const ordered_json j = plg_json({"simulate", "lorenz", "--steps", "0"});
  EXPECT_EQ(j["volume_drift"].get<double>(), 0.0);
  EXPECT_EQ(j["energy_drift"].get<double>(), 0.0);
  EXPECT_EQ(j["t_final"].get<double>(), 0.0);
}

TEST(Cli, SimulateWritesCsvAndReport) {
  const auto csv = temp_path("traj.csv");
  const auto report = temp_path("report.json");
  const Result r = invoke({"simulate", "sl2r", "--steps", "100", "--stride", "10", "--out", csv.string(),
                        "--report", report.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  std::ifstream in(csv);
  std::string line;
  int rows = -1;
  while (std::getline(in, line)) ++rows;
  EXPECT_EQ(rows, 11);
  std::ifstream rj(report);
  const ordered_json j = ordered_json::parse(rj);
  EXPECT_EQ(j["steps"], 100);
  std::filesystem::remove(csv);
  std::filesystem::remove(report);
}

TEST(Cli, ExpressionHamiltonian) {
  const ordered_json j = plg_json({"simulate", "eulertop", "--H", "expr:x*y + z^2", "--steps", "500"});
  EXPECT_LT(j["energy_drift"].get<double>(), 1e-8);
}

TEST(Cli, RepeatedRunsAreByteIdentical) {
  const Result a = invoke({"check", "s3", "--json"});
  const Result b = invoke({"check", "s3", "--json"});
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, SeedFromEnvironment) {
  const ordered_json base = plg_json({"check", "lorenz", "--seed", "99"});
  ::setenv("PLG_SEED", "99", 1);
  const ordered_json env = plg_json({"check", "lorenz"});
  ::unsetenv("PLG_SEED");
  EXPECT_EQ(env["seed"], 99);
  EXPECT_EQ(base.dump(), env.dump());
  EXPECT_NE(plg_json({"check", "lorenz"})["seed"], 99);
}

TEST(Cli, ExitCodes) {
  EXPECT_EQ(invoke({"check", "nope"}).code, 2);
  EXPECT_EQ(invoke({"check", "sl2r", "--H", "nope"}).code, 2);
  EXPECT_EQ(invoke({"check", "sl2r", "--bogus"}).code, 2);
  EXPECT_EQ(invoke({"frobnicate"}).code, 2);
  EXPECT_EQ(invoke({"check", "--config", "/nonexistent.json"}).code, 2);
  EXPECT_EQ(invoke({"morse", "--config", std::string(PLG_SOURCE_DIR) + "/configs/sl2r.json", "--H", "nope"}).code, 2);
  EXPECT_EQ(invoke({"--help"}).code, 0);
  EXPECT_EQ(invoke({"simulate", "--help"}).code, 0);
}

TEST(Cli, DomainExit) {
  const Result r = invoke({"simulate", "lorenz", "--x0", "0.1,0.2,0.3,0.5", "--steps", "10000"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("domain"), std::string::npos) << r.err;
}

TEST(Cli, BadConfigReportsPosition) {
  const auto path = temp_path("bad.json");
  std::ofstream(path) << "{\n  \"coordinates\": [\"x\",\n}\n";
  const Result r = invoke({"check", "--config", path.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find(":3:"), std::string::npos) << r.err;
  std::filesystem::remove(path);
}
