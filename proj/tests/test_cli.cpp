#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fhardy/cli.hpp"
#include "fhardy/error.hpp"

using namespace fhardy;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kRoot = FHARDY_SOURCE_DIR;

std::string scenario(const std::string& name) { return kRoot + "/scenarios/" + name; }

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fhardy");
  std::vector<char*> argv;
  for (auto& a : args) argv.push_back(a.data());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

fs::path scratch(const std::string& name) {
  const fs::path d = fs::temp_directory_path() / ("fhardy_test_" + name);
  fs::remove_all(d);
  return d;
}

}  // namespace

TEST(Cli, VerifyExitCodes) {
  EXPECT_EQ(cli({"verify", "--scenario", scenario("frac_hardy_r1.json")}).code, 0);
  const CliRun p1 = cli({"verify", "--scenario", scenario("p_equals_one.json")});
  EXPECT_EQ(p1.code, 1);
  EXPECT_NE(p1.err.find("p>1 required"), std::string::npos);
  EXPECT_EQ(cli({"verify", "--scenario", scenario("tampered.json")}).code, 2);
  EXPECT_EQ(cli({"verify", "--scenario", scenario("missing.json")}).code, 1);
  EXPECT_EQ(cli({"frobnicate"}).code, 1);
  EXPECT_EQ(cli({}).code, 1);
}

TEST(Cli, VerifyWritesReportToDirectory) {
  const fs::path dir = scratch("verify");
  ASSERT_EQ(cli({"verify", "--scenario", scenario("frac_hardy_r1.json"), "--out", dir.string(), "--format", "csv"}).code,
            0);
  const std::string csv = slurp(dir / "report.csv");
  EXPECT_EQ(csv.rfind("id,lhs,rhs", 0), 0u);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 4);
  fs::remove_all(dir);
}

TEST(Cli, ConstantsFracExample) {
  const CliRun r = cli({"constants", "--scenario", scenario("frac_hardy_r1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["d1"].get<double>(), 0.4, 1e-12);
  EXPECT_NEAR(j["gate_value"].get<double>(), 0.8, 1e-12);
  EXPECT_NEAR(j["front_constant"].get<double>(), 8.4090, 1e-4);
}

TEST(Cli, ConstantsPowerWeights) {
  const CliRun r = cli({"constants", "--scenario", scenario("power_weights_r1.json")});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_NEAR(j["d1"].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["bracket"][0].get<double>(), 2.0, 1e-12);
  EXPECT_NEAR(j["bracket"][1].get<double>(), 4.0, 1e-12);
}

TEST(Cli, SweepRowsAndGateFailure) {
  const CliRun r = cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "s", "--grid", "0.3,0.75"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string header, low, high;
  std::getline(in, header);
  std::getline(in, low);
  std::getline(in, high);
  EXPECT_EQ(header, "s,gate_value,front_constant,worst_ratio,status,exit_code");
  EXPECT_NE(low.find(",inf,nan,not_applicable,0"), std::string::npos) << low;
  EXPECT_EQ(high.rfind("0.75,0.8", 0), 0u) << high;
  EXPECT_NE(high.find(",applicable,0"), std::string::npos) << high;
}

TEST(Cli, SweepIsReproducible) {
  const std::vector<std::string> args{"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "s",
                                      "--grid", "0.6:0.9:3"};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(std::count(a.out.begin(), a.out.end(), '\n'), 4);
}

TEST(Cli, SweepWritesPointsAndSummary) {
  const fs::path dir = scratch("sweep");
  ASSERT_EQ(cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "s", "--grid", "0.7,0.8", "--out",
                 dir.string()})
                .code,
            0);
  EXPECT_TRUE(fs::exists(dir / "point_0.json"));
  EXPECT_TRUE(fs::exists(dir / "point_1.json"));
  EXPECT_TRUE(fs::exists(dir / "summary.csv"));
  fs::remove_all(dir);
}

TEST(Cli, SweepRejectsEmptyGridAndBadAxis) {
  const CliRun r = cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "s", "--grid", ","});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("empty sweep grid"), std::string::npos);
  EXPECT_EQ(cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "t", "--grid", "1"}).code, 1);
  EXPECT_EQ(cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "s", "--grid", "a,b"}).code, 1);
}

TEST(Cli, SweepInvalidPointIsAnErrorRow) {
  const CliRun r = cli({"sweep", "--scenario", scenario("frac_hardy_r1.json"), "--axis", "p", "--grid", "1,2"});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.err.find("error at p=1"), std::string::npos) << r.err;
  EXPECT_NE(r.out.find("\n2,"), std::string::npos);
}

TEST(Cli, ParseGrid) {
  EXPECT_EQ(parse_grid("1,2.5"), (std::vector<double>{1.0, 2.5}));
  EXPECT_EQ(parse_grid("0:1:3"), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(parse_grid("2:3:1"), (std::vector<double>{2.0}));
  EXPECT_TRUE(parse_grid(",").empty());
  EXPECT_THROW(parse_grid("0:1"), InputError);
  EXPECT_THROW(parse_grid("0:1:2.5"), InputError);
  EXPECT_THROW(parse_grid("1,inf"), InputError);
}

TEST(Cli, SearchReportsBestMember) {
  const CliRun r = cli({"search", "--scenario", scenario("radial_hardy_r2.json"), "--budget", "60"});
  ASSERT_EQ(r.code, 0) << r.err;
  const json j = json::parse(r.out);
  EXPECT_EQ(j["search"]["family"], "truncated_power");
  EXPECT_LE(j["search"]["best_ratio"].get<double>(), 3.0 * (1 + 1e-6));
  EXPECT_EQ(j["verification"]["verdict"], "pass");
}

TEST(Cli, ReportJsonIsByteIdenticalAcrossRuns) {
  const std::vector<std::string> args{"verify", "--scenario", scenario("radial_hardy_r2.json")};
  const CliRun a = cli(args);
  const CliRun b = cli(args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
}

TEST(Cli, TimingOnlyWhenRequested) {
  EXPECT_EQ(cli({"verify", "--scenario", scenario("frac_hardy_r1.json")}).out.find("wall_time"), std::string::npos);
  EXPECT_NE(cli({"verify", "--scenario", scenario("frac_hardy_r1.json"), "--timing"}).out.find("wall_time"),
            std::string::npos);
}

// Golden reports under tests/golden; regenerate with FHARDY_UPDATE_GOLDEN=1.
class Golden : public ::testing::TestWithParam<std::string> {};

TEST_P(Golden, MatchesStoredReport) {
  const std::string name = GetParam();
  const CliRun r = cli({"verify", "--scenario", scenario(name + ".json")});
  const fs::path golden = fs::path(kRoot) / "tests" / "golden" / (name + ".report.json");
  if (std::getenv("FHARDY_UPDATE_GOLDEN")) {
    fs::create_directories(golden.parent_path());
    std::ofstream(golden, std::ios::binary) << r.out;
  }
  ASSERT_TRUE(fs::exists(golden)) << golden;
  EXPECT_EQ(r.out, slurp(golden));
}

INSTANTIATE_TEST_SUITE_P(Scenarios, Golden,
                         ::testing::Values("frac_hardy_r1", "power_weights_r1", "radial_hardy_r2", "tampered"));
