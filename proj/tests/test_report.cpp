#include <gtest/gtest.h>

#include <cmath>
#include <limits>

#include "fhardy/report.hpp"
#include "fhardy/verifier.hpp"

using namespace fhardy;
using nlohmann::ordered_json;

namespace {

Scenario scenario() {
  return parse_scenario(R"({"theorem": "frac_hardy", "seed": 3, "group": {"name": "euclidean", "dim": 1},
    "exponents": {"p": 2, "s": 0.75}, "corpus": [{"id": "tent", "profile": "tent"}]})");
}

}  // namespace

TEST(Json, SeventeenDigitsAndStringInfinity) {
  ordered_json j;
  j["third"] = 1.0 / 3.0;
  j["inf"] = number(std::numeric_limits<double>::infinity());
  j["raw_inf"] = std::numeric_limits<double>::infinity();
  j["ninf"] = number(-std::numeric_limits<double>::infinity());
  j["nan"] = number(std::nan(""));
  j["int"] = 3;
  j["list"] = ordered_json::array({0.1, "a"});
  j["empty"] = ordered_json::object();
  EXPECT_EQ(write_json(j),
            "{\n"
            "  \"third\": 0.33333333333333331,\n"
            "  \"inf\": \"inf\",\n"
            "  \"raw_inf\": \"inf\",\n"
            "  \"ninf\": \"-inf\",\n"
            "  \"nan\": \"nan\",\n"
            "  \"int\": 3,\n"
            "  \"list\": [\n"
            "    0.10000000000000001,\n"
            "    \"a\"\n"
            "  ],\n"
            "  \"empty\": {}\n"
            "}\n");
}

TEST(Json, FloatsRoundTripExactly) {
  for (double x : {0.1, 1.0 / 3.0, 8.4089641525371928, 1e-300, 6.02214076e23}) {
    ordered_json j;
    j["x"] = x;
    EXPECT_EQ(ordered_json::parse(write_json(j))["x"].get<double>(), x);
  }
}

TEST(Report, SchemaAndFields) {
  const VerificationReport rep = verify(scenario());
  const ordered_json j = ordered_json::parse(write_json(report_json(rep, false)));
  EXPECT_EQ(j["schema_version"], kSchemaVersion);
  EXPECT_EQ(j["scenario"]["theorem"], "frac_hardy");
  EXPECT_EQ(j["gates"][0]["name"], "frac_gate");
  EXPECT_TRUE(j["constants"].contains("front_constant"));
  EXPECT_FALSE(j["constants"].contains("bracket"));
  const auto& r = j["results"][0];
  for (const char* k : {"id", "lhs", "rhs", "ratio", "margin", "verdict"}) EXPECT_TRUE(r.contains(k)) << k;
  EXPECT_EQ(r["verdict"], "pass");
  EXPECT_FALSE(j["meta"].contains("wall_time"));
  EXPECT_TRUE(ordered_json::parse(write_json(report_json(rep, true)))["meta"].contains("wall_time"));
}

TEST(Report, ScenarioEchoReparses) {
  const Scenario sc = scenario();
  const VerificationReport rep = verify(sc);
  const ordered_json j = ordered_json::parse(write_json(report_json(rep, false)));
  EXPECT_EQ(parse_scenario(j["scenario"].dump()), sc);
}

TEST(Report, ByteIdenticalAcrossRuns) {
  const Scenario sc = scenario();
  EXPECT_EQ(write_json(report_json(verify(sc), false)), write_json(report_json(verify(sc), false)));
}

TEST(Report, InfiniteFrontConstantIsString) {
  Scenario sc = scenario();
  sc.s = 0.3;
  const std::string text = write_json(report_json(verify(sc), false));
  EXPECT_NE(text.find("\"front_constant\": \"inf\""), std::string::npos);
  EXPECT_NE(text.find("\"verdict\": \"not_applicable\""), std::string::npos);
}

TEST(Csv, ResultsFlattening) {
  const std::string csv = results_csv(verify(scenario()));
  EXPECT_EQ(csv.substr(0, csv.find('\n')),
            "id,lhs,rhs,lhs_error,rhs_error,front_constant,ratio,normalized_ratio,margin,form,verdict,message");
  EXPECT_NE(csv.find("\ntent,"), std::string::npos);
  EXPECT_NE(csv.find(",multiplicative,pass,"), std::string::npos);
}

TEST(Csv, SweepSummary) {
  std::vector<SweepRow> rows(2);
  rows[0] = {0.5, 1.0, std::numeric_limits<double>::infinity(), std::nan(""), false, 0};
  rows[1] = {0.75, 0.8, 8.25, 0.03125, true, 0};
  EXPECT_EQ(sweep_csv("s", rows),
            "s,gate_value,front_constant,worst_ratio,status,exit_code\n"
            "0.5,1,inf,nan,not_applicable,0\n"
            "0.75,0.80000000000000004,8.25,0.03125,applicable,0\n");
}
