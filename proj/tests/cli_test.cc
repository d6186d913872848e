// Copyright 2026 The EGP Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "serialization.h"
#include "testing/fixtures.h"

namespace egp::cli {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

struct CliRun {
  int code;
  std::string out;
  std::string err;
};

CliRun Egp(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = RunCli(args, out, err);
  return {code, out.str(), err.str()};
}

nlohmann::json ReadJson(const std::string& path) {
  return nlohmann::json::parse(egp::testing::ReadFile(path));
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = egp::testing::MakeTempDir("cli_test");
    toy_ = dir_ + "/toy.txt";
    egp::testing::WriteFile(toy_, egp::testing::kToyEdgeList);
    Engine engine(31);
    random_ = dir_ + "/random.txt";
    egp::testing::WriteFile(
        random_, FormatEdgeList(egp::testing::RandomGraph(300, 0.01, engine)));
  }
  std::string dir_, toy_, random_;
};

TEST_F(CliTest, ToyPartitionWithForcedEgos) {
  const std::string out = dir_ + "/toy_out";
  CliRun r = Egp({"partition", "--graph", toy_, "--algo", "linear", "--egos",
               "1,2", "--ego-arms", "1,0", "--out", out});
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json j = ReadJson(out + "/partition.json");
  EXPECT_EQ(j["n"], 5);
  EXPECT_EQ(j["m"], 4);
  EXPECT_EQ(j["n1"], 1);
  EXPECT_EQ(j["n0"], 1);
  EXPECT_EQ(j["algorithm"], "linear");
  EXPECT_EQ(j["egos"], nlohmann::json({1, 2}));
  auto bits = DecodeTreatment(j["treatment"], 5);
  ASSERT_TRUE(bits.ok());
  // Internal 0 and 3 are external 1 and 4.
  EXPECT_THAT(*bits, ElementsAre(true, false, false, true, false));
  EXPECT_EQ(j["sigma_summary"]["r"], 0.5);

  CliRun report = Egp({"sigma-report", "--graph", toy_, "--out", out});
  ASSERT_EQ(report.code, 0) << report.err;
  EXPECT_EQ(egp::testing::ReadFile(out + "/sigma.csv"),
            "ego_external_id,arm,sigma\n1,T,0.5\n2,C,0\n");
  const std::string svg = egp::testing::ReadFile(out + "/sigma.svg");
  EXPECT_THAT(svg, HasSubstr("<svg"));
  EXPECT_THAT(svg, HasSubstr("</svg>"));
}

TEST_F(CliTest, PartitionJsonRoundTrips) {
  for (const char* algo : {"linear", "convex", "snc"}) {
    const std::string out = dir_ + "/rt_" + algo;
    CliRun r = Egp({"partition", "--graph", random_, "--algo", algo, "--theta",
                 "0.5", "--q", "0.1", "--seed", "4", "--out", out});
    ASSERT_EQ(r.code, 0) << r.err;
    auto g = LoadGraph(random_, GraphFormat::kEdgeList);
    ASSERT_TRUE(g.ok());
    auto p = PartitionFromJson(ReadJson(out + "/partition.json"), *g);
    ASSERT_TRUE(p.ok()) << p.status();
    Design design{*ParseAlgorithm(algo), 0.1, 0.5};
    auto expected = RunDesign(*g, design, ReplicationSeed(4, 0));
    ASSERT_TRUE(expected.ok());
    expected->meta.seed = 4;
    EXPECT_EQ(*p, *expected);
  }
}

TEST_F(CliTest, RepeatedRunsAreByteIdentical) {
  const std::vector<std::string> common = {"--graph", random_, "--q", "0.05",
                                           "--seed", "9", "--reps", "20"};
  std::string first_partition, first_report;
  for (int run = 0; run < 2; ++run) {
    const std::string out = dir_ + "/rep" + std::to_string(run);
    std::vector<std::string> args = {"partition", "--out", out};
    args.insert(args.end(), common.begin(), common.end());
    ASSERT_EQ(Egp(args).code, 0);
    args[0] = "simulate";
    ASSERT_EQ(Egp(args).code, 0);
    const std::string part = egp::testing::ReadFile(out + "/partition.json");
    const std::string rep = egp::testing::ReadFile(out + "/report.json");
    if (run == 0) {
      first_partition = part;
      first_report = rep;
    } else {
      EXPECT_EQ(part, first_partition);
      EXPECT_EQ(rep, first_report);
    }
  }
}

TEST_F(CliTest, TooManyEgosIsAnError) {
  const std::string path = dir_ + "/isolated.mtx";
  egp::testing::WriteFile(path, "%%MatrixMarket matrix coordinate pattern "
                                "symmetric\n5 5 3\n3 1\n3 2\n4 1\n");
  CliRun r = Egp({"partition", "--graph", path, "--format", "mtx", "--q", "0.99",
               "--out", dir_ + "/q99"});
  EXPECT_EQ(r.code, 1);
  EXPECT_THAT(r.err, HasSubstr("error"));
}

TEST_F(CliTest, SimulateSingleReplicationMatchesEmittedPartition) {
  const std::string out = dir_ + "/sim1";
  const std::vector<std::string> common = {
      "--graph", random_, "--q", "0.05", "--seed", "17", "--model",
      "linear:1,1,2", "--noise-sd", "0", "--reps", "1", "--out", out};
  std::vector<std::string> args = {"partition"};
  args.insert(args.end(), common.begin(), common.end());
  ASSERT_EQ(Egp(args).code, 0);
  args[0] = "simulate";
  CliRun r = Egp(args);
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json part = ReadJson(out + "/partition.json");
  nlohmann::json report = ReadJson(out + "/report.json");
  const double r_stat = part["sigma_summary"]["r"];
  EXPECT_NEAR(report["mean_bias"].get<double>(), 2.0 * (r_stat - 1.0), 1e-12);
  EXPECT_EQ(report["reps"], 1);
  EXPECT_TRUE(report["bias_sd"].is_null());
  EXPECT_EQ(report["bias_diagnostic"]["kind"], "analytic_linear");
  EXPECT_FALSE(report.contains("wall_time"));
  EXPECT_TRUE(ReadJson(out + "/timing.json").contains("wall_time_seconds"));
}

TEST_F(CliTest, ConfigFileAndFlagOverrides) {
  const std::string config = dir_ + "/run.json";
  egp::testing::WriteFile(config, R"({
    "graph": "random.txt", "algo": "convex", "theta": 0.2, "q": 0.05,
    "model": {"kind": "convex_exp", "params": [2, 1, 3], "noise_sd": 1},
    "reps": 30, "seed": 3, "out": "cfg_out", "rescale_ci": true,
    "per_rep_csv": true
  })");
  CliRun r = Egp({"simulate", "--config", config, "--reps", "25"});
  ASSERT_EQ(r.code, 0) << r.err;
  nlohmann::json report = ReadJson(dir_ + "/cfg_out/report.json");
  EXPECT_EQ(report["reps"], 25);
  EXPECT_EQ(report["config"]["algo"], "convex");
  EXPECT_EQ(report["bias_diagnostic"]["kind"], "approx_additive");
  ASSERT_TRUE(report.contains("rescaled"));
  const double w = report["rescaled"]["ci_width"];
  EXPECT_NEAR(report["rescaled"]["mean_bias"]["value"].get<double>(),
              report["mean_bias"].get<double>() / w, 1e-12);
  EXPECT_THAT(report["rescaled"]["mean_bias"]["display"].get<std::string>(),
              HasSubstr("% ± 0.5%"));
  const std::string csv = egp::testing::ReadFile(dir_ + "/cfg_out/per_rep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 26);
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(Egp({}).code, 2);
  EXPECT_EQ(Egp({"bogus"}).code, 2);
  EXPECT_EQ(Egp({"partition", "--q", "abc"}).code, 2);
  EXPECT_EQ(Egp({"partition", "--help"}).code, 0);
  EXPECT_EQ(Egp({"partition", "--graph", dir_ + "/missing.txt"}).code, 1);
  EXPECT_EQ(Egp({"partition", "--graph", toy_, "--algo", "magic"}).code, 1);
  EXPECT_EQ(Egp({"partition", "--graph", toy_, "--theta", "-1"}).code, 1);
  EXPECT_EQ(Egp({"simulate", "--graph", toy_, "--egos", "1,2", "--ego-arms",
                 "1,0"})
                .code,
            1);
}

TEST_F(CliTest, WarningsKeepExitZero) {
  const std::string dirty = dir_ + "/dirty.txt";
  egp::testing::WriteFile(dirty, "1 3\n3 1\n2 3 9\n1 4\n2 5\n5 5\n");
  CliRun r = Egp({"partition", "--graph", dirty, "--egos", "1,2", "--ego-arms",
               "1,0", "--out", dir_ + "/dirty_out"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_THAT(r.err, HasSubstr("warning"));
  nlohmann::json j = ReadJson(dir_ + "/dirty_out/partition.json");
  EXPECT_EQ(j["load_warnings"].size(), 3u);
}

TEST(SerializationTest, TreatmentBitsetRoundTrip) {
  Partition p = egp::testing::ToyEgoPartition();
  for (NodeId v = 2; v < 5; ++v) p.arm[v] = Arm::kControl;
  p.arm[3] = Arm::kTreatment;
  const std::string encoded = EncodeTreatment(p);
  EXPECT_EQ(encoded, "CQ==");
  EXPECT_THAT(*DecodeTreatment(encoded, 5),
              ElementsAre(true, false, false, true, false));
  EXPECT_FALSE(DecodeTreatment("CQ==", 20).ok());
  EXPECT_FALSE(DecodeTreatment("!!", 5).ok());
}

TEST(SerializationTest, SigmaBins) {
  EXPECT_EQ(SigmaBin(0.0), 0);
  EXPECT_EQ(SigmaBin(0.049), 0);
  EXPECT_EQ(SigmaBin(0.05), 1);
  EXPECT_EQ(SigmaBin(1.0), kSigmaBins - 1);
}

TEST(SerializationTest, RescaleFormat) {
  RescaledValue r = Rescale(-0.0096, 0.01);
  EXPECT_DOUBLE_EQ(r.value, -0.96);
  EXPECT_EQ(r.display, "-0.960% ± 0.5%");
}

TEST(SerializationTest, FormatDoubleIsShortest) {
  EXPECT_EQ(FormatDouble(0.5), "0.5");
  EXPECT_EQ(FormatDouble(0.0), "0");
  EXPECT_EQ(std::stod(FormatDouble(0.1 + 0.2)), 0.1 + 0.2);
}

TEST(ConfigTest, ModelFlag) {
  auto m = ParseModelFlag("convex_exp:2,1,3", 0.5);
  ASSERT_TRUE(m.ok());
  EXPECT_EQ(m->kind, OutcomeKind::kConvexExp);
  EXPECT_THAT(m->params, ElementsAre(2, 1, 3));
  EXPECT_EQ(m->noise_sd, 0.5);
  EXPECT_FALSE(ParseModelFlag("linear", 1).ok());
  EXPECT_FALSE(ParseModelFlag("linear:1,x,1", 1).ok());
}

TEST(ConfigTest, EchoOmitsExecutionKnobs) {
  RunConfig a, b;
  a.threads = 1;
  b.threads = 8;
  a.out = "x";
  b.out = "y";
  EXPECT_EQ(ConfigEcho(a).dump(), ConfigEcho(b).dump());
}

}  // namespace
}  // namespace egp::cli
