// Copyright 2026 The corrspace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "corrspace/cli.hpp"
#include "corrspace/serialize.hpp"

namespace corrspace::cli {
namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result call(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

io::Json parse(const Result& r) { return io::Json::parse(r.out); }

TEST(Angles, RationalMultiplesOfPi) {
  EXPECT_NEAR(parse_angle("pi/3"), kPi / 3, 1e-15);
  EXPECT_NEAR(parse_angle("-pi/2"), -kPi / 2, 1e-15);
  EXPECT_NEAR(parse_angle("2pi/3"), 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(parse_angle("2*pi/3"), 2 * kPi / 3, 1e-15);
  EXPECT_NEAR(parse_angle("pi"), kPi, 1e-15);
  EXPECT_NEAR(parse_angle("0.5"), 0.5, 1e-15);
  EXPECT_NEAR(parse_angle("-1e-3"), -1e-3, 1e-18);
  for (const char* bad : {"", "pi/", "p/3", "1.2.3", "pi/0", "3 pi pi", "abc"}) {
    EXPECT_THROW(parse_angle(bad), std::invalid_argument) << bad;
  }
}

TEST(Run, RotationRegressionRow) {
  const auto r = call({"protocol", "rotate", "--alpha", "0", "--beta", "0", "--gamma", "0", "--postselect-zeros"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_EQ(j["schema"], "corrspace/1");
  const auto amps = io::vector_from_json(j["transcript"]["physical_out"]["amplitudes"]);
  EXPECT_NEAR(overlap_modulus(amps, VecX(kets::p())), 1.0, 1e-12);
  EXPECT_GT(j["transcript"]["branch_probability"].get<double>(), 0.0);
}

TEST(Run, CurveCsv) {
  const auto r = call({"curve", "fig2", "--resource", "4", "--fidelity", "0.73", "--grid", "25", "--format", "csv"});
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "alpha,p_success");
  int rows = 0;
  while (std::getline(in, line)) {
    const double p = std::stod(line.substr(line.find(',') + 1));
    EXPECT_GT(p, 0.0);
    EXPECT_LT(p, 1.0);
    ++rows;
  }
  EXPECT_EQ(rows, 25);
}

TEST(Run, AnalyzeSixQubitState) {
  const auto r = call({"state", "analyze", "--state", "psi6"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_NEAR(j["entropies"]["4"].get<double>(), 0.9375, 1e-12);
  EXPECT_NEAR(j["entropies"]["1"].get<double>(), 0.75, 1e-12);
  bool found = false;
  for (const auto& p : j["correlations"]) {
    if (p["qubits"][0] == "2" && p["qubits"][1] == "4") {
      EXPECT_NEAR(p["Q"]["XZ"].get<double>(), 0.433012701892219, 1e-12);
      found = true;
    }
    if (p["qubits"][0] == "3" && p["qubits"][1] == "4") EXPECT_NEAR(p["Q"]["ZX"].get<double>(), 0.375, 1e-12);
  }
  EXPECT_TRUE(found);
}

TEST(Run, BuildMethods) {
  for (const char* method : {"wire", "prep"}) {
    const auto r = call({"state", "build", "--state", "psi6", "--method", method});
    ASSERT_EQ(r.code, 0) << r.err;
  }
  EXPECT_EQ(call({"state", "build", "--state", "psi4", "--method", "literal"}).code, 2);
  EXPECT_EQ(call({"state", "build", "--state", "psi9"}).code, 2);
}

TEST(Run, ResourceFileRoundTrip) {
  const auto built = parse(call({"state", "build", "--state", "psi6"}));
  const std::string path = ::testing::TempDir() + "cli_resource.json";
  std::ofstream(path) << built["resource"].dump();
  const auto r = call({"state", "build", "--resource-file", path});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto a = io::vector_from_json(built["state"]["amplitudes"]);
  const auto b = io::vector_from_json(parse(r)["state"]["amplitudes"]);
  EXPECT_NEAR(overlap_modulus(a, b), 1.0, 1e-12);
}

TEST(Run, UsageErrorsExitTwo) {
  EXPECT_EQ(call({}).code, 2);
  EXPECT_EQ(call({"bogus"}).code, 2);
  EXPECT_EQ(call({"protocol", "rotate", "--alpha", "pi/x"}).code, 2);
  EXPECT_EQ(call({"protocol", "rotate", "--format", "xml"}).code, 2);
  EXPECT_EQ(call({"protocol", "rotate", "--format", "csv", "--postselect-zeros"}).code, 2);
  EXPECT_EQ(call({"protocol", "compensate", "--resource", "3", "--exhaustive"}).code, 2);
  EXPECT_EQ(call({"protocol", "rotate", "--seed", "-4"}).code, 2);
  EXPECT_EQ(call({"tomo", "reconstruct"}).code, 2);
  EXPECT_EQ(call({"protocol", "rotate", "--theta", "0", "--postselect-zeros"}).code, 2);
}

TEST(Run, OpaquePipelineExitsOne) {
  // Pair (1, 2) starts as |HH> + |VV>; keeping V on 1 and then only H on 2 transmits nothing.
  const std::string path = ::testing::TempDir() + "cli_opaque.json";
  std::ofstream(path) << R"([{"kind": "pbc", "qubit": "1", "t_h": 0, "t_v": 1},
                             {"kind": "pbc", "qubit": "2", "t_h": 1, "t_v": 0}])";
  const auto r = call({"state", "build", "--pipeline", path});
  EXPECT_EQ(r.code, 1) << r.out;
  EXPECT_TRUE(r.out.empty());
  EXPECT_FALSE(r.err.empty());
}

TEST(Run, HelpExitsZero) {
  const auto r = call({"--help"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("protocol"), std::string::npos);
}

TEST(Run, GeneratedSeedIsReportedAndRecorded) {
  const auto r = call({"protocol", "cz", "--alpha", "pi/3"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto seed = parse(r)["seed"].get<std::uint64_t>();
  EXPECT_NE(r.err.find("seed: " + std::to_string(seed)), std::string::npos);
  const auto again = call({"protocol", "cz", "--alpha", "pi/3", "--seed", std::to_string(seed)});
  EXPECT_EQ(again.out, r.out);
}

TEST(Run, SeededOutputIsByteIdentical) {
  const std::vector<std::string> args = {"tomo", "simulate", "--shots", "300", "--seed", "12", "--fidelity", "0.8"};
  EXPECT_EQ(call(args).out, call(args).out);
  auto other = args;
  other[5] = "13";
  EXPECT_NE(call(args).out, call(other).out);
}

TEST(Run, SimulateThenReconstructThroughFiles) {
  const std::string counts = ::testing::TempDir() + "cli_counts.csv";
  auto r = call({"tomo", "simulate", "--shots", "400", "--seed", "5", "--format", "csv", "--out", counts});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  r = call({"tomo", "reconstruct", "--in", counts, "--labels", "1,2,3,4", "--target", "psi4"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = parse(r);
  EXPECT_GT(j["result"]["fidelity"].get<double>(), 0.9);
  EXPECT_EQ(j["result"]["rho"]["matrix"].size(), 16u);
  EXPECT_EQ(call({"tomo", "reconstruct", "--in", counts}).code, 2);  // CSV needs labels
}

TEST(Run, WitnessExactAndSampled) {
  auto r = call({"witness", "fidelity", "--fidelity", "0.73"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse(r)["report"]["fidelity"].get<double>(), 0.73, 1e-12);
  r = call({"witness", "fidelity", "--settings", "literal"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NEAR(parse(r)["report"]["operator_residual"].get<double>(), 0.24357, 1e-5);
}

TEST(Run, DeutschVerdicts) {
  auto r = call({"protocol", "deutsch", "--oracle", "balanced", "--outcomes", "1,0,0,1"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse(r)["verdict"], "balanced");
  r = call({"protocol", "deutsch", "--oracle", "constant", "--postselect-zeros"});
  EXPECT_EQ(parse(r)["verdict"], "constant");
  EXPECT_EQ(call({"protocol", "deutsch", "--oracle", "neither"}).code, 2);
}

}  // namespace
}  // namespace corrspace::cli
