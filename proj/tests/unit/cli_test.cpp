// Copyright 2026 The qdeloc Authors
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

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <string>

#include "qdeloc/json_io.hpp"
#include "qdeloc/switch.hpp"
#include "test_support.hpp"

namespace qdeloc {
namespace {

struct Run {
  int exit_code = -1;
  std::string output;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(QDELOC_CLI_PATH) + " " + args + " 2>&1";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (pipe == nullptr) return r;
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), pipe)) r.output.append(buf.data(), n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = ::testing::TempDir() + "qdeloc_cli_" + name;
  std::ofstream(path) << content;
  return path;
}

nlohmann::json leading_json(const std::string& output) {
  // Reports are followed by a one-line summary.
  const auto end = output.rfind('}');
  return nlohmann::json::parse(output.substr(0, end + 1));
}

TEST(CliTest, VerifyPassExitsZero) {
  const auto r = run("verify eq1 --samples 3 --seed 4");
  EXPECT_EQ(r.exit_code, 0) << r.output;
  const auto doc = leading_json(r.output);
  EXPECT_EQ(doc["schema"], 1);
  EXPECT_EQ(doc["seed"], 4);
  EXPECT_EQ(doc["summary"]["total"], 3);
}

TEST(CliTest, VerifyFailureExitsOne) {
  const auto r = run("verify eq1 --samples 2 --tol -1");
  EXPECT_EQ(r.exit_code, 1) << r.output;
}

TEST(CliTest, UsageErrorsExitTwo) {
  EXPECT_EQ(run("verify no-such-suite").exit_code, 2);
  EXPECT_EQ(run("verify eq1 --samples -3").exit_code, 2);
  EXPECT_EQ(run("verify eq1 --bogus").exit_code, 2);
  EXPECT_EQ(run("").exit_code, 2);
}

TEST(CliTest, InequivalenceWrittenToFile) {
  const std::string out = ::testing::TempDir() + "qdeloc_cli_ineq.json";
  const auto r = run("verify inequivalence --out " + out);
  EXPECT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  bool seen = false;
  for (const auto& c : doc["cases"]) {
    if (c["id"] == "omega-traces") {
      EXPECT_NEAR(c["values"]["omega_a"].get<double>(), 40960.0, 1e-6);
      EXPECT_NEAR(c["values"]["omega_b"].get<double>(), 32768.0, 1e-6);
      seen = true;
    }
  }
  EXPECT_TRUE(seen) << doc.dump(2);
}

TEST(CliTest, SameSeedSameReport) {
  auto strip = [](std::string s) {
    auto doc = leading_json(s);
    for (auto& c : doc["cases"]) c["wall_ms"] = 0;
    return doc.dump();
  };
  EXPECT_EQ(strip(run("verify amplitude --samples 3 --seed 9").output),
            strip(run("verify amplitude --samples 3 --seed 9").output));
}

TEST(CliTest, ComposeBornRule) {
  const std::string circuit = R"({"steps": [
    {"out": [{"label": "s", "dim": 2}], "in": [],
     "kraus": [[[0, 0, 0.6], [1, 0, 0.8]]]},
    {"out": [], "in": [{"label": "s", "dim": 2}],
     "kraus": [[[0, 1, 1.0]]]}]})";
  const auto r = run("compose " + temp_file("born.json", circuit));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto doc = nlohmann::json::parse(r.output);
  EXPECT_NEAR(doc["probability"].get<double>(), 0.64, 1e-15);
  EXPECT_NEAR(doc["amplitude"][0].get<double>(), 0.8, 1e-15);
}

TEST(CliTest, ComposeSwitchCircuitMatchesClosedForm) {
  Rng rng(120);
  const auto ops = qswitch::SwitchOps::random(rng);
  const auto path = temp_file("switch.json", to_json(qswitch::switch_circuit(ops)));
  const auto r = run("compose " + path);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const auto doc = nlohmann::json::parse(r.output);
  const Complex expected = qswitch::switch_amplitude(ops);
  EXPECT_NEAR(doc["amplitude"][0].get<double>(), expected.real(), 1e-12);
  EXPECT_NEAR(doc["amplitude"][1].get<double>(), expected.imag(), 1e-12);
  EXPECT_NEAR(doc["probability"].get<double>(), std::norm(expected), 1e-12);
}

TEST(CliTest, ComposeMalformedJson) {
  const auto r = run("compose " + temp_file("bad.json", "{\"steps\": [\n  {,\n]}"));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("line 2"), std::string::npos) << r.output;
  EXPECT_NE(r.output.find("bad.json"), std::string::npos) << r.output;
}

TEST(CliTest, ComposeMissingFileAndUnknownLabel) {
  EXPECT_EQ(run("compose /nonexistent/circuit.json").exit_code, 2);
  const std::string circuit = R"({"steps": [
    {"out": [{"label": "s", "dim": 2}], "in": [], "kraus": [[[0, 0, 1.0]]]},
    {"out": [], "in": [{"label": "s", "dim": 2}], "kraus": [[[0, 0, 1.0]]]}]})";
  const auto r = run("compose " + temp_file("ok.json", circuit) + " --labels q");
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("'q'"), std::string::npos) << r.output;
}

TEST(CliTest, TransformIdentityAndPermutation) {
  Rng rng(121);
  const auto s = testing::sig({{"a", 2}, {"b", 3}});
  const auto k = testing::random_op(s, s, rng);
  const auto circuit = temp_file("loop.json", to_json(CircuitDescription({KrausMap({k})})));

  const auto id = temp_file("id.json", to_json(SubsystemIsomorphism::identity(s)));
  auto r = run("transform " + circuit + " " + id);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  auto doc = nlohmann::json::parse(r.output);
  const auto same = parse_operator(doc["operator"].dump());
  EXPECT_LT(frobenius_distance(same, k), 1e-15);

  const SubsystemIsomorphism rename(FactoredOperator(
      {identity_relabel(Subsystem{"a", 2}, Subsystem{"x", 2}),
       identity_relabel(Subsystem{"b", 3}, Subsystem{"y", 3})}));
  r = run("transform " + circuit + " " + temp_file("perm.json", to_json(rename)));
  ASSERT_EQ(r.exit_code, 0) << r.output;
  doc = nlohmann::json::parse(r.output);
  const auto moved = parse_operator(doc["operator"].dump());
  EXPECT_LT(frobenius_distance(moved, k.relabeled({{"a", "x"}, {"b", "y"}})), 1e-15);
  EXPECT_NEAR(doc["composition_before"].get<double>(),
              doc["composition_after"].get<double>(), 1e-12);
}

TEST(CliTest, TransformRejectsNonUnitary) {
  Rng rng(122);
  const auto s = testing::sig({{"a", 2}});
  const auto circuit = temp_file(
      "one.json", to_json(CircuitDescription({KrausMap({testing::random_op(s, s, rng)})})));
  std::string forged = to_json(testing::random_op(s, s, rng));
  forged.insert(forged.size() - 1, R"(,"unitary":true)");
  const auto r = run("transform " + circuit + " " + temp_file("forged.json", forged));
  EXPECT_EQ(r.exit_code, 2);
  EXPECT_NE(r.output.find("NotUnitary"), std::string::npos) << r.output;
}

TEST(CliTest, ExportedIsomorphismTakesTemporalToCyclic) {
  const auto dir = ::testing::TempDir();
  ASSERT_EQ(run("export temporal-a --seed 5 --out " + dir + "qdeloc_ta.json").exit_code, 0);
  ASSERT_EQ(run("export j-a --out " + dir + "qdeloc_ja.json").exit_code, 0);
  ASSERT_EQ(run("export cyclic-a --seed 5 --out " + dir + "qdeloc_ca.json").exit_code, 0);
  const std::string out = dir + "qdeloc_tr.json";
  const auto r = run("transform " + dir + "qdeloc_ta.json " + dir + "qdeloc_ja.json --out " + out);
  ASSERT_EQ(r.exit_code, 0) << r.output;
  std::ifstream in(out);
  const auto doc = nlohmann::json::parse(in);
  const auto transformed = parse_operator(doc["operator"].dump());
  const auto cyclic = expand(circuit_operator(parse_circuit(read_text_file(dir + "qdeloc_ca.json"))));
  EXPECT_LT(frobenius_distance(transformed, cyclic), 1e-10);
  EXPECT_NEAR(doc["composition_before"].get<double>(),
              doc["composition_after"].get<double>(), 1e-9);
}

}  // namespace
}  // namespace qdeloc
