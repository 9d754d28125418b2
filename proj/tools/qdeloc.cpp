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

// qdeloc: verification suites and circuit tools for labeled-subsystem
// circuit operators.

#include <CLI11.hpp>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qdeloc/circuits.hpp"
#include "qdeloc/cpmaps.hpp"
#include "qdeloc/error.hpp"
#include "qdeloc/json_io.hpp"
#include "qdeloc/reframe.hpp"
#include "qdeloc/switch.hpp"
#include "qdeloc/verify.hpp"

namespace {

using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

struct Globals {
  std::uint64_t seed = 0;
  int samples = 100;
  std::optional<double> tol;
  std::string out;
  std::uint64_t memory_budget_mib = 2048;
  bool force_dense = false;

  qdeloc::StoragePolicy policy() const {
    qdeloc::StoragePolicy p;
    p.memory_budget_bytes = memory_budget_mib << 20;
    p.force_dense = force_dense;
    return p;
  }
};

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream f(g.out, std::ios::binary);
  if (!f) {
    throw qdeloc::Error(qdeloc::ErrorCode::kParseError, "cannot write '" + g.out + "'");
  }
  f << text << "\n";
}

std::string load(const std::string& path) { return qdeloc::read_text_file(path); }

template <class F>
auto with_file(const std::string& path, F&& parse) {
  try {
    return parse(load(path));
  } catch (const qdeloc::Error& e) {
    throw qdeloc::Error(e.code(), path + ": " + std::string(e.what()));
  }
}

json complex_json(qdeloc::Complex z) { return json::array({z.real(), z.imag()}); }

int cmd_verify(const Globals& g, const std::string& suite) {
  qdeloc::VerifyOptions opts;
  opts.seed = g.seed;
  opts.samples = g.samples;
  opts.tol = g.tol;
  opts.policy = g.policy();
  const qdeloc::VerificationReport report = qdeloc::run_suite(suite, opts);
  emit(g, qdeloc::to_json(report));
  std::cerr << report.suite << ": " << report.passed() << "/" << report.cases.size()
            << " cases passed\n";
  return report.all_passed() ? kExitPass : kExitFailure;
}

int cmd_compose(const Globals& g, const std::string& path,
                const std::vector<std::string>& labels) {
  const qdeloc::CircuitDescription c =
      with_file(path, [](const std::string& t) { return qdeloc::parse_circuit(t); });
  const qdeloc::StoragePolicy policy = g.policy();
  std::set<qdeloc::SystemLabel> wires;
  for (const auto& s : c.steps()) {
    for (const auto& l : s.out_sig().labels()) wires.insert(l);
  }
  const std::set<qdeloc::SystemLabel> chosen =
      labels.empty() ? wires : std::set<qdeloc::SystemLabel>(labels.begin(), labels.end());

  json doc{{"circuit", path}, {"labels", chosen}};
  if (chosen == wires && c.closed()) {
    doc["probability"] = qdeloc::chain_probability(c, policy);
    if (c.single_kraus()) doc["amplitude"] = complex_json(qdeloc::chain_amplitude(c, policy));
  } else {
    const qdeloc::KrausMap m =
        qdeloc::partial_compose(qdeloc::circuit_superoperator(c, policy), chosen);
    doc["map"] = json::parse(qdeloc::to_json(m));
  }
  emit(g, doc.dump(2));
  return kExitPass;
}

int cmd_transform(const Globals& g, const std::string& circuit_path,
                  const std::string& iso_path) {
  const qdeloc::StoragePolicy policy = g.policy();
  const qdeloc::CircuitDescription c =
      with_file(circuit_path, [](const std::string& t) { return qdeloc::parse_circuit(t); });
  const qdeloc::SubsystemIsomorphism j = with_file(
      iso_path, [&](const std::string& t) { return qdeloc::parse_isomorphism(t, policy); });

  json doc{{"circuit", circuit_path}, {"isomorphism", iso_path}};
  if (c.single_kraus()) {
    const qdeloc::FactoredOperator k = qdeloc::circuit_operator(c);
    const qdeloc::LabeledOperator kt = qdeloc::transform_operator(k, j, policy);
    doc["composition_before"] = std::norm(qdeloc::chain_trace(k, policy));
    doc["composition_after"] = std::norm(qdeloc::trace(kt));
    doc["operator"] = json::parse(qdeloc::to_json(kt));
  } else {
    const qdeloc::KrausMap m = qdeloc::circuit_superoperator(c, policy);
    const qdeloc::KrausMap mt = qdeloc::transform_map(m, j, policy);
    doc["composition_before"] = qdeloc::full_compose(m);
    doc["composition_after"] = qdeloc::full_compose(mt);
    doc["map"] = json::parse(qdeloc::to_json(mt));
  }
  emit(g, doc.dump());
  return kExitPass;
}

int cmd_export(const Globals& g, const std::string& what) {
  namespace sw = qdeloc::qswitch;
  qdeloc::Rng rng(g.seed);
  const sw::SwitchOps ops = sw::SwitchOps::random(rng);
  const auto circuit_of = [](const qdeloc::FactoredOperator& f) {
    std::vector<qdeloc::KrausMap> steps;
    for (const auto& k : f.factors()) steps.emplace_back(std::vector<qdeloc::LabeledOperator>{k});
    return qdeloc::CircuitDescription(std::move(steps));
  };
  std::string text;
  if (what == "u-sw") {
    text = qdeloc::to_json(sw::u_sw());
  } else if (what == "switch") {
    text = qdeloc::to_json(sw::switch_circuit(ops));
  } else if (what == "temporal-a") {
    text = qdeloc::to_json(circuit_of(sw::k_temp_a(ops)));
  } else if (what == "temporal-b") {
    text = qdeloc::to_json(circuit_of(sw::k_temp_b(ops)));
  } else if (what == "cyclic-a") {
    text = qdeloc::to_json(circuit_of(sw::k_cyc(sw::Perspective::kAlice, ops)));
  } else if (what == "cyclic-b") {
    text = qdeloc::to_json(circuit_of(sw::k_cyc(sw::Perspective::kBob, ops)));
  } else if (what == "j-a") {
    text = qdeloc::to_json(sw::j_a());
  } else if (what == "j-b") {
    text = qdeloc::to_json(sw::j_b());
  } else {
    throw CLI::ValidationError("export", "unknown object '" + what + "'");
  }
  emit(g, text);
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Labeled-subsystem circuit operators and quantum-switch verification"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--samples", g.samples, "Random samples per suite")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--tol", g.tol, "Override every case tolerance");
  app.add_option("--out", g.out, "Write output to this file instead of stdout");
  app.add_option("--memory-budget-mib", g.memory_budget_mib, "Expansion memory budget")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_flag("--force-dense", g.force_dense, "Request dense storage everywhere");

  std::vector<std::string> suites = qdeloc::suite_names();
  suites.push_back("all");
  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "Suite name")->required()->check(CLI::IsMember(suites));

  std::string circuit_path, iso_path;
  std::vector<std::string> labels;
  auto* compose = app.add_subcommand("compose", "Compose a circuit file over its labels");
  compose->add_option("circuit", circuit_path, "Circuit JSON")->required();
  compose->add_option("--labels", labels, "Labels to contract (default: all wires)")
      ->delimiter(',');

  auto* transform = app.add_subcommand("transform", "Apply an isomorphism to a circuit");
  transform->add_option("circuit", circuit_path, "Circuit JSON")->required();
  transform->add_option("isomorphism", iso_path, "Isomorphism JSON")->required();

  std::string what;
  auto* exporter = app.add_subcommand("export", "Write a switch construction as JSON");
  exporter
      ->add_option("object", what,
                   "u-sw, switch, temporal-a, temporal-b, cyclic-a, cyclic-b, j-a, j-b")
      ->required();

  for (auto* sub : {verify, compose, transform, exporter}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*verify) return cmd_verify(g, suite);
    if (*compose) return cmd_compose(g, circuit_path, labels);
    if (*transform) return cmd_transform(g, circuit_path, iso_path);
    if (*exporter) return cmd_export(g, what);
  } catch (const CLI::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const qdeloc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
