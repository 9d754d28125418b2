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

#include "qdeloc/circuits.hpp"

#include <map>
#include <string>

#include "qdeloc/error.hpp"

namespace qdeloc {
namespace {

void require_closed(const CircuitDescription& c) {
  if (!c.closed()) {
    std::string open;
    for (const auto& l : c.open_outputs()) open += " " + l + "(out)";
    for (const auto& l : c.open_inputs()) open += " " + l + "(in)";
    throw Error(ErrorCode::kInvalidCircuit, "circuit has open wires:" + open);
  }
}

}  // namespace

CircuitDescription::CircuitDescription(std::vector<KrausMap> steps)
    : steps_(std::move(steps)) {
  std::map<SystemLabel, std::size_t> producer, consumer;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    for (const auto& l : steps_[i].out_sig().labels()) {
      if (!producer.emplace(l, i).second) {
        throw Error(ErrorCode::kInvalidCircuit,
                    "label '" + l + "' is the output of steps " +
                        std::to_string(producer[l]) + " and " + std::to_string(i));
      }
    }
    for (const auto& l : steps_[i].in_sig().labels()) {
      if (!consumer.emplace(l, i).second) {
        throw Error(ErrorCode::kInvalidCircuit,
                    "label '" + l + "' is the input of steps " +
                        std::to_string(consumer[l]) + " and " + std::to_string(i));
      }
    }
  }
  for (const auto& [l, i] : producer) {
    auto it = consumer.find(l);
    if (it == consumer.end()) continue;
    if (steps_[i].out_sig().dim_of(l) != steps_[it->second].in_sig().dim_of(l)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "wire '" + l + "' has different dimensions at its two ends");
    }
  }
}

std::set<SystemLabel> CircuitDescription::open_outputs() const {
  std::set<SystemLabel> outs, ins;
  for (const auto& s : steps_) {
    for (const auto& l : s.out_sig().labels()) outs.insert(l);
    for (const auto& l : s.in_sig().labels()) ins.insert(l);
  }
  std::set<SystemLabel> open;
  for (const auto& l : outs) {
    if (!ins.contains(l)) open.insert(l);
  }
  return open;
}

std::set<SystemLabel> CircuitDescription::open_inputs() const {
  std::set<SystemLabel> outs, ins;
  for (const auto& s : steps_) {
    for (const auto& l : s.out_sig().labels()) outs.insert(l);
    for (const auto& l : s.in_sig().labels()) ins.insert(l);
  }
  std::set<SystemLabel> open;
  for (const auto& l : ins) {
    if (!outs.contains(l)) open.insert(l);
  }
  return open;
}

bool CircuitDescription::is_chain() const {
  if (!closed()) return false;
  std::map<SystemLabel, std::size_t> consumer;
  for (std::size_t i = 0; i < steps_.size(); ++i) {
    for (const auto& l : steps_[i].in_sig().labels()) consumer[l] = i;
  }
  // Kahn's algorithm on the step graph.
  const std::size_t n = steps_.size();
  std::vector<std::vector<std::size_t>> next(n);
  std::vector<int> indegree(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& l : steps_[i].out_sig().labels()) {
      const std::size_t j = consumer.at(l);
      next[i].push_back(j);
      ++indegree[j];
    }
  }
  std::vector<std::size_t> ready;
  for (std::size_t i = 0; i < n; ++i) {
    if (indegree[i] == 0) ready.push_back(i);
  }
  std::size_t seen = 0;
  while (!ready.empty()) {
    const std::size_t i = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t j : next[i]) {
      if (--indegree[j] == 0) ready.push_back(j);
    }
  }
  return seen == n;
}

bool CircuitDescription::single_kraus() const {
  for (const auto& s : steps_) {
    if (s.size() != 1) return false;
  }
  return true;
}

FactoredOperator circuit_operator(const CircuitDescription& c) {
  std::vector<LabeledOperator> factors;
  factors.reserve(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto& s = c.steps()[i];
    if (s.size() != 1) {
      throw Error(ErrorCode::kMultiKrausStep,
                  "step " + std::to_string(i) + " has " +
                      std::to_string(s.size()) + " Kraus operators");
    }
    factors.push_back(s.kraus().front());
  }
  return FactoredOperator(std::move(factors));
}

KrausMap circuit_superoperator(const CircuitDescription& c,
                               const StoragePolicy& policy) {
  return tensor_maps(c.steps(), policy);
}

Complex chain_amplitude(const CircuitDescription& c,
                        const StoragePolicy& policy) {
  const FactoredOperator k = circuit_operator(c);
  require_closed(c);
  return chain_trace(k, policy);
}

double chain_probability(const CircuitDescription& c,
                         const StoragePolicy& policy) {
  require_closed(c);
  return full_compose(std::span<const KrausMap>(c.steps()), policy);
}

}  // namespace qdeloc
