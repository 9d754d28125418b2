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

#pragma once

#include <set>
#include <vector>

#include "qdeloc/cpmaps.hpp"
#include "qdeloc/factored.hpp"

namespace qdeloc {

/// A circuit given as a list of steps wired by label identity: a label that
/// is the output of one step and the input of another is an internal wire.
/// Each label is the output of at most one step and the input of at most one
/// step; cycles are allowed.
class CircuitDescription {
 public:
  CircuitDescription() = default;
  /// Throws InvalidCircuit on a repeated output or input label.
  explicit CircuitDescription(std::vector<KrausMap> steps);

  const std::vector<KrausMap>& steps() const { return steps_; }
  std::size_t size() const { return steps_.size(); }

  /// Labels produced but never consumed, and consumed but never produced.
  std::set<SystemLabel> open_outputs() const;
  std::set<SystemLabel> open_inputs() const;
  bool closed() const { return open_outputs().empty() && open_inputs().empty(); }
  /// Closed and the step graph has no directed cycle.
  bool is_chain() const;
  bool single_kraus() const;

 private:
  std::vector<KrausMap> steps_;
};

/// One factor per step. Throws MultiKrausStep.
FactoredOperator circuit_operator(const CircuitDescription& c);
/// Tensor product of the step maps.
KrausMap circuit_superoperator(const CircuitDescription& c,
                               const StoragePolicy& policy = {});

/// Tr of the circuit operator. Throws InvalidCircuit if the circuit is not
/// closed and MultiKrausStep for multi-Kraus steps.
Complex chain_amplitude(const CircuitDescription& c,
                        const StoragePolicy& policy = {});
/// Full composition of the circuit superoperator. Throws InvalidCircuit if
/// the circuit is not closed.
double chain_probability(const CircuitDescription& c,
                         const StoragePolicy& policy = {});

}  // namespace qdeloc
