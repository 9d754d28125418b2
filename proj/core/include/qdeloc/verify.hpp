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

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qdeloc/linop.hpp"

namespace qdeloc {

struct CaseResult {
  std::string id;
  bool pass = false;
  /// Named measurements, in the order they were taken.
  std::vector<std::pair<std::string, double>> values;
  double tolerance = 0.0;
  double wall_ms = 0.0;
  /// Message of an exception that aborted the case.
  std::string error;
};

struct VerificationReport {
  std::string suite;
  std::uint64_t seed = 0;
  int samples = 0;
  std::vector<CaseResult> cases;

  int passed() const;
  int failed() const { return static_cast<int>(cases.size()) - passed(); }
  bool all_passed() const { return failed() == 0; }
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int samples = 100;
  /// Replaces every case's default tolerance when set.
  std::optional<double> tol;
  StoragePolicy policy;
};

/// eq1, composition, reframe, switch-a, switch-b, inequivalence, similarity,
/// amplitude, unitarity.
const std::vector<std::string>& suite_names();

/// Runs one named suite, or every suite for "all". Throws OutOfRange for an
/// unknown name.
VerificationReport run_suite(const std::string& name, const VerifyOptions& options);

/// Versioned report document ("schema": 1). `with_timing` false zeroes wall
/// times so that equal seeds give byte-identical output.
std::string to_json(const VerificationReport& report, bool with_timing = true);

}  // namespace qdeloc
