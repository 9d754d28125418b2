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

#include "qdeloc/error.hpp"

namespace qdeloc {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDuplicateLabel:
      return "DuplicateLabel";
    case ErrorCode::kZeroDimension:
      return "ZeroDimension";
    case ErrorCode::kOutOfRange:
      return "OutOfRange";
    case ErrorCode::kSignatureMismatch:
      return "SignatureMismatch";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kLabelCollision:
      return "LabelCollision";
    case ErrorCode::kLabelAbsent:
      return "LabelAbsent";
    case ErrorCode::kMemoryBudgetExceeded:
      return "MemoryBudgetExceeded";
    case ErrorCode::kNotUnitary:
      return "NotUnitary";
    case ErrorCode::kTraceIncreasing:
      return "TraceIncreasing";
    case ErrorCode::kMultiKrausStep:
      return "MultiKrausStep";
    case ErrorCode::kNonUnitaryInterior:
      return "NonUnitaryInterior";
    case ErrorCode::kInvalidCircuit:
      return "InvalidCircuit";
    case ErrorCode::kParseError:
      return "ParseError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
      code_(code) {}

}  // namespace qdeloc
