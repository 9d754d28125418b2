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

#include <string>
#include <string_view>

#include "qdeloc/circuits.hpp"
#include "qdeloc/cpmaps.hpp"
#include "qdeloc/factored.hpp"
#include "qdeloc/linop.hpp"
#include "qdeloc/reframe.hpp"
#include "qdeloc/spaces.hpp"

namespace qdeloc {

// Formats:
//   signature   [{"label": "T1", "dim": 2}, ...]
//   operator    {"out": <signature>, "in": <signature>,
//                "entries": [[row, col, re, im], ...]}
//   kraus map   {"out": <signature>, "in": <signature>,
//                "kraus": [[[row, col, re, im], ...], ...]}
//   circuit     {"steps": [<kraus map>, ...]}
//   factored    {"factors": [<operator>, ...]}
//   isomorphism <operator> or <factored>, with "unitary": true
//
// Parsing errors throw Error(kParseError) carrying line and column for
// malformed text and a JSON path for schema violations. Domain validation
// errors (duplicate labels, signature mismatches, non-unitary isomorphisms)
// propagate with their own codes.

SpaceSignature parse_signature(std::string_view text);
LabeledOperator parse_operator(std::string_view text);
KrausMap parse_kraus_map(std::string_view text);
CircuitDescription parse_circuit(std::string_view text);
FactoredOperator parse_factored(std::string_view text);
SubsystemIsomorphism parse_isomorphism(std::string_view text,
                                       const StoragePolicy& policy = {});

std::string to_json(const SpaceSignature& sig);
std::string to_json(const LabeledOperator& op);
std::string to_json(const KrausMap& m);
std::string to_json(const CircuitDescription& c);
std::string to_json(const FactoredOperator& f);
std::string to_json(const SubsystemIsomorphism& j);

/// Whole file as text. Throws Error(kParseError) if it cannot be read.
std::string read_text_file(const std::string& path);

}  // namespace qdeloc
