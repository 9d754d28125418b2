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

#include "qdeloc/json_io.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "qdeloc/error.hpp"

namespace qdeloc {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorCode::kParseError, (path.empty() ? "<root>" : path) + ": " + what);
}

json parse_text(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    std::size_t line = 1, column = 1;
    const std::size_t end = std::min(e.byte == 0 ? 0 : e.byte - 1, text.size());
    for (std::size_t i = 0; i < end; ++i) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    std::string msg = e.what();
    // Drop nlohmann's "[json.exception.parse_error.101] " prefix.
    if (const auto pos = msg.find("] "); pos != std::string::npos) msg = msg.substr(pos + 2);
    throw Error(ErrorCode::kParseError, "line " + std::to_string(line) + ", column " +
                                            std::to_string(column) + ": " + msg);
  }
}

const json& member(const json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_error(path, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) schema_error(path, std::string("missing \"") + key + "\"");
  return *it;
}

std::int64_t integer(const json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_error(path, "expected an integer");
  return j.get<std::int64_t>();
}

double number(const json& j, const std::string& path) {
  if (!j.is_number()) schema_error(path, "expected a number");
  return j.get<double>();
}

SpaceSignature signature_from(const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of subsystems");
  std::vector<Subsystem> entries;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& label = member(j[i], "label", p);
    if (!label.is_string()) schema_error(p + ".label", "expected a string");
    entries.push_back({label.get<std::string>(), integer(member(j[i], "dim", p), p + ".dim")});
  }
  return SpaceSignature(std::move(entries));
}

LabeledOperator entries_from(const SpaceSignature& out, const SpaceSignature& in,
                             const json& j, const std::string& path) {
  if (!j.is_array()) schema_error(path, "expected an array of entries");
  std::vector<Entry> entries;
  entries.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string p = path + "[" + std::to_string(i) + "]";
    const json& e = j[i];
    if (!e.is_array() || (e.size() != 3 && e.size() != 4)) {
      schema_error(p, "expected [row, col, re] or [row, col, re, im]");
    }
    const std::int64_t r = integer(e[0], p + "[0]");
    const std::int64_t c = integer(e[1], p + "[1]");
    if (r < 0 || r >= out.dim() || c < 0 || c >= in.dim()) {
      throw Error(ErrorCode::kOutOfRange, p + ": entry (" + std::to_string(r) + ", " +
                                              std::to_string(c) + ") outside " +
                                              std::to_string(out.dim()) + "x" +
                                              std::to_string(in.dim()));
    }
    const double re = number(e[2], p + "[2]");
    const double im = e.size() == 4 ? number(e[3], p + "[3]") : 0.0;
    entries.push_back({r, c, Complex(re, im)});
  }
  return LabeledOperator::from_entries(out, in, entries);
}

LabeledOperator operator_from(const json& j, const std::string& path) {
  const SpaceSignature out = signature_from(member(j, "out", path), path + ".out");
  const SpaceSignature in = signature_from(member(j, "in", path), path + ".in");
  return entries_from(out, in, member(j, "entries", path), path + ".entries");
}

KrausMap kraus_map_from(const json& j, const std::string& path) {
  const SpaceSignature out = signature_from(member(j, "out", path), path + ".out");
  const SpaceSignature in = signature_from(member(j, "in", path), path + ".in");
  const json& ks = member(j, "kraus", path);
  if (!ks.is_array() || ks.empty()) {
    schema_error(path + ".kraus", "expected a nonempty array of entry lists");
  }
  std::vector<LabeledOperator> kraus;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    kraus.push_back(entries_from(out, in, ks[i], path + ".kraus[" + std::to_string(i) + "]"));
  }
  return KrausMap(std::move(kraus));
}

FactoredOperator factored_from(const json& j, const std::string& path) {
  const json& fs = member(j, "factors", path);
  if (!fs.is_array()) schema_error(path + ".factors", "expected an array");
  std::vector<LabeledOperator> factors;
  for (std::size_t i = 0; i < fs.size(); ++i) {
    factors.push_back(operator_from(fs[i], path + ".factors[" + std::to_string(i) + "]"));
  }
  return FactoredOperator(std::move(factors));
}

json signature_json(const SpaceSignature& sig) {
  json a = json::array();
  for (const auto& e : sig.entries()) a.push_back({{"label", e.label}, {"dim", e.dim}});
  return a;
}

json entries_json(const LabeledOperator& op) {
  json a = json::array();
  for (const auto& e : op.entries()) {
    a.push_back({e.row, e.col, e.value.real(), e.value.imag()});
  }
  return a;
}

json operator_json(const LabeledOperator& op) {
  return {{"out", signature_json(op.out_sig())},
          {"in", signature_json(op.in_sig())},
          {"entries", entries_json(op)}};
}

json kraus_map_json(const KrausMap& m) {
  json ks = json::array();
  for (const auto& k : m.kraus()) ks.push_back(entries_json(k));
  return {{"out", signature_json(m.out_sig())},
          {"in", signature_json(m.in_sig())},
          {"kraus", std::move(ks)}};
}

json factored_json(const FactoredOperator& f) {
  json fs = json::array();
  for (const auto& op : f.factors()) fs.push_back(operator_json(op));
  return {{"factors", std::move(fs)}};
}

}  // namespace

SpaceSignature parse_signature(std::string_view text) {
  return signature_from(parse_text(text), "");
}

LabeledOperator parse_operator(std::string_view text) {
  return operator_from(parse_text(text), "");
}

KrausMap parse_kraus_map(std::string_view text) {
  return kraus_map_from(parse_text(text), "");
}

CircuitDescription parse_circuit(std::string_view text) {
  const json j = parse_text(text);
  const json& steps = member(j, "steps", "");
  if (!steps.is_array()) schema_error("steps", "expected an array");
  std::vector<KrausMap> maps;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    maps.push_back(kraus_map_from(steps[i], "steps[" + std::to_string(i) + "]"));
  }
  return CircuitDescription(std::move(maps));
}

FactoredOperator parse_factored(std::string_view text) {
  return factored_from(parse_text(text), "");
}

SubsystemIsomorphism parse_isomorphism(std::string_view text,
                                       const StoragePolicy& policy) {
  const json j = parse_text(text);
  const json& flag = member(j, "unitary", "");
  if (!flag.is_boolean() || !flag.get<bool>()) {
    schema_error("unitary", "isomorphisms must assert \"unitary\": true");
  }
  if (j.contains("factors")) return SubsystemIsomorphism(factored_from(j, ""), policy);
  return SubsystemIsomorphism(operator_from(j, ""), policy);
}

std::string to_json(const SpaceSignature& sig) { return signature_json(sig).dump(); }

std::string to_json(const LabeledOperator& op) { return operator_json(op).dump(); }

std::string to_json(const KrausMap& m) { return kraus_map_json(m).dump(); }

std::string to_json(const CircuitDescription& c) {
  json steps = json::array();
  for (const auto& s : c.steps()) steps.push_back(kraus_map_json(s));
  return json{{"steps", std::move(steps)}}.dump();
}

std::string to_json(const FactoredOperator& f) { return factored_json(f).dump(); }

std::string to_json(const SubsystemIsomorphism& j) {
  json out = factored_json(j.factored());
  out["unitary"] = true;
  return out.dump();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace qdeloc
