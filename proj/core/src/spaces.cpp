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

#include "qdeloc/spaces.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "qdeloc/error.hpp"

namespace qdeloc {

SpaceSignature::SpaceSignature(std::vector<Subsystem> entries)
    : entries_(std::move(entries)) {
  std::set<std::string_view> seen;
  for (const auto& e : entries_) {
    if (e.label.empty()) {
      throw Error(ErrorCode::kDuplicateLabel, "empty subsystem label");
    }
    if (e.dim < 1) {
      throw Error(ErrorCode::kZeroDimension,
                  "subsystem '" + e.label + "' has dimension " +
                      std::to_string(e.dim));
    }
    if (!seen.insert(e.label).second) {
      throw Error(ErrorCode::kDuplicateLabel,
                  "label '" + e.label + "' appears twice");
    }
    if (dim_ > std::numeric_limits<std::int64_t>::max() / e.dim) {
      throw Error(ErrorCode::kOutOfRange, "total dimension overflows int64");
    }
    dim_ *= e.dim;
  }
}

SpaceSignature SpaceSignature::qubits(const std::vector<SystemLabel>& labels) {
  std::vector<Subsystem> entries;
  entries.reserve(labels.size());
  for (const auto& l : labels) entries.push_back({l, 2});
  return SpaceSignature(std::move(entries));
}

std::optional<std::size_t> SpaceSignature::position(
    std::string_view label) const {
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i].label == label) return i;
  }
  return std::nullopt;
}

std::int64_t SpaceSignature::dim_of(std::string_view label) const {
  auto pos = position(label);
  if (!pos) {
    throw Error(ErrorCode::kLabelAbsent,
                "label '" + std::string(label) + "' not in " + to_string());
  }
  return entries_[*pos].dim;
}

std::vector<SystemLabel> SpaceSignature::labels() const {
  std::vector<SystemLabel> out;
  out.reserve(entries_.size());
  for (const auto& e : entries_) out.push_back(e.label);
  return out;
}

std::set<SystemLabel> SpaceSignature::label_set() const {
  std::set<SystemLabel> out;
  for (const auto& e : entries_) out.insert(e.label);
  return out;
}

std::int64_t SpaceSignature::stride(std::size_t pos) const {
  std::int64_t s = 1;
  for (std::size_t i = pos + 1; i < entries_.size(); ++i) s *= entries_[i].dim;
  return s;
}

std::vector<std::int64_t> SpaceSignature::multi_index(std::int64_t flat) const {
  if (flat < 0 || flat >= dim_) {
    throw Error(ErrorCode::kOutOfRange,
                "flat index " + std::to_string(flat) + " outside [0, " +
                    std::to_string(dim_) + ")");
  }
  std::vector<std::int64_t> digits(entries_.size());
  for (std::size_t p = entries_.size(); p-- > 0;) {
    digits[p] = flat % entries_[p].dim;
    flat /= entries_[p].dim;
  }
  return digits;
}

std::int64_t SpaceSignature::flat_index(
    std::span<const std::int64_t> digits) const {
  if (digits.size() != entries_.size()) {
    throw Error(ErrorCode::kOutOfRange, "digit count does not match signature");
  }
  std::int64_t flat = 0;
  for (std::size_t p = 0; p < entries_.size(); ++p) {
    if (digits[p] < 0 || digits[p] >= entries_[p].dim) {
      throw Error(ErrorCode::kOutOfRange,
                  "digit for '" + entries_[p].label + "' out of range");
    }
    flat = flat * entries_[p].dim + digits[p];
  }
  return flat;
}

bool SpaceSignature::same_multiset(const SpaceSignature& other) const {
  if (entries_.size() != other.entries_.size()) return false;
  auto a = entries_;
  auto b = other.entries_;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

SpaceSignature SpaceSignature::concat(const SpaceSignature& other) const {
  for (const auto& e : other.entries_) {
    if (contains(e.label)) {
      throw Error(ErrorCode::kLabelCollision,
                  "label '" + e.label + "' on both sides of a tensor product");
    }
  }
  auto entries = entries_;
  entries.insert(entries.end(), other.entries_.begin(), other.entries_.end());
  return SpaceSignature(std::move(entries));
}

SpaceSignature SpaceSignature::without(
    const std::set<SystemLabel>& labels) const {
  std::vector<Subsystem> entries;
  for (const auto& e : entries_) {
    if (!labels.contains(e.label)) entries.push_back(e);
  }
  return SpaceSignature(std::move(entries));
}

SpaceSignature SpaceSignature::relabeled(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  auto entries = entries_;
  for (auto& e : entries) {
    if (auto it = renames.find(e.label); it != renames.end()) {
      e.label = it->second;
    }
  }
  return SpaceSignature(std::move(entries));
}

std::string SpaceSignature::to_string() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) os << ", ";
    os << entries_[i].label << ':' << entries_[i].dim;
  }
  os << ']';
  return os.str();
}

SpaceSignature make_signature(std::vector<Subsystem> entries) {
  return SpaceSignature(std::move(entries));
}

std::vector<std::int64_t> multi_index(const SpaceSignature& sig,
                                      std::int64_t flat) {
  return sig.multi_index(flat);
}

std::int64_t flat_index(const SpaceSignature& sig,
                        std::span<const std::int64_t> digits) {
  return sig.flat_index(digits);
}

IndexPermutation::IndexPermutation(const SpaceSignature& from,
                                   const SpaceSignature& to) {
  if (!from.same_multiset(to)) {
    throw Error(ErrorCode::kSignatureMismatch,
                from.to_string() + " vs " + to.to_string());
  }
  dims_.reserve(from.size());
  target_strides_.reserve(from.size());
  for (std::size_t p = 0; p < from.size(); ++p) {
    const auto& e = from.entries()[p];
    std::size_t q = *to.position(e.label);
    if (q != p) identity_ = false;
    dims_.push_back(e.dim);
    target_strides_.push_back(to.stride(q));
  }
}

std::vector<std::int64_t> IndexPermutation::table() const {
  std::int64_t total = 1;
  for (auto d : dims_) total *= d;
  std::vector<std::int64_t> out(static_cast<std::size_t>(total));
  std::vector<std::int64_t> digit(dims_.size(), 0);
  std::int64_t image = 0;
  for (std::int64_t k = 0; k < total; ++k) {
    out[static_cast<std::size_t>(k)] = image;
    for (std::size_t p = dims_.size(); p-- > 0;) {
      if (++digit[p] < dims_[p]) {
        image += target_strides_[p];
        break;
      }
      image -= (dims_[p] - 1) * target_strides_[p];
      digit[p] = 0;
    }
  }
  return out;
}

}  // namespace qdeloc
