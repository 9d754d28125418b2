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
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qdeloc {

/// Names a subsystem ("T4", "A_I", "X~2"). Labels carry no structure; a
/// composite such as E_A is an ordered list of labels.
using SystemLabel = std::string;

struct Subsystem {
  SystemLabel label;
  std::int64_t dim = 1;

  friend bool operator==(const Subsystem&, const Subsystem&) = default;
  friend auto operator<=>(const Subsystem&, const Subsystem&) = default;
};

/// Ordered list of labeled subsystems defining the basis indexing of a
/// composite space. Indexing is mixed-radix with the first entry most
/// significant: index(i_1..i_n) = ((i_1*d_2 + i_2)*d_3 + ...).
///
/// The empty signature is the trivial one-dimensional space.
class SpaceSignature {
 public:
  SpaceSignature() = default;
  explicit SpaceSignature(std::vector<Subsystem> entries);

  /// All entries two-dimensional.
  static SpaceSignature qubits(const std::vector<SystemLabel>& labels);

  const std::vector<Subsystem>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }
  std::int64_t dim() const { return dim_; }

  std::optional<std::size_t> position(std::string_view label) const;
  bool contains(std::string_view label) const {
    return position(label).has_value();
  }
  std::int64_t dim_of(std::string_view label) const;
  std::vector<SystemLabel> labels() const;
  std::set<SystemLabel> label_set() const;

  /// Place value of the digit at `pos`.
  std::int64_t stride(std::size_t pos) const;

  std::vector<std::int64_t> multi_index(std::int64_t flat) const;
  std::int64_t flat_index(std::span<const std::int64_t> digits) const;

  /// Same (label, dim) pairs irrespective of order.
  bool same_multiset(const SpaceSignature& other) const;

  /// Throws LabelCollision if the two share a label.
  SpaceSignature concat(const SpaceSignature& other) const;
  SpaceSignature without(const std::set<SystemLabel>& labels) const;
  SpaceSignature relabeled(
      const std::map<SystemLabel, SystemLabel>& renames) const;

  std::string to_string() const;

  friend bool operator==(const SpaceSignature& a, const SpaceSignature& b) {
    return a.entries_ == b.entries_;
  }

 private:
  std::vector<Subsystem> entries_;
  std::int64_t dim_ = 1;
};

SpaceSignature make_signature(std::vector<Subsystem> entries);

std::vector<std::int64_t> multi_index(const SpaceSignature& sig,
                                      std::int64_t flat);
std::int64_t flat_index(const SpaceSignature& sig,
                        std::span<const std::int64_t> digits);

/// Maps a flat index under `from` to the flat index of the same labeled
/// basis state under `to`. Both signatures must hold the same multiset.
class IndexPermutation {
 public:
  IndexPermutation(const SpaceSignature& from, const SpaceSignature& to);

  std::int64_t operator()(std::int64_t flat) const {
    if (identity_) return flat;
    std::int64_t out = 0;
    for (std::size_t p = dims_.size(); p-- > 0;) {
      out += (flat % dims_[p]) * target_strides_[p];
      flat /= dims_[p];
    }
    return out;
  }

  bool is_identity() const { return identity_; }

  /// The image of every source index, in source order.
  std::vector<std::int64_t> table() const;

 private:
  std::vector<std::int64_t> dims_;
  std::vector<std::int64_t> target_strides_;
  bool identity_ = true;
};

}  // namespace qdeloc
