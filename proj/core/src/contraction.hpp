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

// Dense tensor-network contraction used by the factored-operator engine.
// A LabeledOperator becomes a tensor with one leg per output label and one
// per input label; a label connects the output leg of one tensor with the
// input leg of another (or the same) tensor.

#include <cstdint>
#include <vector>

#include "qdeloc/linop.hpp"

namespace qdeloc::detail {

struct Leg {
  SystemLabel label;
  bool is_output = false;
  std::int64_t dim = 1;
};

/// Row-major over `legs`.
struct DenseTensor {
  std::vector<Leg> legs;
  std::vector<Complex> data;

  std::int64_t size() const { return static_cast<std::int64_t>(data.size()); }
};

/// Legs are the output labels followed by the input labels, so the data is
/// the row-major flattening of the matrix.
DenseTensor tensor_from_operator(const LabeledOperator& op,
                                 const StoragePolicy& policy);

/// New leg i is old leg order[i].
DenseTensor permute_legs(const DenseTensor& t,
                         const std::vector<std::size_t>& order);

/// Closes every label that has both an output and an input leg on `t`.
DenseTensor close_self_loops(const DenseTensor& t);

/// Sums over every label joining an output leg of one operand to an input
/// leg of the other. Result legs: free legs of a, then free legs of b.
DenseTensor contract_pair(const DenseTensor& a, const DenseTensor& b,
                          const StoragePolicy& policy);

/// Contracts a closed network (every leg paired) to a scalar. Pairs are
/// chosen greedily by smallest intermediate size.
Complex contract_network(std::vector<DenseTensor> tensors,
                         const StoragePolicy& policy);

}  // namespace qdeloc::detail
