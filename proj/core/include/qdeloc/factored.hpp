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

#include <optional>
#include <utility>
#include <vector>

#include "qdeloc/linop.hpp"

namespace qdeloc {

/// A tensor product of small operators kept unexpanded. No label appears in
/// two factors' outputs or in two factors' inputs; a label may be the output
/// of one factor and the input of another, which is how a circuit chain is
/// wired. The implied global signatures are the concatenations of the factor
/// signatures.
class FactoredOperator {
 public:
  FactoredOperator() = default;
  explicit FactoredOperator(std::vector<LabeledOperator> factors);

  const std::vector<LabeledOperator>& factors() const { return factors_; }
  std::size_t size() const { return factors_.size(); }
  const SpaceSignature& out_sig() const { return out_; }
  const SpaceSignature& in_sig() const { return in_; }

  /// Exact nonzero count of the expansion (product of factor counts).
  long double estimated_nnz() const;

  FactoredOperator relabeled(
      const std::map<SystemLabel, SystemLabel>& renames) const;
  FactoredOperator adjoint() const;

 private:
  std::vector<LabeledOperator> factors_;
  SpaceSignature out_;
  SpaceSignature in_;
};

/// Linear combination of factored operators, e.g. a sum of two circuit
/// operators. Never compressed.
struct FactoredSum {
  std::vector<std::pair<Complex, FactoredOperator>> terms;
};

/// Full trace by contracting the label graph; closes cycles too.
/// Requires equal global in/out multisets.
Complex chain_trace(const FactoredOperator& f, const StoragePolicy& policy = {});

/// Tr[K^k] for a square factored K, computed as the chain trace of k
/// relabelled copies with copy j's outputs feeding copy j+1's inputs.
Complex trace_moment(const FactoredOperator& f, int k,
                     const StoragePolicy& policy = {});

/// Factor i of `a` and factor i of `b` have the same in/out label multisets.
bool aligned_structure(const FactoredOperator& a, const FactoredOperator& b);

/// Tr[a^dagger b]: product of per-factor inner products when the structures
/// align, otherwise via sparse expansion under the memory guard.
Complex factored_hs_inner(const FactoredOperator& a, const FactoredOperator& b,
                          const StoragePolicy& policy = {});
/// Bilinear expansion over the terms.
Complex factored_hs_inner(const FactoredSum& a, const FactoredSum& b,
                          const StoragePolicy& policy = {});

/// Global operator; signature order is the concatenation of the factors'.
/// Throws MemoryBudgetExceeded with the estimated requirement.
LabeledOperator expand(const FactoredOperator& f,
                       const StoragePolicy& policy = {});
LabeledOperator expand(const FactoredSum& s, const StoragePolicy& policy = {});

/// Upper bound on ||a - b||_F for aligned structures:
/// sum_i ||a_i - b_i|| prod_{j != i} max(||a_j||, ||b_j||).
double factored_distance_bound(const FactoredOperator& a,
                               const FactoredOperator& b);

/// J K J^dagger computed factor by factor. Applies when every factor of `j`
/// has the label set of some factor's outputs of `k` and of some factor's
/// inputs of `k` (empty sets need no J factor); returns nullopt otherwise.
std::optional<FactoredOperator> conjugate_factorwise(const FactoredOperator& k,
                                                     const FactoredOperator& j);

/// J K J^dagger for a square K. Throws NotUnitary, SignatureMismatch,
/// MemoryBudgetExceeded. A J with one nonzero per row and column is applied
/// by remapping entries; otherwise sparse products are used.
LabeledOperator conjugate_by(const FactoredOperator& k,
                             const FactoredOperator& j,
                             const StoragePolicy& policy = {});
LabeledOperator conjugate_by(const LabeledOperator& k, const LabeledOperator& j,
                             const StoragePolicy& policy = {});

/// Every factor unitary, or else the expansion is.
bool is_unitary(const FactoredOperator& j, double tol = kDefaultTolerance,
                const StoragePolicy& policy = {});

}  // namespace qdeloc
