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

#include <map>
#include <set>
#include <span>
#include <vector>

#include "qdeloc/factored.hpp"
#include "qdeloc/linop.hpp"

namespace qdeloc {

/// Tolerance for trace-preservation and trace-increase checks (operator norm).
inline constexpr double kTraceTolerance = 1e-8;
/// Smallest eigenvalue accepted as positive semidefinite.
inline constexpr double kPsdTolerance = 1e-10;

/// A CP map given by a nonempty Kraus family. Every Kraus operator shares the
/// same input and output signatures (reordered to the first one's on
/// construction).
///
/// The constructor checks signatures only; trace-nonincrease is checked by
/// validate() or by constructing through checked().
class KrausMap {
 public:
  explicit KrausMap(std::vector<LabeledOperator> kraus);
  static KrausMap checked(std::vector<LabeledOperator> kraus);

  const std::vector<LabeledOperator>& kraus() const { return kraus_; }
  const SpaceSignature& in_sig() const { return kraus_.front().in_sig(); }
  const SpaceSignature& out_sig() const { return kraus_.front().out_sig(); }
  std::size_t size() const { return kraus_.size(); }

  KrausMap relabeled(const std::map<SystemLabel, SystemLabel>& renames) const;

 private:
  std::vector<LabeledOperator> kraus_;
};

struct MapValidation {
  /// Extreme eigenvalues of sum_r K_r^dagger K_r.
  double max_eigenvalue = 0.0;
  double min_eigenvalue = 0.0;
  /// ||sum K^dagger K - 1|| in operator norm.
  double deviation = 0.0;
  bool trace_preserving = false;
};

/// Throws TraceIncreasing when the largest eigenvalue of sum K^dagger K
/// exceeds 1 by more than `tol`.
MapValidation validate(const KrausMap& m, double tol = kTraceTolerance);
/// Same measurements without throwing.
MapValidation inspect(const KrausMap& m, double tol = kTraceTolerance);

/// sum_r K_r rho K_r^dagger.
LabeledOperator apply(const KrausMap& m, const LabeledOperator& rho,
                      const StoragePolicy& policy = {});

/// Kraus operators are all tensor products choosing one Kraus operator per
/// map. Throws LabelCollision.
KrausMap tensor_maps(std::span<const KrausMap> maps,
                     const StoragePolicy& policy = {});

/// Feeds output `label` back into input `label`: Kraus family
/// {Tr_label[K_r]}. Throws LabelAbsent.
KrausMap partial_compose(const KrausMap& m, const SystemLabel& label);
KrausMap partial_compose(const KrausMap& m, const std::set<SystemLabel>& labels);

/// The same composition evaluated through the maximally entangled vector:
/// <<1|^{XX'} [M (x) I^{X'}](sigma (x) |1>><<1|^{XX'}) |1>>^{XX'}.
LabeledOperator partial_compose_sandwich(const KrausMap& m,
                                         const SystemLabel& label,
                                         const LabeledOperator& sigma);

/// sum_r |Tr K_r|^2 over all labels.
double full_compose(const KrausMap& m);
/// `labels` must be every label of the map; throws SignatureMismatch otherwise.
double full_compose(const KrausMap& m, const std::set<SystemLabel>& labels);
/// Full composition of the tensor product of `steps` without forming it:
/// the Cartesian product of Kraus indices is enumerated lazily and each
/// product operator is traced by contraction.
double full_compose(std::span<const KrausMap> steps,
                    const StoragePolicy& policy = {});
/// All labels contracted through <<1| (M (x) I)(|1>><<1|) |1>>.
double full_compose_sandwich(const KrausMap& m);

struct ConsistencyReport {
  bool sum_trace_preserving = false;
  double trace_deviation = 0.0;
  double composition = 0.0;
  double complementary = 0.0;
  bool compositions_sum_to_one = false;
  bool consistent() const {
    return sum_trace_preserving && compositions_sum_to_one;
  }
};

/// M + M_comp trace-preserving and C[M] + C[M_comp] = 1, each within 1e-8.
ConsistencyReport consistency_check(const KrausMap& m, const KrausMap& m_comp,
                                    const std::set<SystemLabel>& labels);

/// Choi matrix sum_r |K_r>><<K_r| on output (x) input-copy. An input label
/// keeps its name unless it collides with an output label, in which case it
/// gets primes appended.
struct ChoiMatrix {
  LabeledOperator matrix;
  SpaceSignature output;
  SpaceSignature input_copy;
  std::map<SystemLabel, SystemLabel> copy_of;  // input label -> copy label

  bool is_psd(double tol = kPsdTolerance) const;
  /// Tr_out[C]; equals (sum K^dagger K)^T on the input copy.
  LabeledOperator input_marginal() const;
};

ChoiMatrix choi(const KrausMap& m);

/// Probability of the cyclic circuit W (x) M_A (x) M_B, with W mapping the
/// parties' outputs to their inputs. Kraus path.
double link_probability(const KrausMap& w, const KrausMap& ma,
                        const KrausMap& mb);
/// Same probability as the link product Tr[C_W C_AB^T] of Choi matrices.
double link_probability_choi(const KrausMap& w, const KrausMap& ma,
                             const KrausMap& mb);

}  // namespace qdeloc
