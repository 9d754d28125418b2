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

#include "qdeloc/circuits.hpp"
#include "qdeloc/cpmaps.hpp"
#include "qdeloc/factored.hpp"

namespace qdeloc {

/// Tolerance for probability invariance under a change of decomposition.
inline constexpr double kInvarianceTolerance = 1e-9;

/// A unitary J from the old factorization of a global space (input
/// signature) to a new one (output signature). Kept factored so that
/// products of small blocks are never expanded unless asked.
class SubsystemIsomorphism {
 public:
  /// Throws NotUnitary (including unequal total dimensions).
  explicit SubsystemIsomorphism(LabeledOperator op,
                                const StoragePolicy& policy = {});
  explicit SubsystemIsomorphism(FactoredOperator op,
                                const StoragePolicy& policy = {});
  static SubsystemIsomorphism identity(const SpaceSignature& sig);

  const FactoredOperator& factored() const { return op_; }
  LabeledOperator expanded(const StoragePolicy& policy = {}) const;
  const SpaceSignature& in_sig() const { return op_.in_sig(); }
  const SpaceSignature& out_sig() const { return op_.out_sig(); }
  SubsystemIsomorphism inverse() const;

 private:
  SubsystemIsomorphism() = default;
  FactoredOperator op_;
};

/// J K J^dagger. Throws SignatureMismatch, MemoryBudgetExceeded.
LabeledOperator transform_operator(const LabeledOperator& k,
                                   const SubsystemIsomorphism& j,
                                   const StoragePolicy& policy = {});
LabeledOperator transform_operator(const FactoredOperator& k,
                                   const SubsystemIsomorphism& j,
                                   const StoragePolicy& policy = {});
/// Kraus-wise J K_r J^dagger.
KrausMap transform_map(const KrausMap& m, const SubsystemIsomorphism& j,
                       const StoragePolicy& policy = {});

struct InvarianceReport {
  double before = 0.0;
  double after = 0.0;
  double difference = 0.0;
  bool pass = false;
};

/// Full composition of `m` over its labels against that of the transformed
/// map over the new labels.
InvarianceReport invariance_check(const KrausMap& m,
                                  const SubsystemIsomorphism& j,
                                  double tol = kInvarianceTolerance,
                                  const StoragePolicy& policy = {});

struct CanonicalForm {
  /// One unitary block per carried space, V_i = R_i W_i^dagger, where W_i is
  /// the product of the interior gates up to step i and R_i the positional
  /// identity from the first carried space.
  SubsystemIsomorphism isomorphism;
  /// Preparation, positional identities, final functional <phi| W R^dagger.
  FactoredOperator canonical;
  /// The circuit operator conjugated block by block.
  FactoredOperator conjugated;
  /// Upper bound on ||J K J^dagger - canonical||_F.
  double distance_bound = 0.0;
};

/// The circuit must be a preparation, unitary single-Kraus steps between
/// carried spaces of one dimension, and a final functional, listed in order.
/// Throws NonUnitaryInterior, InvalidCircuit.
CanonicalForm pointwise_canonicalize(const CircuitDescription& c,
                                     const StoragePolicy& policy = {});

}  // namespace qdeloc
