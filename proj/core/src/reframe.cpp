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

#include "qdeloc/reframe.hpp"

#include <cmath>
#include <string>

#include "qdeloc/error.hpp"

namespace qdeloc {
namespace {

void require_unitary(const FactoredOperator& op, const StoragePolicy& policy) {
  if (op.in_sig().dim() != op.out_sig().dim()) {
    throw Error(ErrorCode::kNotUnitary,
                "isomorphism changes the total dimension: " +
                    op.in_sig().to_string() + " -> " + op.out_sig().to_string());
  }
  if (!is_unitary(op, kDefaultTolerance, policy)) {
    throw Error(ErrorCode::kNotUnitary, "isomorphism is not unitary");
  }
}

void require_global_match(const SpaceSignature& k_out, const SpaceSignature& k_in,
                          const SubsystemIsomorphism& j) {
  if (!k_out.same_multiset(k_in) || !j.in_sig().same_multiset(k_out)) {
    throw Error(ErrorCode::kSignatureMismatch,
                "isomorphism acts on " + j.in_sig().to_string() +
                    " but the operator is " + k_in.to_string() + " -> " +
                    k_out.to_string());
  }
}

}  // namespace

SubsystemIsomorphism::SubsystemIsomorphism(LabeledOperator op,
                                           const StoragePolicy& policy)
    : SubsystemIsomorphism(FactoredOperator({std::move(op)}), policy) {}

SubsystemIsomorphism::SubsystemIsomorphism(FactoredOperator op,
                                           const StoragePolicy& policy)
    : op_(std::move(op)) {
  require_unitary(op_, policy);
}

SubsystemIsomorphism SubsystemIsomorphism::identity(const SpaceSignature& sig) {
  SubsystemIsomorphism j;
  j.op_ = FactoredOperator({qdeloc::identity(sig)});
  return j;
}

LabeledOperator SubsystemIsomorphism::expanded(const StoragePolicy& policy) const {
  return expand(op_, policy);
}

SubsystemIsomorphism SubsystemIsomorphism::inverse() const {
  SubsystemIsomorphism j;
  j.op_ = op_.adjoint();
  return j;
}

LabeledOperator transform_operator(const LabeledOperator& k,
                                   const SubsystemIsomorphism& j,
                                   const StoragePolicy& policy) {
  require_global_match(k.out_sig(), k.in_sig(), j);
  return conjugate_by(FactoredOperator({k}), j.factored(), policy);
}

LabeledOperator transform_operator(const FactoredOperator& k,
                                   const SubsystemIsomorphism& j,
                                   const StoragePolicy& policy) {
  require_global_match(k.out_sig(), k.in_sig(), j);
  return conjugate_by(k, j.factored(), policy);
}

KrausMap transform_map(const KrausMap& m, const SubsystemIsomorphism& j,
                       const StoragePolicy& policy) {
  std::vector<LabeledOperator> ks;
  ks.reserve(m.size());
  for (const auto& k : m.kraus()) ks.push_back(transform_operator(k, j, policy));
  return KrausMap(std::move(ks));
}

InvarianceReport invariance_check(const KrausMap& m,
                                  const SubsystemIsomorphism& j, double tol,
                                  const StoragePolicy& policy) {
  InvarianceReport r;
  r.before = full_compose(m, m.in_sig().label_set());
  const KrausMap mt = transform_map(m, j, policy);
  r.after = full_compose(mt, j.out_sig().label_set());
  r.difference = std::abs(r.before - r.after);
  r.pass = r.difference <= tol;
  return r;
}

CanonicalForm pointwise_canonicalize(const CircuitDescription& c,
                                     const StoragePolicy& policy) {
  const std::size_t n = c.size();
  if (n < 2) {
    throw Error(ErrorCode::kInvalidCircuit,
                "canonicalization needs a preparation and a final functional");
  }
  std::vector<LabeledOperator> ops;
  for (std::size_t i = 0; i < n; ++i) {
    if (c.steps()[i].size() != 1) {
      throw Error(ErrorCode::kNonUnitaryInterior,
                  "step " + std::to_string(i) + " is not a single Kraus operator");
    }
    ops.push_back(c.steps()[i].kraus().front());
  }
  if (!ops.front().in_sig().empty() || !ops.back().out_sig().empty()) {
    throw Error(ErrorCode::kInvalidCircuit,
                "first step must be a preparation and last a functional");
  }
  // carried[i] is the output space of step i, i < n-1.
  std::vector<SpaceSignature> carried;
  for (std::size_t i = 0; i + 1 < n; ++i) carried.push_back(ops[i].out_sig());
  for (std::size_t i = 1; i < n; ++i) {
    if (!ops[i].in_sig().same_multiset(carried[i - 1])) {
      throw Error(ErrorCode::kInvalidCircuit,
                  "step " + std::to_string(i) + " does not consume the output of step " +
                      std::to_string(i - 1));
    }
    ops[i] = ops[i].aligned(ops[i].out_sig(), carried[i - 1]);
  }
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (carried[i].dim() != carried[0].dim() || !is_unitary(ops[i])) {
      throw Error(ErrorCode::kNonUnitaryInterior,
                  "step " + std::to_string(i) + " is not a unitary on the carried space");
    }
  }

  // W_i : carried[0] -> carried[i].
  std::vector<LabeledOperator> w{identity(carried[0], policy)};
  for (std::size_t i = 1; i + 1 < n; ++i) w.push_back(compose(ops[i], w.back(), policy));

  std::vector<LabeledOperator> blocks, canonical;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const LabeledOperator r = identity_relabel(carried[0], carried[i], policy);
    blocks.push_back(compose(r, adjoint(w[i]), policy));
  }
  canonical.push_back(ops.front());
  for (std::size_t i = 1; i + 1 < n; ++i) {
    canonical.push_back(identity_relabel(carried[i - 1], carried[i], policy));
  }
  const LabeledOperator last_r = identity_relabel(carried[0], carried[n - 2], policy);
  canonical.push_back(
      compose(compose(ops.back(), w.back(), policy), adjoint(last_r), policy));

  CanonicalForm form{SubsystemIsomorphism(FactoredOperator(blocks), policy),
                     FactoredOperator(canonical), FactoredOperator(), 0.0};
  auto conj = conjugate_factorwise(FactoredOperator(ops), form.isomorphism.factored());
  if (!conj) {
    throw Error(ErrorCode::kInvalidCircuit, "circuit steps do not align with carried spaces");
  }
  form.conjugated = std::move(*conj);
  form.distance_bound = factored_distance_bound(form.conjugated, form.canonical);
  return form;
}

}  // namespace qdeloc
