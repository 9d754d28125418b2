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

#include <array>
#include <string>
#include <vector>

#include "qdeloc/circuits.hpp"
#include "qdeloc/factored.hpp"
#include "qdeloc/linop.hpp"
#include "qdeloc/random.hpp"
#include "qdeloc/reframe.hpp"

namespace qdeloc::qswitch {

// Party qubits.
inline const SystemLabel kPhilTarget = "P_O^t";
inline const SystemLabel kPhilControl = "P_O^c";
inline const SystemLabel kAliceIn = "A_I";
inline const SystemLabel kAliceOut = "A_O";
inline const SystemLabel kBobIn = "B_I";
inline const SystemLabel kBobOut = "B_O";
inline const SystemLabel kFionaTarget = "F_I^t";
inline const SystemLabel kFionaControl = "F_I^c";

/// Which party acts at a fixed time in the temporal circuit.
enum class Perspective { kAlice, kBob };

/// Target, control and extra qubit labels: "T3", "C3", "X2" for Alice's
/// perspective and "T~3", "C~3", "X~2" for Bob's.
SystemLabel target(Perspective p, int step);
SystemLabel control(Perspective p, int step);
SystemLabel extra(Perspective p, int index);

/// The eight party qubits in the order P_O^t P_O^c A_I A_O B_I B_O F_I^t F_I^c.
std::vector<SystemLabel> party_labels();
/// X_1..X_4, C_3..C_6 for the given perspective.
std::vector<SystemLabel> environment_labels(Perspective p);

/// Preparation |psi> on [P_O^t, P_O^c], unitaries A_I -> A_O and B_I -> B_O,
/// and a functional <phi| on [F_I^t, F_I^c].
struct SwitchOps {
  LabeledOperator psi;
  LabeledOperator u_a;
  LabeledOperator u_b;
  LabeledOperator phi;

  /// `psi` and `phi` are kets indexed (target, control), target most
  /// significant; `phi` is conjugated into a bra.
  static SwitchOps from_matrices(const Vector& psi, const DenseMatrix& u_a,
                                 const DenseMatrix& u_b, const Vector& phi);
  /// Haar unitaries and Gaussian unit vectors.
  static SwitchOps random(Rng& rng);
  /// |00>, U_A = U_B = 1, <00|.
  static SwitchOps trivial();
};

/// Throws SignatureMismatch, NotUnitary, or OutOfRange (norm off by > 1e-12).
void validate(const SwitchOps& ops);

/// Matrices of Pauli X, Y, Z.
DenseMatrix pauli_x();
DenseMatrix pauli_y();
DenseMatrix pauli_z();

/// U_SW, in [P_O^c, P_O^t, A_O, B_O], out [F_I^c, A_I, B_I, F_I^t].
LabeledOperator u_sw();
/// |psi> (x) U_A (x) U_B (x) <phi| (x) U_SW.
FactoredOperator k_sw(const SwitchOps& ops);
/// The cyclic circuit with one step per party plus U_SW.
CircuitDescription switch_circuit(const SwitchOps& ops);
/// <phi| (|0><0|_c (x) U_B U_A + |1><1|_c (x) U_A U_B) |psi> with plain
/// 4x4 algebra.
Complex switch_amplitude(const SwitchOps& ops);

/// |0><0| (x) 1^{y->y'} (x) 1^{z->z'} + |1><1| (x) 1^{y->z'} (x) 1^{z->y'};
/// in [x, y, z], out [x', y', z']. Throws LabelCollision.
LabeledOperator cswap(const SystemLabel& x, const SystemLabel& y,
                      const SystemLabel& z, const SystemLabel& x_out,
                      const SystemLabel& y_out, const SystemLabel& z_out);

/// The 14 per-time-step Kraus operators of the temporal circuit.
FactoredOperator k_temp(Perspective p, const SwitchOps& ops);
inline FactoredOperator k_temp_a(const SwitchOps& ops) {
  return k_temp(Perspective::kAlice, ops);
}
inline FactoredOperator k_temp_b(const SwitchOps& ops) {
  return k_temp(Perspective::kBob, ops);
}
/// Same circuit grouped into 9 steps: the preparation on [T1, C1], seven
/// gates [T_i, C_i] -> [T_{i+1}, C_{i+1}], and the final functional.
CircuitDescription temporal_circuit(Perspective p, const SwitchOps& ops);

/// J_A and J_B.
SubsystemIsomorphism j_iso(Perspective p);
inline SubsystemIsomorphism j_a() { return j_iso(Perspective::kAlice); }
inline SubsystemIsomorphism j_b() { return j_iso(Perspective::kBob); }

/// R(U_B): [X1, X2, B_I, C6] -> [X3, X4, B_O, C3].
LabeledOperator r_of_ub(const LabeledOperator& u_b);
/// R~(U_A): [X~1, X~2, A_I, C~6] -> [X~3, X~4, A_O, C~3].
LabeledOperator r_tilde_of_ua(const LabeledOperator& u_a);

/// The extended cyclic circuit operator written out factor by factor.
FactoredOperator k_cyc(Perspective p, const SwitchOps& ops);

/// Tr_{C_3..C_6}[R (x) 1^{C3->C4} (x) 1^{C4->C5} (x) 1^{C5->C6}] against
/// U (x) 1^{X1->X3} (x) 1^{X2->X4}.
double control_stage_distance(Perspective p, const LabeledOperator& u);
/// Tr_{X_1..X_4}[CSWAP (x) CSWAP (x) 1^{X1->X3} (x) 1^{X2->X4}] against U_SW.
double routing_stage_distance(Perspective p);

struct ReductionReport {
  /// ||Tr_E[J K_temp J^dagger] - K_SW||_F.
  double distance = 0.0;
  /// ||J K_temp J^dagger - K_cyc||_F.
  double cyc_distance = 0.0;
  double control_stage = 0.0;
  double routing_stage = 0.0;
  bool pass(double tol = 1e-10, double stage_tol = 1e-12) const {
    return distance <= tol && cyc_distance <= tol && control_stage <= stage_tol &&
           routing_stage <= stage_tol;
  }
};

ReductionReport verify_reduction(Perspective p, const SwitchOps& ops,
                                 const StoragePolicy& policy = {});
inline ReductionReport verify_reduction_a(const SwitchOps& ops,
                                          const StoragePolicy& policy = {}) {
  return verify_reduction(Perspective::kAlice, ops, policy);
}
inline ReductionReport verify_reduction_b(const SwitchOps& ops,
                                          const StoragePolicy& policy = {}) {
  return verify_reduction(Perspective::kBob, ops, policy);
}

struct WitnessReport {
  /// Tr[Omega Omega^dagger] for each perspective.
  Complex omega_a;
  Complex omega_b;
  /// Tr[K(sigma_X) K(sigma_X)^dagger], Tr[K(sigma_Y) K(sigma_Y)^dagger], and
  /// Tr[K(sigma_X)^dagger K(sigma_Y)].
  std::array<Complex, 3> terms_a;
  std::array<Complex, 3> terms_b;
};

/// Omega = K(|00>, 1, sigma_X, <00|) + K(|00>, 1, sigma_Y, <00|) for both
/// perspectives.
WitnessReport inequivalence_witness(const StoragePolicy& policy = {});
/// The two summands' operations.
SwitchOps witness_ops(const DenseMatrix& u_b);

struct SimilarityReport {
  /// ||canonical_A - canonical_B||_F after renaming T~i -> Ti, C~i -> Ci.
  double canonical_distance = 0.0;
  /// Bounds on ||J K_temp J^dagger - canonical|| for each perspective.
  double conjugation_bound_a = 0.0;
  double conjugation_bound_b = 0.0;
  /// Tr[K_temp^k] for k = 1..moments.
  std::vector<Complex> moments_a;
  std::vector<Complex> moments_b;
  double max_moment_difference = 0.0;
  bool pass(double tol = 1e-10, double moment_tol = 1e-8) const {
    return canonical_distance <= tol && conjugation_bound_a <= tol &&
           conjugation_bound_b <= tol && max_moment_difference <= moment_tol;
  }
};

SimilarityReport fixed_ops_similarity(const SwitchOps& ops, int moments = 8,
                                      const StoragePolicy& policy = {});

}  // namespace qdeloc::qswitch
