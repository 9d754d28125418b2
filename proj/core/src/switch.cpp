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

#include "qdeloc/switch.hpp"

#include <cmath>
#include <set>

#include "qdeloc/error.hpp"

namespace qdeloc::qswitch {
namespace {

constexpr double kNormTolerance = 1e-12;

LabeledOperator wire(const SystemLabel& from, const SystemLabel& to) {
  return identity_relabel(Subsystem{from, 2}, Subsystem{to, 2});
}

LabeledOperator id(const SystemLabel& label) {
  return identity(SpaceSignature({{label, 2}}));
}

LabeledOperator tensor_all(std::initializer_list<LabeledOperator> ops) {
  return tensor(std::span<const LabeledOperator>(ops.begin(), ops.size()));
}

// U^{x->y} = 1^{O->y} U 1^{x->I}.
LabeledOperator routed(const LabeledOperator& u, const SystemLabel& x,
                       const SystemLabel& y) {
  return u.relabeled_in({{u.in_sig().labels().front(), x}})
      .relabeled_out({{u.out_sig().labels().front(), y}});
}

// |0>^{c'}<0|^{c} (x) op0 + |1>^{c'}<1|^{c} (x) op1, ordered [c', t'] <- [c, t].
LabeledOperator controlled(const SystemLabel& c_in, const SystemLabel& c_out,
                           const LabeledOperator& op0,
                           const LabeledOperator& op1) {
  return add(tensor(ketbra(c_out, 0, c_in, 0), op0),
             tensor(ketbra(c_out, 1, c_in, 1), op1));
}

LabeledOperator qubit_unitary(const LabeledOperator& u, const SystemLabel& in,
                              const SystemLabel& out, const char* name) {
  if (u.in_sig() != SpaceSignature({{in, 2}}) ||
      u.out_sig() != SpaceSignature({{out, 2}})) {
    throw Error(ErrorCode::kSignatureMismatch,
                std::string(name) + " must map " + in + " to " + out + ", got " +
                    u.in_sig().to_string() + " -> " + u.out_sig().to_string());
  }
  if (!is_unitary(u)) {
    throw Error(ErrorCode::kNotUnitary, std::string(name) + " is not unitary");
  }
  return u;
}

std::string tilde(Perspective p) { return p == Perspective::kBob ? "~" : ""; }

// Fixed and time-delocalised party unitaries.
struct Roles {
  LabeledOperator fixed;
  LabeledOperator roaming;
};

Roles roles(Perspective p, const SwitchOps& ops) {
  return p == Perspective::kAlice ? Roles{ops.u_a, ops.u_b}
                                  : Roles{ops.u_b, ops.u_a};
}

std::pair<SystemLabel, SystemLabel> fixed_party(Perspective p) {
  return p == Perspective::kAlice ? std::pair{kAliceIn, kAliceOut}
                                  : std::pair{kBobIn, kBobOut};
}

LabeledOperator conditioned_gate(Perspective p, const SwitchOps& ops, int from,
                                 bool early) {
  const auto T = [&](int i) { return target(p, i); };
  const auto C = [&](int i) { return control(p, i); };
  const LabeledOperator u = routed(roles(p, ops).roaming, T(from), T(from + 1));
  const LabeledOperator one = wire(T(from), T(from + 1));
  // Alice's perspective: control 1 meets U_B early, control 0 late.
  // Bob's perspective: control 0 meets U_A early, control 1 late.
  const bool zero_branch_acts = (p == Perspective::kAlice) != early;
  return controlled(C(from), C(from + 1), zero_branch_acts ? u : one,
                    zero_branch_acts ? one : u);
}

LabeledOperator prep(Perspective p, const SwitchOps& ops) {
  return ops.psi.relabeled_out(
      {{kPhilTarget, target(p, 1)}, {kPhilControl, control(p, 1)}});
}

LabeledOperator effect(Perspective p, const SwitchOps& ops) {
  return ops.phi.relabeled_in(
      {{kFionaTarget, target(p, 8)}, {kFionaControl, control(p, 8)}});
}

// u_on_first_cross puts the unitary on the C6=1 -> C3=0 branch.
LabeledOperator r_generic(Perspective p, const LabeledOperator& u,
                          const SystemLabel& party_in,
                          const SystemLabel& party_out, bool u_on_first_cross) {
  const auto X = [&](int i) { return extra(p, i); };
  const SystemLabel c3 = control(p, 3), c6 = control(p, 6);
  const LabeledOperator plain = tensor(wire(X(1), party_out), wire(party_in, X(3)));
  const LabeledOperator with_u =
      tensor(routed(u, party_in, X(3)), routed(u, X(1), party_out));
  const LabeledOperator straight = tensor(wire(X(1), X(3)), u);

  LabeledOperator r = tensor_all({ketbra(c3, 0, c6, 0), ketbra(X(4), 0, X(2), 0), straight});
  r = add(r, tensor_all({ketbra(c3, 0, c6, 1), ketbra(X(4), 1, X(2), 0),
                         u_on_first_cross ? with_u : plain}));
  r = add(r, tensor_all({ketbra(c3, 1, c6, 0), ketbra(X(4), 0, X(2), 1),
                         u_on_first_cross ? plain : with_u}));
  r = add(r, tensor_all({ketbra(c3, 1, c6, 1), ketbra(X(4), 1, X(2), 1), straight}));
  const SpaceSignature out = SpaceSignature::qubits({X(3), X(4), party_out, c3});
  const SpaceSignature in = SpaceSignature::qubits({X(1), X(2), party_in, c6});
  return r.aligned(out, in);
}

LabeledOperator r_of(Perspective p, const SwitchOps& ops) {
  return p == Perspective::kAlice ? r_of_ub(ops.u_b) : r_tilde_of_ua(ops.u_a);
}

LabeledOperator first_cswap(Perspective p) {
  // Alice: CSWAP^{P_O^c P_O^t A_O -> X2 X1 B_I};
  // Bob:   CSWAP^{P_O^c P_O^t B_O -> X~2 A_I X~1}.
  if (p == Perspective::kAlice) {
    return cswap(kPhilControl, kPhilTarget, kAliceOut, extra(p, 2), extra(p, 1),
                 kBobIn);
  }
  return cswap(kPhilControl, kPhilTarget, kBobOut, extra(p, 2), kAliceIn,
               extra(p, 1));
}

LabeledOperator second_cswap(Perspective p) {
  // Alice: CSWAP^{X4 X3 B_O -> F_I^c A_I F_I^t};
  // Bob:   CSWAP^{X~4 A_O X~3 -> F_I^c B_I F_I^t}.
  if (p == Perspective::kAlice) {
    return cswap(extra(p, 4), extra(p, 3), kBobOut, kFionaControl, kAliceIn,
                 kFionaTarget);
  }
  return cswap(extra(p, 4), kAliceOut, extra(p, 3), kFionaControl, kBobIn,
               kFionaTarget);
}

FactoredOperator control_chain(Perspective p, const LabeledOperator& r) {
  return FactoredOperator({r, wire(control(p, 3), control(p, 4)),
                           wire(control(p, 4), control(p, 5)),
                           wire(control(p, 5), control(p, 6))});
}

}  // namespace

SystemLabel target(Perspective p, int step) {
  return "T" + tilde(p) + std::to_string(step);
}
SystemLabel control(Perspective p, int step) {
  return "C" + tilde(p) + std::to_string(step);
}
SystemLabel extra(Perspective p, int index) {
  return "X" + tilde(p) + std::to_string(index);
}

std::vector<SystemLabel> party_labels() {
  return {kPhilTarget, kPhilControl, kAliceIn,     kAliceOut,
          kBobIn,      kBobOut,      kFionaTarget, kFionaControl};
}

std::vector<SystemLabel> environment_labels(Perspective p) {
  return {extra(p, 1),   extra(p, 2),   extra(p, 3),   extra(p, 4),
          control(p, 3), control(p, 4), control(p, 5), control(p, 6)};
}

SwitchOps SwitchOps::from_matrices(const Vector& psi, const DenseMatrix& u_a,
                                   const DenseMatrix& u_b, const Vector& phi) {
  SwitchOps ops;
  ops.psi = ket(SpaceSignature::qubits({kPhilTarget, kPhilControl}), psi);
  ops.u_a = single_system(u_a, kAliceIn, kAliceOut);
  ops.u_b = single_system(u_b, kBobIn, kBobOut);
  ops.phi = bra(SpaceSignature::qubits({kFionaTarget, kFionaControl}), phi);
  validate(ops);
  return ops;
}

SwitchOps SwitchOps::random(Rng& rng) {
  const Vector psi = random_state(4, rng);
  const DenseMatrix ua = haar_unitary(2, rng);
  const DenseMatrix ub = haar_unitary(2, rng);
  const Vector phi = random_state(4, rng);
  return from_matrices(psi, ua, ub, phi);
}

SwitchOps SwitchOps::trivial() {
  const Vector zero = Vector::Unit(4, 0);
  const DenseMatrix one = DenseMatrix::Identity(2, 2);
  return from_matrices(zero, one, one, zero);
}

void validate(const SwitchOps& ops) {
  const SpaceSignature p = SpaceSignature::qubits({kPhilTarget, kPhilControl});
  const SpaceSignature f = SpaceSignature::qubits({kFionaTarget, kFionaControl});
  if (!ops.psi.out_sig().same_multiset(p) || !ops.psi.in_sig().empty()) {
    throw Error(ErrorCode::kSignatureMismatch,
                "psi must be a ket on " + p.to_string());
  }
  if (!ops.phi.in_sig().same_multiset(f) || !ops.phi.out_sig().empty()) {
    throw Error(ErrorCode::kSignatureMismatch,
                "phi must be a bra on " + f.to_string());
  }
  qubit_unitary(ops.u_a, kAliceIn, kAliceOut, "U_A");
  qubit_unitary(ops.u_b, kBobIn, kBobOut, "U_B");
  for (const auto* v : {&ops.psi, &ops.phi}) {
    if (std::abs(frobenius_norm(*v) - 1.0) > kNormTolerance) {
      throw Error(ErrorCode::kOutOfRange, "preparation and effect must have unit norm");
    }
  }
}

DenseMatrix pauli_x() {
  DenseMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

DenseMatrix pauli_y() {
  DenseMatrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

DenseMatrix pauli_z() {
  DenseMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

LabeledOperator u_sw() {
  const LabeledOperator first =
      tensor_all({ketbra(kFionaControl, 0, kPhilControl, 0), wire(kPhilTarget, kAliceIn),
                  wire(kAliceOut, kBobIn), wire(kBobOut, kFionaTarget)});
  const LabeledOperator second =
      tensor_all({ketbra(kFionaControl, 1, kPhilControl, 1), wire(kPhilTarget, kBobIn),
                  wire(kBobOut, kAliceIn), wire(kAliceOut, kFionaTarget)});
  return add(first, second)
      .aligned(SpaceSignature::qubits({kFionaControl, kAliceIn, kBobIn, kFionaTarget}),
               SpaceSignature::qubits({kPhilControl, kPhilTarget, kAliceOut, kBobOut}));
}

FactoredOperator k_sw(const SwitchOps& ops) {
  validate(ops);
  return FactoredOperator({ops.psi, ops.u_a, ops.u_b, ops.phi, u_sw()});
}

CircuitDescription switch_circuit(const SwitchOps& ops) {
  validate(ops);
  return CircuitDescription({KrausMap({ops.psi}), KrausMap({ops.u_a}),
                             KrausMap({ops.u_b}), KrausMap({ops.phi}),
                             KrausMap({u_sw()})});
}

Complex switch_amplitude(const SwitchOps& ops) {
  validate(ops);
  const SpaceSignature p = SpaceSignature::qubits({kPhilTarget, kPhilControl});
  const SpaceSignature f = SpaceSignature::qubits({kFionaTarget, kFionaControl});
  const Vector psi = ops.psi.aligned(p, {}).to_dense().col(0);
  const Eigen::RowVectorXcd phi = ops.phi.aligned({}, f).to_dense().row(0);
  const DenseMatrix ua = ops.u_a.to_dense();
  const DenseMatrix ub = ops.u_b.to_dense();
  const DenseMatrix orders[2] = {ub * ua, ua * ub};
  // Index (t, c) -> 2t + c.
  Complex amp = 0.0;
  for (int c = 0; c < 2; ++c) {
    for (int t_out = 0; t_out < 2; ++t_out) {
      for (int t_in = 0; t_in < 2; ++t_in) {
        amp += phi(2 * t_out + c) * orders[c](t_out, t_in) * psi(2 * t_in + c);
      }
    }
  }
  return amp;
}

LabeledOperator cswap(const SystemLabel& x, const SystemLabel& y,
                      const SystemLabel& z, const SystemLabel& x_out,
                      const SystemLabel& y_out, const SystemLabel& z_out) {
  const std::set<SystemLabel> all{x, y, z, x_out, y_out, z_out};
  if (all.size() != 6) {
    throw Error(ErrorCode::kLabelCollision, "CSWAP needs six distinct labels");
  }
  const LabeledOperator keep =
      tensor_all({ketbra(x_out, 0, x, 0), wire(y, y_out), wire(z, z_out)});
  const LabeledOperator swap =
      tensor_all({ketbra(x_out, 1, x, 1), wire(y, z_out), wire(z, y_out)});
  return add(keep, swap).aligned(SpaceSignature::qubits({x_out, y_out, z_out}),
                                 SpaceSignature::qubits({x, y, z}));
}

FactoredOperator k_temp(Perspective p, const SwitchOps& ops) {
  validate(ops);
  const auto T = [&](int i) { return target(p, i); };
  const auto C = [&](int i) { return control(p, i); };
  return FactoredOperator({
      prep(p, ops),
      wire(T(1), T(2)),
      wire(C(1), C(2)),
      conditioned_gate(p, ops, 2, /*early=*/true),
      wire(T(3), T(4)),
      wire(C(3), C(4)),
      routed(roles(p, ops).fixed, T(4), T(5)),
      wire(C(4), C(5)),
      wire(T(5), T(6)),
      wire(C(5), C(6)),
      conditioned_gate(p, ops, 6, /*early=*/false),
      wire(T(7), T(8)),
      wire(C(7), C(8)),
      effect(p, ops),
  });
}

CircuitDescription temporal_circuit(Perspective p, const SwitchOps& ops) {
  validate(ops);
  const auto T = [&](int i) { return target(p, i); };
  const auto C = [&](int i) { return control(p, i); };
  const auto step_sig = [&](int i) { return SpaceSignature::qubits({T(i), C(i)}); };
  std::vector<KrausMap> steps{KrausMap({prep(p, ops).aligned(step_sig(1), {})})};
  for (int i = 1; i < 8; ++i) {
    LabeledOperator g;
    if (i == 2 || i == 6) {
      g = conditioned_gate(p, ops, i, i == 2);
    } else if (i == 4) {
      g = tensor(routed(roles(p, ops).fixed, T(4), T(5)), wire(C(4), C(5)));
    } else {
      g = tensor(wire(T(i), T(i + 1)), wire(C(i), C(i + 1)));
    }
    steps.emplace_back(std::vector<LabeledOperator>{g.aligned(step_sig(i + 1), step_sig(i))});
  }
  steps.emplace_back(std::vector<LabeledOperator>{effect(p, ops).aligned({}, step_sig(8))});
  return CircuitDescription(std::move(steps));
}

SubsystemIsomorphism j_iso(Perspective p) {
  const auto T = [&](int i) { return target(p, i); };
  const auto C = [&](int i) { return control(p, i); };
  const auto X = [&](int i) { return extra(p, i); };
  const auto [fin, fout] = fixed_party(p);
  std::vector<LabeledOperator> f{wire(T(1), kPhilTarget), wire(C(1), kPhilControl)};
  if (p == Perspective::kAlice) {
    f.push_back(cswap(C(2), T(2), T(6), X(2), X(1), kBobIn));
    f.push_back(cswap(C(7), T(3), T(7), X(4), X(3), kBobOut));
  } else {
    f.push_back(cswap(C(2), T(2), T(6), X(2), kAliceIn, X(1)));
    f.push_back(cswap(C(7), T(3), T(7), X(4), kAliceOut, X(3)));
  }
  f.push_back(wire(T(4), fin));
  f.push_back(wire(T(5), fout));
  f.push_back(wire(T(8), kFionaTarget));
  f.push_back(wire(C(8), kFionaControl));
  for (int i = 3; i <= 6; ++i) f.push_back(id(C(i)));
  return SubsystemIsomorphism(FactoredOperator(std::move(f)));
}

LabeledOperator r_of_ub(const LabeledOperator& u_b) {
  qubit_unitary(u_b, kBobIn, kBobOut, "U_B");
  return r_generic(Perspective::kAlice, u_b, kBobIn, kBobOut, false);
}

LabeledOperator r_tilde_of_ua(const LabeledOperator& u_a) {
  qubit_unitary(u_a, kAliceIn, kAliceOut, "U_A");
  return r_generic(Perspective::kBob, u_a, kAliceIn, kAliceOut, true);
}

FactoredOperator k_cyc(Perspective p, const SwitchOps& ops) {
  validate(ops);
  const auto C = [&](int i) { return control(p, i); };
  const LabeledOperator fixed = roles(p, ops).fixed;
  return FactoredOperator({ops.psi, first_cswap(p), r_of(p, ops), second_cswap(p),
                           wire(C(3), C(4)), fixed, wire(C(4), C(5)),
                           wire(C(5), C(6)), ops.phi});
}

double control_stage_distance(Perspective p, const LabeledOperator& u) {
  const LabeledOperator r = p == Perspective::kAlice ? r_of_ub(u) : r_tilde_of_ua(u);
  const std::set<SystemLabel> cs{control(p, 3), control(p, 4), control(p, 5),
                                 control(p, 6)};
  const LabeledOperator reduced = partial_trace(expand(control_chain(p, r)), cs);
  const LabeledOperator expected =
      tensor_all({u, wire(extra(p, 1), extra(p, 3)), wire(extra(p, 2), extra(p, 4))});
  return frobenius_distance(reduced, expected);
}

double routing_stage_distance(Perspective p) {
  const auto X = [&](int i) { return extra(p, i); };
  const FactoredOperator chain({first_cswap(p), second_cswap(p), wire(X(1), X(3)),
                                wire(X(2), X(4))});
  const LabeledOperator reduced =
      partial_trace(expand(chain), {X(1), X(2), X(3), X(4)});
  return frobenius_distance(reduced, u_sw());
}

ReductionReport verify_reduction(Perspective p, const SwitchOps& ops,
                                 const StoragePolicy& policy) {
  ReductionReport r;
  const LabeledOperator cyc = transform_operator(k_temp(p, ops), j_iso(p), policy);
  StoragePolicy sparse = policy;
  sparse.force_dense = false;
  r.cyc_distance = frobenius_distance(cyc, expand(k_cyc(p, ops), sparse));
  const auto env = environment_labels(p);
  const LabeledOperator reduced =
      partial_trace(cyc, std::set<SystemLabel>(env.begin(), env.end()), policy);
  r.distance = frobenius_distance(reduced, expand(k_sw(ops), policy));
  r.control_stage = control_stage_distance(
      p, p == Perspective::kAlice ? ops.u_b : ops.u_a);
  r.routing_stage = routing_stage_distance(p);
  return r;
}

SwitchOps witness_ops(const DenseMatrix& u_b) {
  const Vector zero = Vector::Unit(4, 0);
  return SwitchOps::from_matrices(zero, DenseMatrix::Identity(2, 2), u_b, zero);
}

WitnessReport inequivalence_witness(const StoragePolicy& policy) {
  WitnessReport w;
  const SwitchOps x = witness_ops(pauli_x());
  const SwitchOps y = witness_ops(pauli_y());
  for (Perspective p : {Perspective::kAlice, Perspective::kBob}) {
    const FactoredOperator kx = k_temp(p, x);
    const FactoredOperator ky = k_temp(p, y);
    const FactoredSum omega{{{1.0, kx}, {1.0, ky}}};
    const std::array<Complex, 3> terms{factored_hs_inner(kx, kx, policy),
                                       factored_hs_inner(ky, ky, policy),
                                       factored_hs_inner(kx, ky, policy)};
    const Complex total = factored_hs_inner(omega, omega, policy);
    if (p == Perspective::kAlice) {
      w.omega_a = total;
      w.terms_a = terms;
    } else {
      w.omega_b = total;
      w.terms_b = terms;
    }
  }
  return w;
}

SimilarityReport fixed_ops_similarity(const SwitchOps& ops, int moments,
                                      const StoragePolicy& policy) {
  SimilarityReport s;
  const CanonicalForm a =
      pointwise_canonicalize(temporal_circuit(Perspective::kAlice, ops), policy);
  const CanonicalForm b =
      pointwise_canonicalize(temporal_circuit(Perspective::kBob, ops), policy);
  s.conjugation_bound_a = a.distance_bound;
  s.conjugation_bound_b = b.distance_bound;

  std::map<SystemLabel, SystemLabel> untilde;
  for (int i = 1; i <= 8; ++i) {
    untilde[target(Perspective::kBob, i)] = target(Perspective::kAlice, i);
    untilde[control(Perspective::kBob, i)] = control(Perspective::kAlice, i);
  }
  StoragePolicy sparse = policy;
  sparse.force_dense = false;
  s.canonical_distance = frobenius_distance(
      expand(a.canonical, sparse), expand(b.canonical.relabeled(untilde), sparse));

  const FactoredOperator ka = k_temp_a(ops);
  const FactoredOperator kb = k_temp_b(ops);
  for (int k = 1; k <= moments; ++k) {
    s.moments_a.push_back(trace_moment(ka, k, policy));
    s.moments_b.push_back(trace_moment(kb, k, policy));
    s.max_moment_difference =
        std::max(s.max_moment_difference, std::abs(s.moments_a.back() - s.moments_b.back()));
  }
  return s;
}

}  // namespace qdeloc::qswitch
