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

// Acceptance gate: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "qdeloc/circuits.hpp"
#include "qdeloc/cpmaps.hpp"
#include "qdeloc/error.hpp"
#include "qdeloc/factored.hpp"
#include "qdeloc/random.hpp"
#include "qdeloc/reframe.hpp"
#include "qdeloc/switch.hpp"

namespace {

using namespace qdeloc;
using qswitch::Perspective;
using qswitch::SwitchOps;
using Clock = std::chrono::steady_clock;

constexpr double kWitnessTol = 1e-6;
constexpr double kWitnessImagTol = 1e-9;
constexpr double kReductionTol = 1e-10;
constexpr double kReductionSeconds = 300.0;
constexpr double kStageTol = 1e-12;
constexpr double kChainTol = 1e-12;
constexpr double kSandwichTol = 1e-11;
constexpr double kInvarianceTol = 1e-9;
constexpr double kCanonicalTol = 1e-10;
constexpr double kMomentTol = 1e-8;
constexpr double kAmplitudeTol = 1e-12;
constexpr double kUnitaryTol = 1e-10;
constexpr double kInnerTol = 1e-10;

constexpr int kReductionSamples = 100;
constexpr int kChainSamples = 50;
constexpr int kCompositionSamples = 50;
constexpr int kReframeSamples = 50;
constexpr int kSimilaritySamples = 25;
constexpr int kAmplitudeSamples = 200;
constexpr int kUnitarySamples = 50;
constexpr int kInnerSamples = 50;

struct Outcome {
  bool pass = true;
  std::string detail;
};

int uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

LabeledOperator gaussian_op(const SpaceSignature& out, const SpaceSignature& in,
                            Rng& rng) {
  DenseMatrix m = random_gaussian(out.dim(), in.dim(), rng);
  return LabeledOperator(out, in, DenseMatrix(m / m.norm()));
}

// Closed-form switch amplitude with (target, control) ordering.
Complex switch_oracle(const Vector& psi, const DenseMatrix& ua,
                      const DenseMatrix& ub, const Vector& phi) {
  DenseMatrix p0 = DenseMatrix::Zero(2, 2), p1 = DenseMatrix::Zero(2, 2);
  p0(0, 0) = 1.0;
  p1(1, 1) = 1.0;
  const DenseMatrix ab = ub * ua, ba = ua * ub;
  DenseMatrix m(4, 4);
  for (int t = 0; t < 2; ++t) {
    for (int c = 0; c < 2; ++c) {
      for (int t2 = 0; t2 < 2; ++t2) {
        for (int c2 = 0; c2 < 2; ++c2) {
          m(t * 2 + c, t2 * 2 + c2) = ab(t, t2) * p0(c, c2) + ba(t, t2) * p1(c, c2);
        }
      }
    }
  }
  return phi.dot(m * psi);
}

struct RandomOps {
  Vector psi, phi;
  DenseMatrix ua, ub;
  SwitchOps ops;
};

RandomOps random_ops(Rng& rng) {
  RandomOps r;
  r.psi = random_state(4, rng);
  r.ua = haar_unitary(2, rng);
  r.ub = haar_unitary(2, rng);
  r.phi = random_state(4, rng);
  r.ops = SwitchOps::from_matrices(r.psi, r.ua, r.ub, r.phi);
  return r;
}

Outcome witness() {
  const auto w = qswitch::inequivalence_witness();
  Outcome o;
  o.pass = std::abs(w.omega_a.real() - 40960.0) <= kWitnessTol &&
           std::abs(w.omega_b.real() - 32768.0) <= kWitnessTol &&
           std::abs(w.omega_a.imag()) <= kWitnessImagTol &&
           std::abs(w.omega_b.imag()) <= kWitnessImagTol;
  std::ostringstream s;
  s.precision(12);
  s << "Tr[OA OA^+]=" << w.omega_a.real() << " Tr[OB OB^+]=" << w.omega_b.real()
    << " imag=(" << fmt(w.omega_a.imag()) << ", " << fmt(w.omega_b.imag()) << ")";
  o.detail = s.str();
  return o;
}

Outcome reduction() {
  Rng rng(2024);
  double worst_a = 0.0, worst_b = 0.0, worst_cyc = 0.0;
  const auto start = Clock::now();
  for (int i = 0; i < kReductionSamples; ++i) {
    const auto r = random_ops(rng);
    const auto a = qswitch::verify_reduction_a(r.ops);
    const auto b = qswitch::verify_reduction_b(r.ops);
    worst_a = std::max(worst_a, a.distance);
    worst_b = std::max(worst_b, b.distance);
    worst_cyc = std::max({worst_cyc, a.cyc_distance, b.cyc_distance});
  }
  const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
  Outcome o;
  o.pass = worst_a <= kReductionTol && worst_b <= kReductionTol &&
           worst_cyc <= kReductionTol && seconds < kReductionSeconds;
  o.detail = std::to_string(kReductionSamples) + " samples per perspective, max dist A=" +
             fmt(worst_a) + " B=" + fmt(worst_b) + " cyc=" + fmt(worst_cyc) + ", " +
             fmt(seconds) + " s";
  return o;
}

Outcome stages() {
  Rng rng(7);
  double worst_control = 0.0, worst_routing = 0.0;
  for (auto p : {Perspective::kAlice, Perspective::kBob}) {
    worst_routing = std::max(worst_routing, qswitch::routing_stage_distance(p));
    for (int i = 0; i < 10; ++i) {
      const DenseMatrix u = haar_unitary(2, rng);
      const auto op = p == Perspective::kAlice
                          ? single_system(u, qswitch::kBobIn, qswitch::kBobOut)
                          : single_system(u, qswitch::kAliceIn, qswitch::kAliceOut);
      worst_control = std::max(worst_control, qswitch::control_stage_distance(p, op));
    }
  }
  Outcome o;
  o.pass = worst_control <= kStageTol && worst_routing <= kStageTol;
  o.detail = "control stage " + fmt(worst_control) + ", routing stage " + fmt(worst_routing);
  return o;
}

Outcome chains() {
  Rng rng(41);
  double worst = 0.0;
  for (int s = 0; s < kChainSamples; ++s) {
    const int n = uniform(rng, 1, 6);
    std::vector<int> d(n + 1, 1);
    for (int i = 1; i < n; ++i) d[i] = uniform(rng, 1, 4);
    std::vector<KrausMap> steps;
    DenseMatrix product = DenseMatrix::Identity(1, 1);
    for (int i = 1; i <= n; ++i) {
      SpaceSignature in, out;
      if (i > 1) in = SpaceSignature({{"S" + std::to_string(i - 1), d[i - 1]}});
      if (i < n) out = SpaceSignature({{"S" + std::to_string(i), d[i]}});
      const auto k = gaussian_op(out, in, rng);
      product = k.to_dense() * product;
      steps.push_back(KrausMap({k}));
    }
    std::shuffle(steps.begin(), steps.end(), rng);
    const CircuitDescription c(std::move(steps));
    worst = std::max(worst, std::abs(chain_trace(circuit_operator(c)) - product(0, 0)));
  }
  Outcome o;
  o.pass = worst <= kChainTol;
  o.detail = std::to_string(kChainSamples) + " chains, max deviation " + fmt(worst);
  return o;
}

Outcome composition() {
  Rng rng(52);
  double worst = 0.0;
  for (int s = 0; s < kCompositionSamples; ++s) {
    const Subsystem a{"A", uniform(rng, 1, 3)}, x{"X", uniform(rng, 2, 3)},
        b{"B", uniform(rng, 1, 3)};
    const SpaceSignature in({a, x}), out({x, b});
    std::vector<LabeledOperator> ks;
    const int count = uniform(rng, 1, 3);
    for (int r = 0; r < count; ++r) ks.push_back(gaussian_op(out, in, rng));
    const KrausMap m(ks);
    const KrausMap reduced = partial_compose(m, "X");
    for (int p = 0; p < a.dim; ++p) {
      for (int q = 0; q < a.dim; ++q) {
        const auto e = ketbra("A", p, "A", q, a.dim);
        worst = std::max(worst, frobenius_distance(partial_compose_sandwich(m, "X", e),
                                                   apply(reduced, e)));
      }
    }
  }
  Outcome o;
  o.pass = worst <= kSandwichTol;
  o.detail = std::to_string(kCompositionSamples) + " maps, max deviation " + fmt(worst);
  return o;
}

Outcome reframing() {
  Rng rng(63);
  double worst = 0.0;
  for (int s = 0; s < kReframeSamples; ++s) {
    const int d1 = uniform(rng, 2, 8), d2 = uniform(rng, 2, 64 / d1);
    const Subsystem s1{"s1", d1}, s2{"s2", d2};
    std::vector<KrausMap> steps;
    if (s % 2 == 0) {
      // Preparation, channel, effect.
      std::vector<LabeledOperator> prep, ch, eff;
      for (int r = 0; r < uniform(rng, 1, 2); ++r) {
        prep.push_back(gaussian_op(SpaceSignature({s1}), {}, rng));
      }
      for (const auto& k : random_channel(d1, d2, uniform(rng, 1, 3), rng)) {
        ch.push_back(LabeledOperator(SpaceSignature({s2}), SpaceSignature({s1}), k));
      }
      eff.push_back(gaussian_op({}, SpaceSignature({s2}), rng));
      steps = {KrausMap(prep), KrausMap(ch), KrausMap(eff)};
    } else {
      // Two maps feeding each other.
      std::vector<LabeledOperator> f, g;
      for (int r = 0; r < uniform(rng, 1, 2); ++r) {
        f.push_back(gaussian_op(SpaceSignature({s2}), SpaceSignature({s1}), rng));
        g.push_back(gaussian_op(SpaceSignature({s1}), SpaceSignature({s2}), rng));
      }
      steps = {KrausMap(f), KrausMap(g)};
    }
    const KrausMap m = tensor_maps(steps);
    const int total = d1 * d2;
    std::vector<int> divisors;
    for (int k = 1; k <= total; ++k) {
      if (total % k == 0) divisors.push_back(k);
    }
    const int y1 = divisors[uniform(rng, 0, static_cast<int>(divisors.size()) - 1)];
    const SpaceSignature target({{"Y1", y1}, {"Y2", total / y1}});
    const SubsystemIsomorphism j(
        LabeledOperator(target, m.in_sig(), haar_unitary(total, rng)));
    const double before = full_compose(m, m.in_sig().label_set());
    const KrausMap mt = transform_map(m, j);
    const double after = full_compose(mt, mt.in_sig().label_set());
    worst = std::max(worst, std::abs(before - after));
  }
  Outcome o;
  o.pass = worst <= kInvarianceTol;
  o.detail = std::to_string(kReframeSamples) + " circuits, max |C - C~| " + fmt(worst);
  return o;
}

Outcome similarity() {
  Rng rng(74);
  double worst_canonical = 0.0, worst_moment = 0.0;
  for (int s = 0; s < kSimilaritySamples; ++s) {
    const auto r = random_ops(rng);
    const auto report = qswitch::fixed_ops_similarity(r.ops, 8);
    worst_canonical = std::max({worst_canonical, report.canonical_distance,
                                report.conjugation_bound_a, report.conjugation_bound_b});
    worst_moment = std::max(worst_moment, report.max_moment_difference);
  }
  Outcome o;
  o.pass = worst_canonical <= kCanonicalTol && worst_moment <= kMomentTol;
  o.detail = std::to_string(kSimilaritySamples) + " ops, canonical " + fmt(worst_canonical) +
             ", moments k<=8 " + fmt(worst_moment);
  return o;
}

Outcome amplitude() {
  Rng rng(85);
  double worst = 0.0;
  for (int s = 0; s < kAmplitudeSamples; ++s) {
    const auto r = random_ops(rng);
    const Complex oracle = switch_oracle(r.psi, r.ua, r.ub, r.phi);
    worst = std::max({worst, std::abs(chain_trace(qswitch::k_sw(r.ops)) - oracle),
                      std::abs(chain_trace(qswitch::k_temp_a(r.ops)) - oracle),
                      std::abs(chain_trace(qswitch::k_temp_b(r.ops)) - oracle),
                      std::abs(qswitch::switch_amplitude(r.ops) - oracle)});
  }
  // sigma_X then sigma_Z with the control read out in |->.
  Vector psi = Vector::Zero(4), phi = Vector::Zero(4);
  psi(0) = psi(1) = 1.0 / std::sqrt(2.0);
  phi(2) = 1.0 / std::sqrt(2.0);
  phi(3) = -1.0 / std::sqrt(2.0);
  const DenseMatrix x = qswitch::pauli_x(), z = qswitch::pauli_z();
  const auto ops = SwitchOps::from_matrices(psi, x, z, phi);
  const DenseMatrix zx = z * x, xz = x * z;
  const Complex two_by_two = (zx(1, 0) - xz(1, 0)) / 2.0;
  const double interference =
      std::max({std::abs(two_by_two - Complex(-1.0)),
                std::abs(chain_trace(qswitch::k_sw(ops)) - two_by_two),
                std::abs(chain_trace(qswitch::k_temp_a(ops)) - two_by_two),
                std::abs(chain_trace(qswitch::k_temp_b(ops)) - two_by_two)});
  Outcome o;
  o.pass = worst <= kAmplitudeTol && interference <= kAmplitudeTol;
  o.detail = std::to_string(kAmplitudeSamples) + " ops, max deviation " + fmt(worst) +
             "; interference case " + fmt(interference);
  return o;
}

Outcome unitarity() {
  Rng rng(96);
  bool all = is_unitary(qswitch::u_sw(), kUnitaryTol) &&
             is_unitary(qswitch::cswap("x", "y", "z", "x'", "y'", "z'"), kUnitaryTol);
  for (const auto& j : {qswitch::j_a(), qswitch::j_b()}) {
    all = all && is_unitary(j.expanded(), kUnitaryTol);
  }
  int checked = 0;
  for (int s = 0; s < kUnitarySamples; ++s) {
    const DenseMatrix u = haar_unitary(2, rng);
    all = all &&
          is_unitary(qswitch::r_of_ub(single_system(u, qswitch::kBobIn, qswitch::kBobOut)),
                     kUnitaryTol) &&
          is_unitary(qswitch::r_tilde_of_ua(
                         single_system(u, qswitch::kAliceIn, qswitch::kAliceOut)),
                     kUnitaryTol);
    checked += 2;
  }
  Outcome o;
  o.pass = all;
  o.detail = "U_SW, CSWAP, J_A, J_B, and " + std::to_string(checked) + " R/R~ instances";
  return o;
}

Outcome memory_guard() {
  Rng rng(107);
  double worst = 0.0;
  for (int s = 0; s < kInnerSamples; ++s) {
    const int n = uniform(rng, 1, 4);
    std::vector<LabeledOperator> as, bs;
    for (int i = 0; i < n; ++i) {
      const SpaceSignature out({{"o" + std::to_string(i), uniform(rng, 1, 3)}});
      const SpaceSignature in({{"i" + std::to_string(i), uniform(rng, 1, 3)}});
      as.push_back(gaussian_op(out, in, rng));
      bs.push_back(gaussian_op(out, in, rng));
    }
    const FactoredOperator a(as), b(bs);
    worst = std::max(worst, std::abs(factored_hs_inner(a, b) - hs_inner(expand(a), expand(b))));
  }
  std::vector<LabeledOperator> qubits;
  for (int i = 0; i < 16; ++i) {
    qubits.push_back(identity_relabel(Subsystem{"in" + std::to_string(i), 2},
                                      Subsystem{"out" + std::to_string(i), 2}));
  }
  StoragePolicy dense;
  dense.force_dense = true;
  bool refused = true;
  for (const auto& f : {FactoredOperator(qubits), qswitch::k_temp_a(SwitchOps::trivial())}) {
    try {
      expand(f, dense);
      refused = false;
    } catch (const Error& e) {
      refused = refused && e.code() == ErrorCode::kMemoryBudgetExceeded;
    }
  }
  Outcome o;
  o.pass = worst <= kInnerTol && refused;
  o.detail = std::to_string(kInnerSamples) + " factored inner products, max deviation " +
             fmt(worst) + "; 16-qubit dense expansion " + (refused ? "refused" : "NOT refused");
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"C1 inequivalence witness", witness},
      {"C2 temporal-to-cyclic reduction", reduction},
      {"C3 intermediate stage identities", stages},
      {"C4 chain trace vs ordered product", chains},
      {"C5 sandwich vs partial-traced Kraus", composition},
      {"C6 probability invariance under reframing", reframing},
      {"C7 fixed-ops unitary similarity", similarity},
      {"C8 switch amplitude cross-check", amplitude},
      {"C9 unitarity battery", unitarity},
      {"C10 factored inner products and memory guard", memory_guard},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = Clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("%s %s: %s [%.2f s]\n", o.pass ? "PASS" : "FAIL", c.name, o.detail.c_str(),
                seconds);
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures;
}
