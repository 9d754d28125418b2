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

#include <gtest/gtest.h>

#include <cmath>

#include "test_support.hpp"

namespace qdeloc::qswitch {
namespace {

using testing::basis;
using testing::dense_in_order;
using testing::kron;

Vector plus() { return (basis(2, 0) + basis(2, 1)) / std::sqrt(2.0); }
Vector minus() { return (basis(2, 0) - basis(2, 1)) / std::sqrt(2.0); }

std::set<SystemLabel> as_set(const std::vector<SystemLabel>& v) {
  return {v.begin(), v.end()};
}

// Bit of `flat` for qubit `pos` out of `n`, first qubit most significant.
int bit(std::int64_t flat, int pos, int n) { return (flat >> (n - 1 - pos)) & 1; }

TEST(SwitchOpsTest, Validation) {
  Rng rng(100);
  EXPECT_NO_THROW(validate(SwitchOps::random(rng)));
  EXPECT_NO_THROW(validate(SwitchOps::trivial()));
  DenseMatrix not_unitary = DenseMatrix::Identity(2, 2);
  not_unitary(0, 1) = 1.0;
  const Vector zero = kron(basis(2, 0), basis(2, 0));
  EXPECT_QDELOC_ERROR(
      SwitchOps::from_matrices(zero, not_unitary, DenseMatrix::Identity(2, 2), zero),
      ErrorCode::kNotUnitary);
  EXPECT_QDELOC_ERROR(validate(SwitchOps::from_matrices(
                          2.0 * zero, DenseMatrix::Identity(2, 2),
                          DenseMatrix::Identity(2, 2), zero)),
                      ErrorCode::kOutOfRange);
}

TEST(LabelTest, Conventions) {
  EXPECT_EQ(target(Perspective::kAlice, 3), "T3");
  EXPECT_EQ(control(Perspective::kBob, 6), "C~6");
  EXPECT_EQ(extra(Perspective::kBob, 2), "X~2");
  EXPECT_EQ(party_labels(),
            (std::vector<SystemLabel>{"P_O^t", "P_O^c", "A_I", "A_O", "B_I", "B_O",
                                      "F_I^t", "F_I^c"}));
  EXPECT_EQ(environment_labels(Perspective::kAlice),
            (std::vector<SystemLabel>{"X1", "X2", "X3", "X4", "C3", "C4", "C5", "C6"}));
}

TEST(USwTest, UnitaryWithDocumentedSignatures) {
  const auto u = u_sw();
  EXPECT_TRUE(is_unitary(u, 1e-14));
  EXPECT_EQ(u.in_sig().labels(),
            (std::vector<SystemLabel>{"P_O^c", "P_O^t", "A_O", "B_O"}));
  EXPECT_EQ(u.out_sig().labels(),
            (std::vector<SystemLabel>{"F_I^c", "A_I", "B_I", "F_I^t"}));
}

TEST(USwTest, RoutesEachControlBranch) {
  const std::vector<std::string> in{"P_O^c", "P_O^t", "A_O", "B_O"};
  const std::vector<std::string> out{"F_I^c", "A_I", "B_I", "F_I^t"};
  const DenseMatrix m = dense_in_order(u_sw(), out, in);
  DenseMatrix expected = DenseMatrix::Zero(16, 16);
  for (int col = 0; col < 16; ++col) {
    const int c = bit(col, 0, 4), t = bit(col, 1, 4), ao = bit(col, 2, 4),
              bo = bit(col, 3, 4);
    // Control 0: t -> A_I, A_O -> B_I, B_O -> F_I^t.
    // Control 1: t -> B_I, B_O -> A_I, A_O -> F_I^t.
    const int ai = c == 0 ? t : bo;
    const int bi = c == 0 ? ao : t;
    const int ft = c == 0 ? bo : ao;
    expected((c << 3) | (ai << 2) | (bi << 1) | ft, col) = 1.0;
  }
  EXPECT_EQ(m, expected);
}

TEST(CswapTest, ActionOnBasis) {
  const auto g = cswap("x", "y", "z", "x'", "y'", "z'");
  EXPECT_TRUE(is_unitary(g, 0.0));
  const DenseMatrix m = dense_in_order(g, {"x'", "y'", "z'"}, {"x", "y", "z"});
  for (int col = 0; col < 8; ++col) {
    const int x = bit(col, 0, 3), y = bit(col, 1, 3), z = bit(col, 2, 3);
    const int row = x == 0 ? col : (x << 2) | (z << 1) | y;
    for (int r = 0; r < 8; ++r) EXPECT_EQ(m(r, col), Complex(r == row ? 1.0 : 0.0));
  }
}

TEST(CswapTest, SquareIsIdentity) {
  const auto g = cswap("x", "y", "z", "x'", "y'", "z'");
  const auto h = cswap("x'", "y'", "z'", "x", "y", "z");
  EXPECT_TRUE(approx_equal(compose(h, g), identity(g.in_sig()), 0.0));
}

TEST(CswapTest, RejectsRepeatedLabels) {
  EXPECT_QDELOC_ERROR(cswap("x", "y", "y", "a", "b", "c"), ErrorCode::kLabelCollision);
  EXPECT_QDELOC_ERROR(cswap("x", "y", "z", "a", "b", "x"), ErrorCode::kLabelCollision);
}

// Four branches on (C6, X2): both-equal branches run U on the party wire;
// one crossing branch swaps the extra and party wires plainly, the other
// does so with U applied on both crossings.
DenseMatrix r_oracle(const DenseMatrix& u, bool u_when_c6_is_one) {
  DenseMatrix r = DenseMatrix::Zero(16, 16);
  // in [X1, X2, P_in, C6] -> out [X3, X4, P_out, C3]
  for (int col = 0; col < 16; ++col) {
    const int x1 = bit(col, 0, 4), x2 = bit(col, 1, 4), pin = bit(col, 2, 4),
              c6 = bit(col, 3, 4);
    const int c3 = x2, x4 = c6;
    for (int x3 = 0; x3 < 2; ++x3) {
      for (int pout = 0; pout < 2; ++pout) {
        Complex v = 0.0;
        if (c6 == x2) {
          v = (x3 == x1 ? 1.0 : 0.0) * u(pout, pin);
        } else {
          const bool with_u = (c6 == 1) == u_when_c6_is_one;
          v = with_u ? u(x3, pin) * u(pout, x1)
                     : Complex((x3 == pin && pout == x1) ? 1.0 : 0.0);
        }
        r((x3 << 3) | (x4 << 2) | (pout << 1) | c3, col) = v;
      }
    }
  }
  return r;
}

TEST(RTest, MatchesBranchOracle) {
  Rng rng(101);
  for (int trial = 0; trial < 5; ++trial) {
    const DenseMatrix u = haar_unitary(2, rng);
    const auto r = r_of_ub(single_system(u, kBobIn, kBobOut));
    EXPECT_LT(testing::max_abs_diff(
                  dense_in_order(r, {"X3", "X4", "B_O", "C3"}, {"X1", "X2", "B_I", "C6"}),
                  r_oracle(u, false)),
              1e-15);
    const auto rt = r_tilde_of_ua(single_system(u, kAliceIn, kAliceOut));
    EXPECT_LT(testing::max_abs_diff(
                  dense_in_order(rt, {"X~3", "X~4", "A_O", "C~3"},
                                 {"X~1", "X~2", "A_I", "C~6"}),
                  r_oracle(u, true)),
              1e-15);
    EXPECT_TRUE(is_unitary(r, 1e-12));
    EXPECT_TRUE(is_unitary(rt, 1e-12));
  }
}

TEST(RTest, PlainCrossingBranchWithIdentity) {
  const auto r = r_of_ub(single_system(DenseMatrix::Identity(2, 2), kBobIn, kBobOut));
  // <C6=1, X2=0|: X1 -> B_O and B_I -> X3, with C3=0 and X4=1.
  for (int x1 = 0; x1 < 2; ++x1) {
    for (int bi = 0; bi < 2; ++bi) {
      const std::vector<std::int64_t> in_digits{x1, 0, bi, 1};
      const std::vector<std::int64_t> out_digits{bi, 1, x1, 0};
      EXPECT_EQ(r.at(r.out_sig().flat_index(out_digits), r.in_sig().flat_index(in_digits)),
                Complex(1.0));
    }
  }
}

TEST(RTest, RejectsNonUnitary) {
  EXPECT_QDELOC_ERROR(r_of_ub(single_system(DenseMatrix::Ones(2, 2), kBobIn, kBobOut)),
                      ErrorCode::kNotUnitary);
}

TEST(StageTest, ControlAndRoutingStages) {
  Rng rng(102);
  for (auto p : {Perspective::kAlice, Perspective::kBob}) {
    const DenseMatrix u = haar_unitary(2, rng);
    const auto op = p == Perspective::kAlice ? single_system(u, kBobIn, kBobOut)
                                             : single_system(u, kAliceIn, kAliceOut);
    EXPECT_LE(control_stage_distance(p, op), 1e-12);
    EXPECT_LE(routing_stage_distance(p), 1e-12);
  }
}

TEST(SwitchAmplitudeTest, InterferenceOfAnticommutingUnitaries) {
  const auto ops = SwitchOps::from_matrices(kron(basis(2, 0), plus()), pauli_x(), pauli_z(),
                                            kron(basis(2, 1), minus()));
  // <1| (Z X - X Z) |0> / 2
  const DenseMatrix zx = pauli_z() * pauli_x(), xz = pauli_x() * pauli_z();
  const Complex oracle = (zx(1, 0) - xz(1, 0)) / 2.0;
  EXPECT_NEAR(std::abs(oracle - Complex(-1.0)), 0.0, 1e-15);
  EXPECT_LT(std::abs(switch_amplitude(ops) - oracle), 1e-14);
  EXPECT_LT(std::abs(chain_trace(k_sw(ops)) - oracle), 1e-14);
  EXPECT_LT(std::abs(chain_trace(k_temp_a(ops)) - oracle), 1e-14);
  EXPECT_LT(std::abs(chain_trace(k_temp_b(ops)) - oracle), 1e-14);
}

TEST(SwitchAmplitudeTest, TrivialOpsGiveOne) {
  const auto ops = SwitchOps::trivial();
  EXPECT_LT(std::abs(switch_amplitude(ops) - 1.0), 1e-15);
  EXPECT_LT(std::abs(chain_trace(k_sw(ops)) - 1.0), 1e-15);
  EXPECT_LT(std::abs(chain_trace(k_temp_a(ops)) - 1.0), 1e-15);
}

TEST(SwitchAmplitudeTest, FourPathsAgreeOnRandomOps) {
  Rng rng(103);
  for (int trial = 0; trial < 20; ++trial) {
    const auto ops = SwitchOps::random(rng);
    const Complex a = switch_amplitude(ops);
    EXPECT_LT(std::abs(chain_trace(k_sw(ops)) - a), 1e-12);
    EXPECT_LT(std::abs(chain_trace(k_temp_a(ops)) - a), 1e-12);
    EXPECT_LT(std::abs(chain_trace(k_temp_b(ops)) - a), 1e-12);
    EXPECT_LT(std::abs(chain_amplitude(switch_circuit(ops)) - a), 1e-12);
    EXPECT_LT(std::abs(chain_amplitude(temporal_circuit(Perspective::kBob, ops)) - a), 1e-12);
  }
}

TEST(KTempTest, ControlPreparedInZeroRunsAliceFirst) {
  Rng rng(104);
  for (int trial = 0; trial < 5; ++trial) {
    const Vector pt = random_state(2, rng), ft = random_state(2, rng), fc = random_state(2, rng);
    const DenseMatrix ua = haar_unitary(2, rng), ub = haar_unitary(2, rng);
    for (int c = 0; c < 2; ++c) {
      const auto ops = SwitchOps::from_matrices(kron(pt, basis(2, c)), ua, ub, kron(ft, fc));
      const DenseMatrix order = c == 0 ? DenseMatrix(ub * ua) : DenseMatrix(ua * ub);
      const Complex oracle = ft.dot(order * pt) * std::conj(fc(c));
      EXPECT_LT(std::abs(chain_trace(k_temp_a(ops)) - oracle), 1e-13);
      EXPECT_LT(std::abs(chain_trace(k_temp_b(ops)) - oracle), 1e-13);
    }
  }
}

TEST(KTempTest, StructureAndSpaces) {
  Rng rng(105);
  const auto ops = SwitchOps::random(rng);
  for (auto p : {Perspective::kAlice, Perspective::kBob}) {
    const auto k = k_temp(p, ops);
    EXPECT_EQ(k.size(), 14u);
    std::set<SystemLabel> expected;
    for (int i = 1; i <= 8; ++i) {
      expected.insert(target(p, i));
      expected.insert(control(p, i));
    }
    EXPECT_EQ(k.out_sig().label_set(), expected);
    EXPECT_EQ(k.in_sig().label_set(), expected);
    EXPECT_EQ(temporal_circuit(p, ops).size(), 9u);
  }
  EXPECT_EQ(k_sw(ops).size(), 5u);
  EXPECT_EQ(k_sw(ops).out_sig().label_set(), as_set(party_labels()));
}

TEST(KTempTest, SelfInnerProductAndSparseExpansion) {
  Rng rng(106);
  const auto ops = SwitchOps::random(rng);
  const auto k = k_temp_a(ops);
  EXPECT_LT(std::abs(factored_hs_inner(k, k) - 16384.0), 1e-8);
  const auto e = expand(k);
  EXPECT_TRUE(e.is_sparse());
  EXPECT_EQ(static_cast<long double>(e.nnz()), k.estimated_nnz());
  EXPECT_LE(e.nnz(), 4'000'000);
  EXPECT_LT(std::abs(hs_inner(e, e) - 16384.0), 1e-8);
  StoragePolicy dense;
  dense.force_dense = true;
  EXPECT_QDELOC_ERROR(expand(k, dense), ErrorCode::kMemoryBudgetExceeded);
}

TEST(IsomorphismTest, OutputSpaces) {
  for (auto p : {Perspective::kAlice, Perspective::kBob}) {
    const auto j = j_iso(p);
    std::set<SystemLabel> expected = as_set(party_labels());
    for (const auto& l : environment_labels(p)) expected.insert(l);
    EXPECT_EQ(j.out_sig().label_set(), expected);
    EXPECT_EQ(j.in_sig().label_set(), k_temp(p, SwitchOps::trivial()).in_sig().label_set());
    EXPECT_TRUE(is_unitary(j.factored()));
  }
  EXPECT_TRUE(j_b().out_sig().contains("X~3"));
  EXPECT_FALSE(j_a().out_sig().contains("X~3"));
}

TEST(ReductionTest, TrivialOpsReduceExactly) {
  const auto report = verify_reduction_a(SwitchOps::trivial());
  EXPECT_LE(report.distance, 1e-12);
  EXPECT_LE(report.cyc_distance, 1e-12);
  EXPECT_TRUE(report.pass());
}

TEST(ReductionTest, RandomOpsBothPerspectives) {
  Rng rng(107);
  for (int trial = 0; trial < 2; ++trial) {
    const auto ops = SwitchOps::random(rng);
    for (auto p : {Perspective::kAlice, Perspective::kBob}) {
      const auto report = verify_reduction(p, ops);
      EXPECT_TRUE(report.pass()) << report.distance << " " << report.cyc_distance;
    }
  }
}

TEST(ReductionTest, CyclicOperatorDiffersFromSwappedParties) {
  Rng rng(108);
  const auto ops = SwitchOps::random(rng);
  const auto swapped = SwitchOps::from_matrices(
      kron(basis(2, 0), basis(2, 0)), ops.u_b.to_dense(), ops.u_a.to_dense(),
      kron(basis(2, 0), basis(2, 0)));
  const auto good = SwitchOps::from_matrices(
      kron(basis(2, 0), basis(2, 0)), ops.u_a.to_dense(), ops.u_b.to_dense(),
      kron(basis(2, 0), basis(2, 0)));
  const auto cyc = expand(k_cyc(Perspective::kAlice, good));
  const auto transformed = transform_operator(k_temp_a(swapped), j_a());
  EXPECT_GT(frobenius_distance(cyc, transformed), 1.0);
}

TEST(WitnessTest, PublishedValues) {
  const auto w = inequivalence_witness();
  EXPECT_NEAR(w.omega_a.real(), 40960.0, 1e-6);
  EXPECT_NEAR(w.omega_b.real(), 32768.0, 1e-6);
  EXPECT_LE(std::abs(w.omega_a.imag()), 1e-9);
  EXPECT_LE(std::abs(w.omega_b.imag()), 1e-9);
  EXPECT_NEAR(w.omega_a.real() - w.omega_b.real(), 8192.0, 1e-6);
  for (const auto* t : {&w.terms_a, &w.terms_b}) {
    EXPECT_NEAR((*t)[0].real(), 16384.0, 1e-6);
    EXPECT_NEAR((*t)[1].real(), 16384.0, 1e-6);
  }
  EXPECT_NEAR(std::abs(w.terms_b[2]), 0.0, 1e-9);
}

TEST(WitnessTest, MatchesSparseExpansionOracle) {
  const auto x = k_temp_a(witness_ops(pauli_x()));
  const auto y = k_temp_a(witness_ops(pauli_y()));
  const auto omega = add(expand(x), expand(y));
  EXPECT_NEAR(std::pow(frobenius_norm(omega), 2), 40960.0, 1e-6);
  const auto xb = k_temp_b(witness_ops(pauli_x()));
  const auto yb = k_temp_b(witness_ops(pauli_y()));
  EXPECT_NEAR(std::pow(frobenius_norm(add(expand(xb), expand(yb))), 2), 32768.0, 1e-6);
  EXPECT_LT(std::abs(hs_inner(expand(x), expand(y)) - inequivalence_witness().terms_a[2]),
            1e-6);
}

TEST(SimilarityTest, FixedOpsAreSimilar) {
  Rng rng(109);
  for (const auto& ops : {SwitchOps::trivial(), witness_ops(pauli_x()), SwitchOps::random(rng)}) {
    const auto report = fixed_ops_similarity(ops, 4);
    EXPECT_TRUE(report.pass()) << report.canonical_distance << " "
                               << report.max_moment_difference;
    ASSERT_EQ(report.moments_a.size(), 4u);
    const Complex a = switch_amplitude(ops);
    for (int k = 0; k < 4; ++k) {
      EXPECT_LT(std::abs(report.moments_a[k] - std::pow(a, k + 1)), 1e-10);
    }
  }
}

}  // namespace
}  // namespace qdeloc::qswitch
