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

#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qdeloc/error.hpp"
#include "qdeloc/linop.hpp"
#include "qdeloc/random.hpp"
#include "qdeloc/spaces.hpp"

namespace qdeloc::testing {

// Reference Kronecker product written out with explicit index arithmetic.
inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
  DenseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (Eigen::Index k = 0; k < b.rows(); ++k) {
        for (Eigen::Index l = 0; l < b.cols(); ++l) {
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
        }
      }
    }
  }
  return out;
}

// Matrix of `op` with rows and columns reindexed to the given label orders.
// Uses its own digit arithmetic rather than the library's permutation code.
inline DenseMatrix dense_in_order(const LabeledOperator& op,
                                  const std::vector<std::string>& out_order,
                                  const std::vector<std::string>& in_order) {
  auto reindex = [](const SpaceSignature& sig,
                    const std::vector<std::string>& order, std::int64_t flat) {
    const auto& e = sig.entries();
    std::vector<std::int64_t> digit(e.size());
    for (std::size_t p = e.size(); p-- > 0;) {
      digit[p] = flat % e[p].dim;
      flat /= e[p].dim;
    }
    std::int64_t out = 0;
    for (const auto& label : order) {
      std::size_t p = 0;
      while (e[p].label != label) ++p;
      out = out * e[p].dim + digit[p];
    }
    return out;
  };
  const DenseMatrix m = op.to_dense();
  DenseMatrix out(m.rows(), m.cols());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      out(reindex(op.out_sig(), out_order, r),
          reindex(op.in_sig(), in_order, c)) = m(r, c);
    }
  }
  return out;
}

inline LabeledOperator random_op(const SpaceSignature& out,
                                 const SpaceSignature& in, Rng& rng) {
  return LabeledOperator(out, in, random_gaussian(out.dim(), in.dim(), rng));
}

inline LabeledOperator random_unitary_op(const SpaceSignature& out,
                                         const SpaceSignature& in, Rng& rng) {
  return LabeledOperator(out, in, haar_unitary(out.dim(), rng));
}

inline SpaceSignature sig(std::vector<Subsystem> entries) {
  return SpaceSignature(std::move(entries));
}

inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

inline Vector basis(std::int64_t dim, std::int64_t k) {
  Vector v = Vector::Zero(dim);
  v(k) = 1.0;
  return v;
}

}  // namespace qdeloc::testing

#define EXPECT_QDELOC_ERROR(stmt, expected)                        \
  do {                                                             \
    try {                                                          \
      stmt;                                                        \
      ADD_FAILURE() << "no exception from " #stmt;                 \
    } catch (const ::qdeloc::Error& e) {                           \
      EXPECT_EQ(e.code(), expected) << e.what();                   \
    }                                                              \
  } while (0)
