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

#include "qdeloc/random.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <cmath>

namespace qdeloc {

DenseMatrix random_gaussian(std::int64_t rows, std::int64_t cols, Rng& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  DenseMatrix m(rows, cols);
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double re = normal(rng);
      const double im = normal(rng);
      m(r, c) = Complex(re, im);
    }
  }
  return m;
}

DenseMatrix haar_unitary(std::int64_t dim, Rng& rng) {
  const DenseMatrix z = random_gaussian(dim, dim, rng);
  Eigen::HouseholderQR<DenseMatrix> qr(z);
  DenseMatrix q = qr.householderQ() * DenseMatrix::Identity(dim, dim);
  const DenseMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    const double mag = std::abs(d);
    q.col(i) *= mag > 0.0 ? d / mag : Complex(1.0);
  }
  return q;
}

Vector random_state(std::int64_t dim, Rng& rng) {
  Vector v = random_gaussian(dim, 1, rng).col(0);
  return v / v.norm();
}

std::vector<DenseMatrix> random_channel(std::int64_t in_dim,
                                        std::int64_t out_dim, int count,
                                        Rng& rng) {
  std::vector<DenseMatrix> g;
  DenseMatrix s = DenseMatrix::Zero(in_dim, in_dim);
  for (int i = 0; i < count; ++i) {
    g.push_back(random_gaussian(out_dim, in_dim, rng));
    s += g.back().adjoint() * g.back();
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s);
  const DenseMatrix inv_sqrt = es.eigenvectors() *
                               es.eigenvalues().cwiseSqrt().cwiseInverse().asDiagonal() *
                               es.eigenvectors().adjoint();
  for (auto& k : g) k = k * inv_sqrt;
  return g;
}

}  // namespace qdeloc
