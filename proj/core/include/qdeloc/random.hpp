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

#include <cstdint>
#include <random>
#include <vector>

#include "qdeloc/linop.hpp"

namespace qdeloc {

using Rng = std::mt19937_64;

/// Entries i.i.d. standard complex Gaussian (real and imaginary parts each
/// with variance 1/2).
DenseMatrix random_gaussian(std::int64_t rows, std::int64_t cols, Rng& rng);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the
/// diagonal of R phase-normalized.
DenseMatrix haar_unitary(std::int64_t dim, Rng& rng);

/// Normalized complex Gaussian vector.
Vector random_state(std::int64_t dim, Rng& rng);

/// Trace-preserving Kraus family: Gaussian G_r rescaled by (sum G^dagger G)^{-1/2}.
std::vector<DenseMatrix> random_channel(std::int64_t in_dim,
                                        std::int64_t out_dim, int count,
                                        Rng& rng);

}  // namespace qdeloc
