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

#include "contraction.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "qdeloc/error.hpp"

namespace qdeloc::detail {
namespace {

using RowMajor =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::vector<std::int64_t> strides_of(const std::vector<Leg>& legs) {
  std::vector<std::int64_t> s(legs.size(), 1);
  for (std::size_t p = legs.size(); p-- > 1;) s[p - 1] = s[p] * legs[p].dim;
  return s;
}

// Joining pairs (index in a, index in b): same label, opposite sides.
std::vector<std::pair<std::size_t, std::size_t>> joins(const DenseTensor& a,
                                                       const DenseTensor& b) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < a.legs.size(); ++i) {
    for (std::size_t j = 0; j < b.legs.size(); ++j) {
      if (a.legs[i].label == b.legs[j].label &&
          a.legs[i].is_output != b.legs[j].is_output) {
        out.emplace_back(i, j);
      }
    }
  }
  return out;
}

void require_budget(long double entries, const StoragePolicy& policy) {
  const long double bytes = entries * sizeof(Complex);
  if (bytes > static_cast<long double>(policy.memory_budget_bytes)) {
    throw Error(ErrorCode::kMemoryBudgetExceeded,
                "contraction intermediate of " +
                    std::to_string(static_cast<double>(entries)) +
                    " entries exceeds the memory budget");
  }
}

}  // namespace

DenseTensor tensor_from_operator(const LabeledOperator& op,
                                 const StoragePolicy& policy) {
  require_budget(static_cast<long double>(op.rows()) * op.cols(), policy);
  DenseTensor t;
  for (const auto& e : op.out_sig().entries()) t.legs.push_back({e.label, true, e.dim});
  for (const auto& e : op.in_sig().entries()) t.legs.push_back({e.label, false, e.dim});
  const std::int64_t cols = op.cols();
  t.data.assign(static_cast<std::size_t>(op.rows() * cols), Complex{});
  op.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    t.data[static_cast<std::size_t>(r * cols + c)] = v;
  });
  return t;
}

DenseTensor permute_legs(const DenseTensor& t,
                         const std::vector<std::size_t>& order) {
  bool trivial = true;
  for (std::size_t i = 0; i < order.size(); ++i) trivial &= order[i] == i;
  if (trivial) return t;

  DenseTensor r;
  r.legs.reserve(order.size());
  for (auto o : order) r.legs.push_back(t.legs[o]);
  const auto new_strides = strides_of(r.legs);
  // Place value, in the new layout, of each old leg.
  std::vector<std::int64_t> target(t.legs.size());
  for (std::size_t i = 0; i < order.size(); ++i) target[order[i]] = new_strides[i];

  r.data.resize(t.data.size());
  const std::size_t n = t.legs.size();
  std::vector<std::int64_t> digit(n, 0);
  std::int64_t dst = 0;
  for (std::size_t src = 0; src < t.data.size(); ++src) {
    r.data[static_cast<std::size_t>(dst)] = t.data[src];
    // Odometer increment over the old layout, last leg fastest.
    for (std::size_t p = n; p-- > 0;) {
      if (++digit[p] < t.legs[p].dim) {
        dst += target[p];
        break;
      }
      dst -= (t.legs[p].dim - 1) * target[p];
      digit[p] = 0;
    }
  }
  return r;
}

DenseTensor close_self_loops(const DenseTensor& t) {
  std::vector<std::pair<std::size_t, std::size_t>> loops;
  for (std::size_t i = 0; i < t.legs.size(); ++i) {
    if (!t.legs[i].is_output) continue;
    for (std::size_t j = 0; j < t.legs.size(); ++j) {
      if (!t.legs[j].is_output && t.legs[j].label == t.legs[i].label) {
        loops.emplace_back(i, j);
      }
    }
  }
  if (loops.empty()) return t;

  std::vector<bool> closed(t.legs.size(), false);
  for (auto [i, j] : loops) closed[i] = closed[j] = true;
  DenseTensor r;
  for (std::size_t p = 0; p < t.legs.size(); ++p) {
    if (!closed[p]) r.legs.push_back(t.legs[p]);
  }
  const auto old_strides = strides_of(t.legs);
  const auto new_strides_kept = strides_of(r.legs);
  std::int64_t new_size = 1;
  for (const auto& l : r.legs) new_size *= l.dim;
  r.data.assign(static_cast<std::size_t>(new_size), Complex{});

  std::vector<std::int64_t> kept_target(t.legs.size(), 0);
  for (std::size_t p = 0, q = 0; p < t.legs.size(); ++p) {
    if (!closed[p]) kept_target[p] = new_strides_kept[q++];
  }
  std::vector<std::int64_t> digits(t.legs.size());
  for (std::size_t src = 0; src < t.data.size(); ++src) {
    std::int64_t rem = static_cast<std::int64_t>(src);
    for (std::size_t p = 0; p < t.legs.size(); ++p) {
      digits[p] = rem / old_strides[p];
      rem %= old_strides[p];
    }
    bool diagonal = true;
    for (auto [i, j] : loops) diagonal &= digits[i] == digits[j];
    if (!diagonal) continue;
    std::int64_t dst = 0;
    for (std::size_t p = 0; p < t.legs.size(); ++p) dst += digits[p] * kept_target[p];
    r.data[static_cast<std::size_t>(dst)] += t.data[src];
  }
  return r;
}

DenseTensor contract_pair(const DenseTensor& a, const DenseTensor& b,
                          const StoragePolicy& policy) {
  const auto shared = joins(a, b);
  std::vector<bool> a_shared(a.legs.size(), false), b_shared(b.legs.size(), false);
  for (auto [i, j] : shared) a_shared[i] = b_shared[j] = true;

  std::vector<std::size_t> a_order, b_order;
  std::int64_t free_a = 1, free_b = 1, inner = 1;
  for (std::size_t i = 0; i < a.legs.size(); ++i) {
    if (!a_shared[i]) {
      a_order.push_back(i);
      free_a *= a.legs[i].dim;
    }
  }
  for (auto [i, j] : shared) {
    a_order.push_back(i);
    b_order.push_back(j);
    inner *= a.legs[i].dim;
  }
  for (std::size_t j = 0; j < b.legs.size(); ++j) {
    if (!b_shared[j]) {
      b_order.push_back(j);
      free_b *= b.legs[j].dim;
    }
  }
  require_budget(static_cast<long double>(free_a) * free_b, policy);

  const DenseTensor pa = permute_legs(a, a_order);
  const DenseTensor pb = permute_legs(b, b_order);
  Eigen::Map<const RowMajor> ma(pa.data.data(), free_a, inner);
  Eigen::Map<const RowMajor> mb(pb.data.data(), inner, free_b);

  DenseTensor r;
  for (std::size_t k = 0; k < a.legs.size() - shared.size(); ++k) {
    r.legs.push_back(pa.legs[k]);
  }
  for (std::size_t k = shared.size(); k < pb.legs.size(); ++k) {
    r.legs.push_back(pb.legs[k]);
  }
  r.data.resize(static_cast<std::size_t>(free_a * free_b));
  Eigen::Map<RowMajor> mr(r.data.data(), free_a, free_b);
  mr.noalias() = ma * mb;
  return r;
}

Complex contract_network(std::vector<DenseTensor> tensors,
                         const StoragePolicy& policy) {
  Complex scalar = 1.0;
  std::vector<DenseTensor> live;
  auto absorb = [&](DenseTensor t) {
    t = close_self_loops(t);
    if (t.legs.empty()) {
      scalar *= t.data.empty() ? Complex{} : t.data[0];
    } else {
      live.push_back(std::move(t));
    }
  };
  for (auto& t : tensors) absorb(std::move(t));

  while (!live.empty()) {
    std::size_t best_i = 0, best_j = 0;
    long double best_size = std::numeric_limits<long double>::infinity();
    for (std::size_t i = 0; i < live.size(); ++i) {
      for (std::size_t j = i + 1; j < live.size(); ++j) {
        const auto shared = joins(live[i], live[j]);
        if (shared.empty()) continue;
        long double inner = 1;
        for (auto [p, q] : shared) inner *= live[i].legs[p].dim;
        const long double size = static_cast<long double>(live[i].size()) *
                                 live[j].size() / (inner * inner);
        if (size < best_size) {
          best_size = size;
          best_i = i;
          best_j = j;
        }
      }
    }
    if (best_size == std::numeric_limits<long double>::infinity()) {
      throw Error(ErrorCode::kSignatureMismatch,
                  "network has an unpaired leg on label '" +
                      live.front().legs.front().label + "'");
    }
    DenseTensor merged = contract_pair(live[best_i], live[best_j], policy);
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best_j));
    live.erase(live.begin() + static_cast<std::ptrdiff_t>(best_i));
    absorb(std::move(merged));
  }
  return scalar;
}

}  // namespace qdeloc::detail
