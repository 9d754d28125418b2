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

#include "qdeloc/factored.hpp"

#include <algorithm>
#include <string>

#include "contraction.hpp"
#include "qdeloc/error.hpp"

namespace qdeloc {
namespace {

void require_square(const SpaceSignature& out, const SpaceSignature& in,
                    const char* what) {
  if (!out.same_multiset(in)) {
    throw Error(ErrorCode::kSignatureMismatch,
                std::string(what) + " needs equal in/out label multisets: " +
                    out.to_string() + " vs " + in.to_string());
  }
}

LabeledOperator conjugate_expanded(const LabeledOperator& k,
                                   const LabeledOperator& j,
                                   const StoragePolicy& policy) {
  const LabeledOperator kk = k.aligned(j.in_sig(), j.in_sig());
  if (!is_monomial(j)) {
    return compose(compose(j, kk, policy), adjoint(j), policy);
  }
  const auto n = static_cast<std::size_t>(j.cols());
  std::vector<std::int64_t> image(n);
  std::vector<Complex> phase(n);
  j.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    image[static_cast<std::size_t>(c)] = r;
    phase[static_cast<std::size_t>(c)] = v;
  });
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(kk.nnz()));
  kk.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    const auto ur = static_cast<std::size_t>(r);
    const auto uc = static_cast<std::size_t>(c);
    entries.push_back({image[ur], image[uc], phase[ur] * v * std::conj(phase[uc])});
  });
  return LabeledOperator::from_entries(j.out_sig(), j.out_sig(), entries,
                                       policy);
}

Complex contract_factors(const std::vector<LabeledOperator>& factors,
                         const StoragePolicy& policy) {
  std::vector<detail::DenseTensor> tensors;
  tensors.reserve(factors.size());
  for (const auto& factor : factors) {
    tensors.push_back(detail::tensor_from_operator(factor, policy));
  }
  return detail::contract_network(std::move(tensors), policy);
}

}  // namespace

FactoredOperator::FactoredOperator(std::vector<LabeledOperator> factors)
    : factors_(std::move(factors)) {
  for (const auto& f : factors_) {
    // concat enforces label disjointness per side.
    out_ = out_.concat(f.out_sig());
    in_ = in_.concat(f.in_sig());
  }
}

long double FactoredOperator::estimated_nnz() const {
  long double n = 1;
  for (const auto& f : factors_) n *= static_cast<long double>(f.nnz());
  return n;
}

FactoredOperator FactoredOperator::relabeled(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  std::vector<LabeledOperator> fs;
  fs.reserve(factors_.size());
  for (const auto& f : factors_) fs.push_back(f.relabeled(renames));
  return FactoredOperator(std::move(fs));
}

FactoredOperator FactoredOperator::adjoint() const {
  std::vector<LabeledOperator> fs;
  fs.reserve(factors_.size());
  for (const auto& f : factors_) fs.push_back(qdeloc::adjoint(f));
  return FactoredOperator(std::move(fs));
}

Complex chain_trace(const FactoredOperator& f, const StoragePolicy& policy) {
  require_square(f.out_sig(), f.in_sig(), "chain_trace");
  return contract_factors(f.factors(), policy);
}

Complex trace_moment(const FactoredOperator& f, int k,
                     const StoragePolicy& policy) {
  require_square(f.out_sig(), f.in_sig(), "trace_moment");
  if (k < 1) {
    throw Error(ErrorCode::kOutOfRange, "trace moment order must be >= 1");
  }
  auto tag = [](const SystemLabel& l, int copy) {
    return l + "#" + std::to_string(copy);
  };
  std::vector<LabeledOperator> copies;
  copies.reserve(f.size() * static_cast<std::size_t>(k));
  for (int c = 0; c < k; ++c) {
    for (const auto& factor : f.factors()) {
      std::map<SystemLabel, SystemLabel> out_names, in_names;
      for (const auto& l : factor.out_sig().labels()) out_names[l] = tag(l, (c + 1) % k);
      for (const auto& l : factor.in_sig().labels()) in_names[l] = tag(l, c);
      copies.push_back(factor.relabeled_out(out_names).relabeled_in(in_names));
    }
  }
  // The copies' global signature can exceed int64, so no FactoredOperator.
  return contract_factors(copies, policy);
}

bool aligned_structure(const FactoredOperator& a, const FactoredOperator& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto& x = a.factors()[i];
    const auto& y = b.factors()[i];
    if (!x.out_sig().same_multiset(y.out_sig()) ||
        !x.in_sig().same_multiset(y.in_sig())) {
      return false;
    }
  }
  return true;
}

Complex factored_hs_inner(const FactoredOperator& a, const FactoredOperator& b,
                          const StoragePolicy& policy) {
  if (aligned_structure(a, b)) {
    Complex product = 1.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      product *= hs_inner(a.factors()[i], b.factors()[i]);
    }
    return product;
  }
  StoragePolicy sparse = policy;
  sparse.force_dense = false;
  return hs_inner(expand(a, sparse), expand(b, sparse));
}

Complex factored_hs_inner(const FactoredSum& a, const FactoredSum& b,
                          const StoragePolicy& policy) {
  Complex total = 0.0;
  for (const auto& [ca, fa] : a.terms) {
    for (const auto& [cb, fb] : b.terms) {
      total += std::conj(ca) * cb * factored_hs_inner(fa, fb, policy);
    }
  }
  return total;
}

LabeledOperator expand(const FactoredOperator& f, const StoragePolicy& policy) {
  const std::int64_t rows = f.out_sig().dim();
  const std::int64_t cols = f.in_sig().dim();
  const std::size_t n = f.size();

  std::vector<std::vector<Entry>> parts(n);
  std::vector<std::int64_t> row_stride(n, 1), col_stride(n, 1);
  for (std::size_t i = n; i-- > 0;) {
    parts[i] = f.factors()[i].entries();
    if (i + 1 < n) {
      row_stride[i] = row_stride[i + 1] * f.factors()[i + 1].rows();
      col_stride[i] = col_stride[i + 1] * f.factors()[i + 1].cols();
    }
  }
  long double nnz = 1;
  for (const auto& p : parts) nnz *= static_cast<long double>(p.size());

  const bool dense = policy.prefers_dense(rows, cols);
  if (dense) {
    policy.require_dense(rows, cols, "expand");
  } else {
    policy.require_sparse(cols,
                          nnz > 1.8e19L ? UINT64_MAX
                                        : static_cast<std::uint64_t>(nnz),
                          "expand");
  }

  std::vector<Entry> entries{{0, 0, Complex(1.0)}};
  for (std::size_t depth = 0; depth < n; ++depth) {
    std::vector<Entry> next;
    next.reserve(entries.size() * parts[depth].size());
    for (const auto& a : entries) {
      for (const auto& e : parts[depth]) {
        next.push_back({a.row + e.row * row_stride[depth],
                        a.col + e.col * col_stride[depth], a.value * e.value});
      }
    }
    entries = std::move(next);
  }
  return LabeledOperator::from_entries(f.out_sig(), f.in_sig(), entries,
                                       policy);
}

LabeledOperator expand(const FactoredSum& s, const StoragePolicy& policy) {
  if (s.terms.empty()) {
    throw Error(ErrorCode::kSignatureMismatch, "empty factored sum");
  }
  LabeledOperator acc = scale(expand(s.terms[0].second, policy), s.terms[0].first);
  for (std::size_t i = 1; i < s.terms.size(); ++i) {
    acc = add(acc, scale(expand(s.terms[i].second, policy), s.terms[i].first));
  }
  return acc;
}

double factored_distance_bound(const FactoredOperator& a,
                               const FactoredOperator& b) {
  if (!aligned_structure(a, b)) {
    throw Error(ErrorCode::kSignatureMismatch,
                "distance bound needs aligned factor structures");
  }
  const std::size_t n = a.size();
  std::vector<double> diff(n), bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    diff[i] = frobenius_distance(a.factors()[i], b.factors()[i]);
    bound[i] = std::max(frobenius_norm(a.factors()[i]),
                        frobenius_norm(b.factors()[i]));
  }
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double term = diff[i];
    for (std::size_t k = 0; k < n; ++k) {
      if (k != i) term *= bound[k];
    }
    total += term;
  }
  return total;
}

std::optional<FactoredOperator> conjugate_factorwise(
    const FactoredOperator& k, const FactoredOperator& j) {
  if (!k.out_sig().same_multiset(k.in_sig()) ||
      !j.in_sig().same_multiset(k.out_sig())) {
    return std::nullopt;
  }
  auto find_block = [&](const SpaceSignature& sig) -> std::optional<std::size_t> {
    for (std::size_t g = 0; g < j.size(); ++g) {
      if (j.factors()[g].in_sig().same_multiset(sig)) return g;
    }
    return std::nullopt;
  };
  std::vector<LabeledOperator> result;
  result.reserve(k.size());
  for (const auto& f : k.factors()) {
    LabeledOperator g = f;
    if (!f.out_sig().empty()) {
      auto block = find_block(f.out_sig());
      if (!block) return std::nullopt;
      g = compose(j.factors()[*block], g);
    }
    if (!f.in_sig().empty()) {
      auto block = find_block(f.in_sig());
      if (!block) return std::nullopt;
      g = compose(g, adjoint(j.factors()[*block]));
    }
    result.push_back(std::move(g));
  }
  return FactoredOperator(std::move(result));
}

LabeledOperator conjugate_by(const FactoredOperator& k,
                             const FactoredOperator& j,
                             const StoragePolicy& policy) {
  require_square(k.out_sig(), k.in_sig(), "conjugate_by");
  if (!j.in_sig().same_multiset(k.out_sig())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "isomorphism input " + j.in_sig().to_string() +
                    " does not match operator labels " + k.out_sig().to_string());
  }
  if (!is_unitary(j, kDefaultTolerance, policy)) {
    throw Error(ErrorCode::kNotUnitary, "conjugating operator is not unitary");
  }
  StoragePolicy sparse = policy;
  sparse.force_dense = false;
  return conjugate_expanded(expand(k, policy), expand(j, sparse), policy);
}

LabeledOperator conjugate_by(const LabeledOperator& k, const LabeledOperator& j,
                             const StoragePolicy& policy) {
  require_square(k.out_sig(), k.in_sig(), "conjugate_by");
  if (!j.in_sig().same_multiset(k.out_sig())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "isomorphism input " + j.in_sig().to_string() +
                    " does not match operator labels " + k.out_sig().to_string());
  }
  if (j.rows() != j.cols() || !is_unitary(j)) {
    throw Error(ErrorCode::kNotUnitary, "conjugating operator is not unitary");
  }
  return conjugate_expanded(k, j, policy);
}

bool is_unitary(const FactoredOperator& j, double tol,
                const StoragePolicy& policy) {
  if (j.out_sig().dim() != j.in_sig().dim()) return false;
  bool all = true;
  for (const auto& f : j.factors()) {
    all = all && f.rows() == f.cols() && is_unitary(f, tol);
  }
  if (all) return true;
  StoragePolicy sparse = policy;
  sparse.force_dense = false;
  return is_unitary(expand(j, sparse), tol);
}

}  // namespace qdeloc
