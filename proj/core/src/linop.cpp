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

#include "qdeloc/linop.hpp"

#include <algorithm>
#include <climits>
#include <string>

#include "qdeloc/error.hpp"

namespace qdeloc {
namespace {

using Triplet = Eigen::Triplet<Complex>;

constexpr std::uint64_t kDenseEntryBytes = sizeof(Complex);
constexpr std::uint64_t kSparseEntryBytes = sizeof(Complex) + sizeof(int);

std::string mib(std::uint64_t bytes) {
  return std::to_string(bytes / (1024 * 1024)) + " MiB";
}

void require_index_range(std::int64_t rows, std::int64_t cols) {
  if (rows > INT_MAX || cols > INT_MAX) {
    throw Error(ErrorCode::kMemoryBudgetExceeded,
                "dimension exceeds sparse index range");
  }
}

SparseMatrix sparse_from(std::int64_t rows, std::int64_t cols,
                         std::vector<Triplet>& triplets) {
  require_index_range(rows, cols);
  SparseMatrix s(static_cast<Eigen::Index>(rows),
                 static_cast<Eigen::Index>(cols));
  s.setFromTriplets(triplets.begin(), triplets.end());
  s.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
    return std::abs(v) > kDropTolerance;
  });
  s.makeCompressed();
  return s;
}

SparseMatrix pruned(SparseMatrix s) {
  s.prune([](Eigen::Index, Eigen::Index, const Complex& v) {
    return std::abs(v) > kDropTolerance;
  });
  s.makeCompressed();
  return s;
}

void require_same_multiset(const SpaceSignature& a, const SpaceSignature& b,
                           const char* context) {
  if (!a.same_multiset(b)) {
    throw Error(ErrorCode::kSignatureMismatch,
                std::string(context) + ": " + a.to_string() + " vs " +
                    b.to_string());
  }
}

// Dense iff both operands are dense; otherwise sparse with dense inputs
// converted (they are below the dense threshold, so this is cheap).
template <class Dense, class Sparse>
LabeledOperator binary_elementwise(const LabeledOperator& a,
                                   const LabeledOperator& b, Dense dense_op,
                                   Sparse sparse_op) {
  if (!a.is_sparse() && !b.is_sparse()) {
    return LabeledOperator(a.out_sig(), a.in_sig(),
                           DenseMatrix(dense_op(*a.dense_ptr(), *b.dense_ptr())));
  }
  return LabeledOperator(a.out_sig(), a.in_sig(),
                         pruned(sparse_op(a.to_sparse(), b.to_sparse())));
}

}  // namespace

void StoragePolicy::require_dense(std::int64_t rows, std::int64_t cols,
                                  const char* what) const {
  const long double bytes = static_cast<long double>(rows) *
                            static_cast<long double>(cols) * kDenseEntryBytes;
  if (bytes > static_cast<long double>(memory_budget_bytes)) {
    throw Error(ErrorCode::kMemoryBudgetExceeded,
                std::string(what) + ": dense " + std::to_string(rows) + "x" +
                    std::to_string(cols) + " needs ~" +
                    mib(static_cast<std::uint64_t>(
                        std::min<long double>(bytes, 1.8e19L))) +
                    ", budget " + mib(memory_budget_bytes));
  }
}

void StoragePolicy::require_sparse(std::int64_t cols, std::uint64_t nnz,
                                   const char* what) const {
  const std::uint64_t bytes =
      nnz * kSparseEntryBytes + static_cast<std::uint64_t>(cols + 1) * sizeof(int);
  if (bytes > memory_budget_bytes || nnz > static_cast<std::uint64_t>(INT_MAX)) {
    throw Error(ErrorCode::kMemoryBudgetExceeded,
                std::string(what) + ": sparse with " + std::to_string(nnz) +
                    " nonzeros needs ~" + mib(bytes) + ", budget " +
                    mib(memory_budget_bytes));
  }
}

// --- LabeledOperator ---------------------------------------------------------

LabeledOperator::LabeledOperator() : m_(DenseMatrix::Zero(1, 1)) {}

LabeledOperator::LabeledOperator(SpaceSignature out, SpaceSignature in,
                                 DenseMatrix m)
    : out_(std::move(out)), in_(std::move(in)), m_(std::move(m)) {
  const auto& d = std::get<DenseMatrix>(m_);
  if (d.rows() != out_.dim() || d.cols() != in_.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix shape " + std::to_string(d.rows()) + "x" +
                    std::to_string(d.cols()) + " vs signatures " +
                    out_.to_string() + " <- " + in_.to_string());
  }
}

LabeledOperator::LabeledOperator(SpaceSignature out, SpaceSignature in,
                                 SparseMatrix m)
    : out_(std::move(out)), in_(std::move(in)) {
  if (m.rows() != out_.dim() || m.cols() != in_.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix shape " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + " vs signatures " +
                    out_.to_string() + " <- " + in_.to_string());
  }
  m_ = pruned(std::move(m));
}

LabeledOperator LabeledOperator::from_entries(SpaceSignature out,
                                              SpaceSignature in,
                                              std::span<const Entry> entries,
                                              const StoragePolicy& policy) {
  const std::int64_t rows = out.dim();
  const std::int64_t cols = in.dim();
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols) {
      throw Error(ErrorCode::kOutOfRange,
                  "entry (" + std::to_string(e.row) + ", " +
                      std::to_string(e.col) + ") outside " +
                      std::to_string(rows) + "x" + std::to_string(cols));
    }
  }
  if (policy.prefers_dense(rows, cols)) {
    policy.require_dense(rows, cols, "from_entries");
    DenseMatrix d = DenseMatrix::Zero(rows, cols);
    for (const auto& e : entries) d(e.row, e.col) += e.value;
    return LabeledOperator(std::move(out), std::move(in), std::move(d));
  }
  policy.require_sparse(cols, entries.size(), "from_entries");
  std::vector<Triplet> triplets;
  triplets.reserve(entries.size());
  for (const auto& e : entries) {
    triplets.emplace_back(static_cast<int>(e.row), static_cast<int>(e.col),
                          e.value);
  }
  return LabeledOperator(std::move(out), std::move(in),
                         sparse_from(rows, cols, triplets));
}

LabeledOperator LabeledOperator::scalar(Complex value) {
  DenseMatrix d(1, 1);
  d(0, 0) = value;
  return LabeledOperator({}, {}, std::move(d));
}

LabeledOperator LabeledOperator::zero(SpaceSignature out, SpaceSignature in,
                                      const StoragePolicy& policy) {
  return from_entries(std::move(out), std::move(in), {}, policy);
}

std::int64_t LabeledOperator::nnz() const {
  std::int64_t n = 0;
  for_each_nonzero([&](std::int64_t, std::int64_t, Complex) { ++n; });
  return n;
}

Complex LabeledOperator::at(std::int64_t row, std::int64_t col) const {
  if (row < 0 || row >= rows() || col < 0 || col >= cols()) {
    throw Error(ErrorCode::kOutOfRange, "entry index outside operator");
  }
  if (const auto* d = dense_ptr()) return (*d)(row, col);
  return sparse_ptr()->coeff(row, col);
}

Complex LabeledOperator::scalar_value() const {
  if (rows() != 1 || cols() != 1) {
    throw Error(ErrorCode::kSignatureMismatch,
                "not a scalar: " + out_.to_string() + " <- " + in_.to_string());
  }
  return at(0, 0);
}

DenseMatrix LabeledOperator::to_dense(const StoragePolicy& policy) const {
  if (const auto* d = dense_ptr()) return *d;
  policy.require_dense(rows(), cols(), "to_dense");
  return DenseMatrix(*sparse_ptr());
}

SparseMatrix LabeledOperator::to_sparse() const {
  if (const auto* s = sparse_ptr()) return *s;
  require_index_range(rows(), cols());
  return pruned(dense_ptr()->sparseView());
}

LabeledOperator LabeledOperator::restored(const StoragePolicy& policy) const {
  const bool want_dense = policy.prefers_dense(rows(), cols());
  if (want_dense && is_sparse()) {
    return LabeledOperator(out_, in_, to_dense(policy));
  }
  if (!want_dense && !is_sparse()) {
    return LabeledOperator(out_, in_, to_sparse());
  }
  return *this;
}

std::vector<Entry> LabeledOperator::entries() const {
  std::vector<Entry> out;
  for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    out.push_back({r, c, v});
  });
  std::sort(out.begin(), out.end(), [](const Entry& a, const Entry& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

LabeledOperator LabeledOperator::aligned(const SpaceSignature& out,
                                         const SpaceSignature& in) const {
  IndexPermutation prow(out_, out);
  IndexPermutation pcol(in_, in);
  if (prow.is_identity() && pcol.is_identity()) return *this;
  const std::vector<std::int64_t> rmap = prow.table();
  const std::vector<std::int64_t> cmap = pcol.table();
  if (const auto* d = dense_ptr()) {
    DenseMatrix m(d->rows(), d->cols());
    for (Eigen::Index c = 0; c < d->cols(); ++c) {
      const auto nc = cmap[static_cast<std::size_t>(c)];
      for (Eigen::Index r = 0; r < d->rows(); ++r) {
        m(rmap[static_cast<std::size_t>(r)], nc) = (*d)(r, c);
      }
    }
    return LabeledOperator(out, in, std::move(m));
  }
  const auto& s = *sparse_ptr();
  std::vector<Triplet> triplets;
  triplets.reserve(static_cast<std::size_t>(s.nonZeros()));
  for (Eigen::Index c = 0; c < s.outerSize(); ++c) {
    const auto nc = static_cast<int>(cmap[static_cast<std::size_t>(c)]);
    for (SparseMatrix::InnerIterator it(s, c); it; ++it) {
      triplets.emplace_back(
          static_cast<int>(rmap[static_cast<std::size_t>(it.row())]), nc,
          it.value());
    }
  }
  return LabeledOperator(out, in, sparse_from(rows(), cols(), triplets));
}

LabeledOperator LabeledOperator::relabeled(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  LabeledOperator r = *this;
  r.out_ = out_.relabeled(renames);
  r.in_ = in_.relabeled(renames);
  return r;
}

LabeledOperator LabeledOperator::relabeled_out(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  LabeledOperator r = *this;
  r.out_ = out_.relabeled(renames);
  return r;
}

LabeledOperator LabeledOperator::relabeled_in(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  LabeledOperator r = *this;
  r.in_ = in_.relabeled(renames);
  return r;
}

// --- constructors ------------------------------------------------------------

LabeledOperator identity(const SpaceSignature& sig,
                         const StoragePolicy& policy) {
  return identity_relabel(sig, sig, policy);
}

LabeledOperator identity_relabel(const Subsystem& from, const Subsystem& to) {
  if (from.dim != to.dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "cannot relabel " + from.label + ":" + std::to_string(from.dim) +
                    " to " + to.label + ":" + std::to_string(to.dim));
  }
  return identity_relabel(SpaceSignature({from}), SpaceSignature({to}));
}

LabeledOperator identity_relabel(const SpaceSignature& from,
                                 const SpaceSignature& to,
                                 const StoragePolicy& policy) {
  if (from.dim() != to.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                from.to_string() + " and " + to.to_string() +
                    " differ in total dimension");
  }
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(from.dim()));
  for (std::int64_t k = 0; k < from.dim(); ++k) entries.push_back({k, k, 1.0});
  return LabeledOperator::from_entries(to, from, entries, policy);
}

LabeledOperator permutation_matrix(const SpaceSignature& from,
                                   const SpaceSignature& to,
                                   const StoragePolicy& policy) {
  IndexPermutation p(from, to);
  std::vector<Entry> entries;
  entries.reserve(static_cast<std::size_t>(from.dim()));
  for (std::int64_t k = 0; k < from.dim(); ++k) entries.push_back({p(k), k, 1.0});
  return LabeledOperator::from_entries(to, from, entries, policy);
}

LabeledOperator ket(const SpaceSignature& out, const Vector& amplitudes) {
  if (amplitudes.size() != out.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "ket amplitude count does not match " + out.to_string());
  }
  return LabeledOperator(out, {}, DenseMatrix(amplitudes));
}

LabeledOperator bra(const SpaceSignature& in, const Vector& amplitudes) {
  if (amplitudes.size() != in.dim()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "bra amplitude count does not match " + in.to_string());
  }
  return LabeledOperator({}, in, DenseMatrix(amplitudes.adjoint()));
}

LabeledOperator basis_ket(const SpaceSignature& out,
                          std::span<const std::int64_t> digits) {
  Vector v = Vector::Zero(out.dim());
  v(out.flat_index(digits)) = 1.0;
  return ket(out, v);
}

LabeledOperator basis_bra(const SpaceSignature& in,
                          std::span<const std::int64_t> digits) {
  Vector v = Vector::Zero(in.dim());
  v(in.flat_index(digits)) = 1.0;
  return bra(in, v);
}

LabeledOperator ketbra(const SystemLabel& out, std::int64_t k_out,
                       const SystemLabel& in, std::int64_t k_in,
                       std::int64_t dim) {
  if (k_out < 0 || k_out >= dim || k_in < 0 || k_in >= dim) {
    throw Error(ErrorCode::kOutOfRange, "ketbra basis index out of range");
  }
  DenseMatrix m = DenseMatrix::Zero(dim, dim);
  m(k_out, k_in) = 1.0;
  return LabeledOperator(SpaceSignature({{out, dim}}),
                         SpaceSignature({{in, dim}}), std::move(m));
}

LabeledOperator single_system(const DenseMatrix& m, const SystemLabel& in,
                              const SystemLabel& out) {
  return LabeledOperator(SpaceSignature({{out, m.rows()}}),
                         SpaceSignature({{in, m.cols()}}), m);
}

// --- algebra -----------------------------------------------------------------

LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b,
                       const StoragePolicy& policy) {
  SpaceSignature out = a.out_sig().concat(b.out_sig());
  SpaceSignature in = a.in_sig().concat(b.in_sig());
  const std::int64_t rows = out.dim();
  const std::int64_t cols = in.dim();
  const std::int64_t brows = b.rows();
  const std::int64_t bcols = b.cols();
  if (policy.prefers_dense(rows, cols)) {
    policy.require_dense(rows, cols, "tensor");
    const DenseMatrix da = a.to_dense(policy);
    const DenseMatrix db = b.to_dense(policy);
    DenseMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < da.rows(); ++i) {
      for (Eigen::Index j = 0; j < da.cols(); ++j) {
        m.block(i * brows, j * bcols, brows, bcols) = da(i, j) * db;
      }
    }
    return LabeledOperator(std::move(out), std::move(in), std::move(m));
  }
  const auto ea = a.entries();
  const auto eb = b.entries();
  policy.require_sparse(cols,
                        static_cast<std::uint64_t>(ea.size()) * eb.size(),
                        "tensor");
  std::vector<Triplet> triplets;
  triplets.reserve(ea.size() * eb.size());
  for (const auto& x : ea) {
    for (const auto& y : eb) {
      triplets.emplace_back(static_cast<int>(x.row * brows + y.row),
                            static_cast<int>(x.col * bcols + y.col),
                            x.value * y.value);
    }
  }
  return LabeledOperator(std::move(out), std::move(in),
                         sparse_from(rows, cols, triplets));
}

LabeledOperator tensor(std::span<const LabeledOperator> ops,
                       const StoragePolicy& policy) {
  LabeledOperator acc = LabeledOperator::scalar(1.0);
  for (const auto& op : ops) acc = tensor(acc, op, policy);
  return acc;
}

LabeledOperator compose(const LabeledOperator& a, const LabeledOperator& b,
                        const StoragePolicy& policy) {
  require_same_multiset(b.out_sig(), a.in_sig(), "compose");
  const LabeledOperator bb = b.aligned(a.in_sig(), b.in_sig());
  if (!a.is_sparse() && !bb.is_sparse()) {
    DenseMatrix m = (*a.dense_ptr()) * (*bb.dense_ptr());
    return LabeledOperator(a.out_sig(), b.in_sig(), std::move(m))
        .restored(policy);
  }
  SparseMatrix m = a.to_sparse() * bb.to_sparse();
  policy.require_sparse(m.cols(), static_cast<std::uint64_t>(m.nonZeros()),
                        "compose");
  return LabeledOperator(a.out_sig(), b.in_sig(), std::move(m))
      .restored(policy);
}

LabeledOperator adjoint(const LabeledOperator& a) {
  if (a.is_sparse()) {
    return LabeledOperator(a.in_sig(), a.out_sig(),
                           SparseMatrix(a.sparse_ptr()->adjoint()));
  }
  return LabeledOperator(a.in_sig(), a.out_sig(),
                         DenseMatrix(a.dense_ptr()->adjoint()));
}

LabeledOperator transpose(const LabeledOperator& a) {
  if (a.is_sparse()) {
    return LabeledOperator(a.in_sig(), a.out_sig(),
                           SparseMatrix(a.sparse_ptr()->transpose()));
  }
  return LabeledOperator(a.in_sig(), a.out_sig(),
                         DenseMatrix(a.dense_ptr()->transpose()));
}

LabeledOperator add(const LabeledOperator& a, const LabeledOperator& b) {
  require_same_multiset(a.out_sig(), b.out_sig(), "add (out)");
  require_same_multiset(a.in_sig(), b.in_sig(), "add (in)");
  const LabeledOperator bb = b.aligned(a.out_sig(), a.in_sig());
  return binary_elementwise(
      a, bb, [](const DenseMatrix& x, const DenseMatrix& y) { return x + y; },
      [](const SparseMatrix& x, const SparseMatrix& y) {
        return SparseMatrix(x + y);
      });
}

LabeledOperator subtract(const LabeledOperator& a, const LabeledOperator& b) {
  return add(a, scale(b, -1.0));
}

LabeledOperator scale(const LabeledOperator& a, Complex c) {
  if (a.is_sparse()) {
    return LabeledOperator(a.out_sig(), a.in_sig(),
                           SparseMatrix(*a.sparse_ptr() * c));
  }
  return LabeledOperator(a.out_sig(), a.in_sig(),
                         DenseMatrix(*a.dense_ptr() * c));
}

Complex trace(const LabeledOperator& a) {
  require_same_multiset(a.out_sig(), a.in_sig(), "trace");
  IndexPermutation col_to_row(a.in_sig(), a.out_sig());
  Complex sum = 0.0;
  a.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    if (col_to_row(c) == r) sum += v;
  });
  return sum;
}

namespace {

// Per-position bookkeeping for splitting a flat index into surviving and
// traced digits.
struct DigitPlan {
  std::vector<std::int64_t> dims;
  std::vector<int> traced_slot;  // -1 when the digit survives
  std::vector<std::int64_t> kept_stride;
};

DigitPlan plan_digits(const SpaceSignature& sig,
                      const std::vector<SystemLabel>& traced,
                      const SpaceSignature& kept) {
  DigitPlan plan;
  for (const auto& e : sig.entries()) {
    plan.dims.push_back(e.dim);
    auto it = std::find(traced.begin(), traced.end(), e.label);
    if (it != traced.end()) {
      plan.traced_slot.push_back(static_cast<int>(it - traced.begin()));
      plan.kept_stride.push_back(0);
    } else {
      plan.traced_slot.push_back(-1);
      plan.kept_stride.push_back(kept.stride(*kept.position(e.label)));
    }
  }
  return plan;
}

}  // namespace

LabeledOperator partial_trace(const LabeledOperator& a,
                              const std::set<SystemLabel>& labels,
                              const StoragePolicy& policy) {
  if (labels.empty()) return a;
  for (const auto& l : labels) {
    if (!a.out_sig().contains(l) || !a.in_sig().contains(l)) {
      throw Error(ErrorCode::kLabelAbsent,
                  "cannot trace '" + l + "': needs it in both " +
                      a.out_sig().to_string() + " and " +
                      a.in_sig().to_string());
    }
    if (a.out_sig().dim_of(l) != a.in_sig().dim_of(l)) {
      throw Error(ErrorCode::kDimensionMismatch,
                  "label '" + l + "' has different dimensions on each side");
    }
  }
  const std::vector<SystemLabel> traced(labels.begin(), labels.end());
  SpaceSignature out = a.out_sig().without(labels);
  SpaceSignature in = a.in_sig().without(labels);
  const DigitPlan rp = plan_digits(a.out_sig(), traced, out);
  const DigitPlan cp = plan_digits(a.in_sig(), traced, in);

  std::vector<std::int64_t> tdigits(traced.size());
  std::vector<Entry> kept;
  a.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex v) {
    std::int64_t nr = 0;
    for (std::size_t p = rp.dims.size(); p-- > 0;) {
      const std::int64_t d = r % rp.dims[p];
      r /= rp.dims[p];
      if (rp.traced_slot[p] >= 0) {
        tdigits[rp.traced_slot[p]] = d;
      } else {
        nr += d * rp.kept_stride[p];
      }
    }
    std::int64_t nc = 0;
    for (std::size_t p = cp.dims.size(); p-- > 0;) {
      const std::int64_t d = c % cp.dims[p];
      c /= cp.dims[p];
      if (cp.traced_slot[p] >= 0) {
        if (tdigits[cp.traced_slot[p]] != d) return;
      } else {
        nc += d * cp.kept_stride[p];
      }
    }
    kept.push_back({nr, nc, v});
  });
  return LabeledOperator::from_entries(std::move(out), std::move(in), kept,
                                       policy);
}

Complex hs_inner(const LabeledOperator& a, const LabeledOperator& b) {
  require_same_multiset(a.out_sig(), b.out_sig(), "hs_inner (out)");
  require_same_multiset(a.in_sig(), b.in_sig(), "hs_inner (in)");
  const LabeledOperator bb = b.aligned(a.out_sig(), a.in_sig());
  if (!a.is_sparse() && !bb.is_sparse()) {
    return a.dense_ptr()->conjugate().cwiseProduct(*bb.dense_ptr()).sum();
  }
  const SparseMatrix sa = a.to_sparse();
  const SparseMatrix sb = bb.to_sparse();
  return SparseMatrix(sa.conjugate().cwiseProduct(sb)).sum();
}

double frobenius_norm(const LabeledOperator& a) {
  if (a.is_sparse()) return a.sparse_ptr()->norm();
  return a.dense_ptr()->norm();
}

double frobenius_distance(const LabeledOperator& a, const LabeledOperator& b) {
  return frobenius_norm(subtract(a, b));
}

bool approx_equal(const LabeledOperator& a, const LabeledOperator& b,
                  double tol) {
  if (!a.out_sig().same_multiset(b.out_sig()) ||
      !a.in_sig().same_multiset(b.in_sig())) {
    return false;
  }
  return frobenius_distance(a, b) <= tol;
}

bool is_unitary(const LabeledOperator& a, double tol) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorCode::kSignatureMismatch,
                "is_unitary needs equal dimensions: " + a.out_sig().to_string() +
                    " <- " + a.in_sig().to_string());
  }
  if (!a.is_sparse()) {
    const auto& d = *a.dense_ptr();
    const auto eye = DenseMatrix::Identity(d.rows(), d.cols());
    return (d.adjoint() * d - eye).norm() <= tol &&
           (d * d.adjoint() - eye).norm() <= tol;
  }
  const auto& s = *a.sparse_ptr();
  SparseMatrix eye(s.rows(), s.cols());
  eye.setIdentity();
  const SparseMatrix left = SparseMatrix(s.adjoint()) * s;
  const SparseMatrix right = s * SparseMatrix(s.adjoint());
  return SparseMatrix(left - eye).norm() <= tol &&
         SparseMatrix(right - eye).norm() <= tol;
}

bool is_monomial(const LabeledOperator& a) {
  if (a.rows() != a.cols()) return false;
  std::vector<int> row_count(static_cast<std::size_t>(a.rows()), 0);
  std::vector<int> col_count(static_cast<std::size_t>(a.cols()), 0);
  a.for_each_nonzero([&](std::int64_t r, std::int64_t c, Complex) {
    ++row_count[static_cast<std::size_t>(r)];
    ++col_count[static_cast<std::size_t>(c)];
  });
  return std::all_of(row_count.begin(), row_count.end(),
                     [](int n) { return n == 1; }) &&
         std::all_of(col_count.begin(), col_count.end(),
                     [](int n) { return n == 1; });
}

}  // namespace qdeloc
