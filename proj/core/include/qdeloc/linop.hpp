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

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <span>
#include <variant>
#include <vector>

#include "qdeloc/spaces.hpp"

namespace qdeloc {

using Complex = std::complex<double>;
using DenseMatrix = Eigen::MatrixXcd;
using SparseMatrix = Eigen::SparseMatrix<Complex>;
using Vector = Eigen::VectorXcd;

/// Entries at or below this magnitude are not stored in sparse form.
inline constexpr double kDropTolerance = 1e-15;
/// Default absolute Frobenius tolerance for operator equality.
inline constexpr double kDefaultTolerance = 1e-10;

/// Controls dense/sparse selection and the expansion memory guard.
struct StoragePolicy {
  /// Dense storage when both sides have dimension <= this.
  std::int64_t dense_threshold = 4096;
  std::uint64_t memory_budget_bytes = std::uint64_t{2048} << 20;
  /// Request dense storage regardless of size (still budget-checked).
  bool force_dense = false;

  bool prefers_dense(std::int64_t rows, std::int64_t cols) const {
    return force_dense || (rows <= dense_threshold && cols <= dense_threshold);
  }
  /// Throws MemoryBudgetExceeded with the estimate in the message.
  void require_dense(std::int64_t rows, std::int64_t cols,
                     const char* what) const;
  void require_sparse(std::int64_t cols, std::uint64_t nnz,
                      const char* what) const;
};

struct Entry {
  std::int64_t row = 0;
  std::int64_t col = 0;
  Complex value;
};

/// A complex matrix of shape (out_sig.dim x in_sig.dim), rows indexed by the
/// output signature and columns by the input signature. Immutable once built.
class LabeledOperator {
 public:
  /// The scalar 0 on trivial signatures.
  LabeledOperator();
  LabeledOperator(SpaceSignature out, SpaceSignature in, DenseMatrix m);
  LabeledOperator(SpaceSignature out, SpaceSignature in, SparseMatrix m);

  /// Duplicate coordinates are summed.
  static LabeledOperator from_entries(SpaceSignature out, SpaceSignature in,
                                      std::span<const Entry> entries,
                                      const StoragePolicy& policy = {});
  static LabeledOperator scalar(Complex value);
  static LabeledOperator zero(SpaceSignature out, SpaceSignature in,
                              const StoragePolicy& policy = {});

  const SpaceSignature& out_sig() const { return out_; }
  const SpaceSignature& in_sig() const { return in_; }
  std::int64_t rows() const { return out_.dim(); }
  std::int64_t cols() const { return in_.dim(); }

  bool is_sparse() const { return std::holds_alternative<SparseMatrix>(m_); }
  const DenseMatrix* dense_ptr() const { return std::get_if<DenseMatrix>(&m_); }
  const SparseMatrix* sparse_ptr() const {
    return std::get_if<SparseMatrix>(&m_);
  }

  /// Number of entries with magnitude above the drop tolerance.
  std::int64_t nnz() const;
  Complex at(std::int64_t row, std::int64_t col) const;
  /// Value of a trivial-signature operator.
  Complex scalar_value() const;

  DenseMatrix to_dense(const StoragePolicy& policy = {}) const;
  SparseMatrix to_sparse() const;
  /// Re-stores under `policy`'s dense/sparse rule.
  LabeledOperator restored(const StoragePolicy& policy) const;

  /// Nonzero entries in row-major order.
  std::vector<Entry> entries() const;

  template <class F>
  void for_each_nonzero(F&& f) const {
    if (const auto* d = dense_ptr()) {
      for (Eigen::Index c = 0; c < d->cols(); ++c) {
        for (Eigen::Index r = 0; r < d->rows(); ++r) {
          const Complex v = (*d)(r, c);
          if (std::abs(v) > kDropTolerance) f(std::int64_t{r}, std::int64_t{c}, v);
        }
      }
    } else {
      const auto& s = *sparse_ptr();
      for (Eigen::Index c = 0; c < s.outerSize(); ++c) {
        for (SparseMatrix::InnerIterator it(s, c); it; ++it) {
          if (std::abs(it.value()) > kDropTolerance) {
            f(std::int64_t{it.row()}, std::int64_t{it.col()}, it.value());
          }
        }
      }
    }
  }

  /// Same operator with its signatures reordered to `out` and `in`, which
  /// must be permutations of the current ones.
  LabeledOperator aligned(const SpaceSignature& out,
                          const SpaceSignature& in) const;
  /// Renames labels on both sides; the matrix is unchanged.
  LabeledOperator relabeled(
      const std::map<SystemLabel, SystemLabel>& renames) const;
  LabeledOperator relabeled_out(
      const std::map<SystemLabel, SystemLabel>& renames) const;
  LabeledOperator relabeled_in(
      const std::map<SystemLabel, SystemLabel>& renames) const;

 private:
  SpaceSignature out_;
  SpaceSignature in_;
  std::variant<DenseMatrix, SparseMatrix> m_;
};

// --- constructors for common operators -------------------------------------

LabeledOperator identity(const SpaceSignature& sig,
                         const StoragePolicy& policy = {});
/// 1^{X->Y}: maps |k>^X to |k>^Y. Throws DimensionMismatch.
LabeledOperator identity_relabel(const Subsystem& from, const Subsystem& to);
/// Index-wise identity between two signatures of equal total dimension.
LabeledOperator identity_relabel(const SpaceSignature& from,
                                 const SpaceSignature& to,
                                 const StoragePolicy& policy = {});
/// Unitary reordering tensor factors from `from` to `to`.
LabeledOperator permutation_matrix(const SpaceSignature& from,
                                   const SpaceSignature& to,
                                   const StoragePolicy& policy = {});

/// Column vector |v> with trivial input.
LabeledOperator ket(const SpaceSignature& out, const Vector& amplitudes);
/// Row functional <v| (conjugates `amplitudes`) with trivial output.
LabeledOperator bra(const SpaceSignature& in, const Vector& amplitudes);
LabeledOperator basis_ket(const SpaceSignature& out,
                          std::span<const std::int64_t> digits);
LabeledOperator basis_bra(const SpaceSignature& in,
                          std::span<const std::int64_t> digits);
/// |k_out>^{out} <k_in|^{in} on single subsystems of dimension `dim`.
LabeledOperator ketbra(const SystemLabel& out, std::int64_t k_out,
                       const SystemLabel& in, std::int64_t k_in,
                       std::int64_t dim = 2);
/// Wraps a plain matrix with single-label signatures in -> out.
LabeledOperator single_system(const DenseMatrix& m, const SystemLabel& in,
                              const SystemLabel& out);

// --- algebra -----------------------------------------------------------------

/// Kronecker product; out = a.out ++ b.out, in = a.in ++ b.in. Throws
/// LabelCollision if a label repeats within one side.
LabeledOperator tensor(const LabeledOperator& a, const LabeledOperator& b,
                       const StoragePolicy& policy = {});
LabeledOperator tensor(std::span<const LabeledOperator> ops,
                       const StoragePolicy& policy = {});

/// a * P * b where P aligns b.out to a.in. out = a.out, in = b.in.
LabeledOperator compose(const LabeledOperator& a, const LabeledOperator& b,
                        const StoragePolicy& policy = {});

LabeledOperator adjoint(const LabeledOperator& a);
LabeledOperator transpose(const LabeledOperator& a);
LabeledOperator add(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator subtract(const LabeledOperator& a, const LabeledOperator& b);
LabeledOperator scale(const LabeledOperator& a, Complex c);

Complex trace(const LabeledOperator& a);
/// Contracts each label in `labels` between output and input.
LabeledOperator partial_trace(const LabeledOperator& a,
                              const std::set<SystemLabel>& labels,
                              const StoragePolicy& policy = {});

/// Tr[a^dagger b] after aligning b to a.
Complex hs_inner(const LabeledOperator& a, const LabeledOperator& b);
double frobenius_norm(const LabeledOperator& a);
double frobenius_distance(const LabeledOperator& a, const LabeledOperator& b);
/// Signature multisets match and distance <= tol.
bool approx_equal(const LabeledOperator& a, const LabeledOperator& b,
                  double tol = kDefaultTolerance);

/// ||a^dagger a - 1||_F <= tol and ||a a^dagger - 1||_F <= tol.
bool is_unitary(const LabeledOperator& a, double tol = kDefaultTolerance);
/// Exactly one nonzero per row and per column (a permutation with phases).
bool is_monomial(const LabeledOperator& a);

}  // namespace qdeloc
