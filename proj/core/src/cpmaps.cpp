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

#include "qdeloc/cpmaps.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>
#include <string>

#include "qdeloc/error.hpp"
#include "qdeloc/random.hpp"

namespace qdeloc {
namespace {

constexpr std::int64_t kDenseEigenLimit = 4096;

SystemLabel fresh_label(const SystemLabel& base,
                        const std::set<SystemLabel>& taken) {
  SystemLabel l = base + "'";
  while (taken.contains(l)) l += "'";
  return l;
}

// |1>>^{X X'} = sum_k |k>^X |k>^{X'}.
LabeledOperator max_entangled_ket(const Subsystem& x, const SystemLabel& copy) {
  SpaceSignature out({x, {copy, x.dim}});
  std::vector<Entry> entries;
  for (std::int64_t k = 0; k < x.dim; ++k) entries.push_back({k * x.dim + k, 0, 1.0});
  return LabeledOperator::from_entries(out, {}, entries);
}

void require_traceable(const KrausMap& m, const SystemLabel& label) {
  if (!m.in_sig().contains(label) || !m.out_sig().contains(label)) {
    throw Error(ErrorCode::kLabelAbsent,
                "cannot compose over '" + label + "': map is " +
                    m.in_sig().to_string() + " -> " + m.out_sig().to_string());
  }
  if (m.in_sig().dim_of(label) != m.out_sig().dim_of(label)) {
    throw Error(ErrorCode::kDimensionMismatch,
                "label '" + label + "' has different dimensions on each side");
  }
}

// Largest eigenvalue of a PSD operator by power iteration.
double power_max_eigenvalue(const SparseMatrix& s) {
  Rng rng(0x5eed);
  Vector v = random_state(s.cols(), rng);
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Vector w = s * v;
    const double norm = w.norm();
    if (norm == 0.0) return 0.0;
    const double next = std::real(v.dot(w));
    v = w / norm;
    if (std::abs(next - lambda) <= 1e-14 * std::max(1.0, std::abs(next))) {
      return next;
    }
    lambda = next;
  }
  return lambda;
}

}  // namespace

KrausMap::KrausMap(std::vector<LabeledOperator> kraus) : kraus_(std::move(kraus)) {
  if (kraus_.empty()) {
    throw Error(ErrorCode::kSignatureMismatch, "empty Kraus family");
  }
  const SpaceSignature out = kraus_.front().out_sig();
  const SpaceSignature in = kraus_.front().in_sig();
  for (auto& k : kraus_) {
    if (!k.out_sig().same_multiset(out) || !k.in_sig().same_multiset(in)) {
      throw Error(ErrorCode::kSignatureMismatch,
                  "Kraus operators disagree on signatures: " +
                      k.out_sig().to_string() + " vs " + out.to_string());
    }
    k = k.aligned(out, in);
  }
}

KrausMap KrausMap::checked(std::vector<LabeledOperator> kraus) {
  KrausMap m(std::move(kraus));
  validate(m);
  return m;
}

KrausMap KrausMap::relabeled(
    const std::map<SystemLabel, SystemLabel>& renames) const {
  std::vector<LabeledOperator> ks;
  for (const auto& k : kraus_) ks.push_back(k.relabeled(renames));
  return KrausMap(std::move(ks));
}

MapValidation inspect(const KrausMap& m, double tol) {
  LabeledOperator s = compose(adjoint(m.kraus().front()), m.kraus().front());
  for (std::size_t i = 1; i < m.size(); ++i) {
    s = add(s, compose(adjoint(m.kraus()[i]), m.kraus()[i]));
  }
  MapValidation v;
  const std::int64_t n = s.rows();
  if (n <= kDenseEigenLimit) {
    Eigen::SelfAdjointEigenSolver<DenseMatrix> es(s.to_dense(),
                                                  Eigen::EigenvaluesOnly);
    v.max_eigenvalue = es.eigenvalues().maxCoeff();
    v.min_eigenvalue = es.eigenvalues().minCoeff();
    v.deviation = std::max(std::abs(v.max_eigenvalue - 1.0),
                           std::abs(v.min_eigenvalue - 1.0));
  } else {
    const SparseMatrix sm = s.to_sparse();
    SparseMatrix eye(sm.rows(), sm.cols());
    eye.setIdentity();
    const double frob = SparseMatrix(sm - eye).norm();
    if (frob <= tol) {
      // The Frobenius norm bounds the operator norm.
      v.deviation = frob;
      v.max_eigenvalue = 1.0 + frob;
      v.min_eigenvalue = 1.0 - frob;
    } else {
      v.max_eigenvalue = power_max_eigenvalue(sm);
      SparseMatrix shifted = SparseMatrix(eye * v.max_eigenvalue) - sm;
      v.min_eigenvalue = v.max_eigenvalue - power_max_eigenvalue(shifted);
      v.deviation = std::max(std::abs(v.max_eigenvalue - 1.0),
                             std::abs(v.min_eigenvalue - 1.0));
    }
  }
  v.trace_preserving = v.deviation <= tol;
  return v;
}

MapValidation validate(const KrausMap& m, double tol) {
  MapValidation v = inspect(m, tol);
  if (v.max_eigenvalue > 1.0 + tol) {
    throw Error(ErrorCode::kTraceIncreasing,
                "largest eigenvalue of sum K^dagger K is " +
                    std::to_string(v.max_eigenvalue));
  }
  return v;
}

LabeledOperator apply(const KrausMap& m, const LabeledOperator& rho,
                      const StoragePolicy& policy) {
  LabeledOperator acc;
  bool first = true;
  for (const auto& k : m.kraus()) {
    LabeledOperator term = compose(compose(k, rho, policy), adjoint(k), policy);
    acc = first ? term : add(acc, term);
    first = false;
  }
  return acc;
}

KrausMap tensor_maps(std::span<const KrausMap> maps,
                     const StoragePolicy& policy) {
  std::vector<LabeledOperator> family{LabeledOperator::scalar(1.0)};
  for (const auto& m : maps) {
    std::vector<LabeledOperator> next;
    next.reserve(family.size() * m.size());
    for (const auto& a : family) {
      for (const auto& k : m.kraus()) next.push_back(tensor(a, k, policy));
    }
    family = std::move(next);
  }
  return KrausMap(std::move(family));
}

KrausMap partial_compose(const KrausMap& m, const SystemLabel& label) {
  return partial_compose(m, std::set<SystemLabel>{label});
}

KrausMap partial_compose(const KrausMap& m,
                         const std::set<SystemLabel>& labels) {
  for (const auto& l : labels) require_traceable(m, l);
  std::vector<LabeledOperator> ks;
  ks.reserve(m.size());
  for (const auto& k : m.kraus()) ks.push_back(partial_trace(k, labels));
  return KrausMap(std::move(ks));
}

LabeledOperator partial_compose_sandwich(const KrausMap& m,
                                         const SystemLabel& label,
                                         const LabeledOperator& sigma) {
  require_traceable(m, label);
  const SpaceSignature rest_in = m.in_sig().without({label});
  const SpaceSignature rest_out = m.out_sig().without({label});
  if (!sigma.out_sig().same_multiset(rest_in) ||
      !sigma.in_sig().same_multiset(rest_in)) {
    throw Error(ErrorCode::kSignatureMismatch,
                "input operator must act on " + rest_in.to_string());
  }
  std::set<SystemLabel> taken = m.in_sig().label_set();
  for (const auto& l : m.out_sig().labels()) taken.insert(l);
  const SystemLabel copy = fresh_label(label, taken);
  const Subsystem x{label, m.in_sig().dim_of(label)};
  const SpaceSignature copy_sig({{copy, x.dim}});

  const LabeledOperator omega = max_entangled_ket(x, copy);
  const LabeledOperator rho = tensor(sigma, compose(omega, adjoint(omega)));
  LabeledOperator evolved;
  bool first = true;
  for (const auto& k : m.kraus()) {
    const LabeledOperator kx = tensor(k, identity(copy_sig));
    LabeledOperator term = compose(compose(kx, rho), adjoint(kx));
    evolved = first ? term : add(evolved, term);
    first = false;
  }
  const LabeledOperator project = tensor(adjoint(omega), identity(rest_out));
  return compose(compose(project, evolved), adjoint(project));
}

double full_compose(const KrausMap& m) {
  if (!m.in_sig().same_multiset(m.out_sig())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "full composition leaves open labels: " +
                    m.in_sig().to_string() + " -> " + m.out_sig().to_string());
  }
  double p = 0.0;
  for (const auto& k : m.kraus()) p += std::norm(trace(k));
  return p;
}

double full_compose(const KrausMap& m, const std::set<SystemLabel>& labels) {
  if (labels != m.in_sig().label_set() || labels != m.out_sig().label_set()) {
    throw Error(ErrorCode::kSignatureMismatch,
                "contracting the given labels does not close " +
                    m.in_sig().to_string() + " -> " + m.out_sig().to_string());
  }
  return full_compose(m);
}

double full_compose(std::span<const KrausMap> steps,
                    const StoragePolicy& policy) {
  std::vector<LabeledOperator> chosen(steps.size());
  double p = 0.0;
  std::function<void(std::size_t)> walk = [&](std::size_t depth) {
    if (depth == steps.size()) {
      p += std::norm(chain_trace(FactoredOperator(chosen), policy));
      return;
    }
    for (const auto& k : steps[depth].kraus()) {
      chosen[depth] = k;
      walk(depth + 1);
    }
  };
  walk(0);
  return p;
}

double full_compose_sandwich(const KrausMap& m) {
  if (!m.in_sig().same_multiset(m.out_sig())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "full composition leaves open labels");
  }
  std::set<SystemLabel> taken = m.in_sig().label_set();
  LabeledOperator omega = LabeledOperator::scalar(1.0);
  std::vector<Subsystem> copies;
  for (const auto& e : m.in_sig().entries()) {
    const SystemLabel copy = fresh_label(e.label, taken);
    taken.insert(copy);
    copies.push_back({copy, e.dim});
    omega = tensor(omega, max_entangled_ket(e, copy));
  }
  const SpaceSignature copy_sig(copies);
  double p = 0.0;
  for (const auto& k : m.kraus()) {
    const LabeledOperator kx = tensor(k, identity(copy_sig));
    const LabeledOperator rho =
        compose(compose(kx, compose(omega, adjoint(omega))), adjoint(kx));
    p += std::real(compose(adjoint(omega), compose(rho, omega)).scalar_value());
  }
  return p;
}

ConsistencyReport consistency_check(const KrausMap& m, const KrausMap& m_comp,
                                    const std::set<SystemLabel>& labels) {
  if (!m.in_sig().same_multiset(m_comp.in_sig()) ||
      !m.out_sig().same_multiset(m_comp.out_sig())) {
    throw Error(ErrorCode::kSignatureMismatch,
                "map and complementary map act on different systems");
  }
  std::vector<LabeledOperator> all = m.kraus();
  all.insert(all.end(), m_comp.kraus().begin(), m_comp.kraus().end());
  const MapValidation sum = inspect(KrausMap(std::move(all)), kTraceTolerance);

  ConsistencyReport r;
  r.trace_deviation = sum.deviation;
  r.sum_trace_preserving = sum.trace_preserving;
  r.composition = full_compose(m, labels);
  r.complementary = full_compose(m_comp, labels);
  r.compositions_sum_to_one =
      std::abs(r.composition + r.complementary - 1.0) <= kTraceTolerance;
  return r;
}

bool ChoiMatrix::is_psd(double tol) const {
  const DenseMatrix d = matrix.to_dense();
  Eigen::SelfAdjointEigenSolver<DenseMatrix> es(d, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

LabeledOperator ChoiMatrix::input_marginal() const {
  return partial_trace(matrix, output.label_set());
}

ChoiMatrix choi(const KrausMap& m) {
  ChoiMatrix c;
  c.output = m.out_sig();
  std::set<SystemLabel> taken = m.out_sig().label_set();
  std::vector<Subsystem> copies;
  for (const auto& e : m.in_sig().entries()) {
    SystemLabel l = e.label;
    if (taken.contains(l)) l = fresh_label(e.label, taken);
    taken.insert(l);
    c.copy_of[e.label] = l;
    copies.push_back({l, e.dim});
  }
  c.input_copy = SpaceSignature(copies);
  const SpaceSignature joint = c.output.concat(c.input_copy);

  bool first = true;
  for (const auto& k : m.kraus()) {
    const std::int64_t cols = k.cols();
    std::vector<Entry> vec;
    k.for_each_nonzero([&](std::int64_t r, std::int64_t col, Complex v) {
      vec.push_back({r * cols + col, 0, v});
    });
    const LabeledOperator ket_k = LabeledOperator::from_entries(joint, {}, vec);
    LabeledOperator term = compose(ket_k, adjoint(ket_k));
    c.matrix = first ? term : add(c.matrix, term);
    first = false;
  }
  return c;
}

namespace {

void require_process_wiring(const KrausMap& w, const KrausMap& ma,
                            const KrausMap& mb) {
  const SpaceSignature party_out = ma.out_sig().concat(mb.out_sig());
  const SpaceSignature party_in = ma.in_sig().concat(mb.in_sig());
  if (!w.in_sig().same_multiset(party_out) ||
      !w.out_sig().same_multiset(party_in)) {
    throw Error(ErrorCode::kSignatureMismatch,
                "process must map " + party_out.to_string() + " to " +
                    party_in.to_string() + ", got " + w.in_sig().to_string() +
                    " -> " + w.out_sig().to_string());
  }
}

}  // namespace

double link_probability(const KrausMap& w, const KrausMap& ma,
                        const KrausMap& mb) {
  require_process_wiring(w, ma, mb);
  const std::vector<KrausMap> maps{w, ma, mb};
  return full_compose(tensor_maps(maps));
}

double link_probability_choi(const KrausMap& w, const KrausMap& ma,
                             const KrausMap& mb) {
  require_process_wiring(w, ma, mb);
  const std::vector<KrausMap> parties{ma, mb};
  const ChoiMatrix cw = choi(w);
  const ChoiMatrix cp = choi(tensor_maps(parties));
  for (const auto* c : {&cw, &cp}) {
    for (const auto& [orig, copy] : c->copy_of) {
      if (orig != copy) {
        throw Error(ErrorCode::kLabelCollision,
                    "label '" + orig + "' is both input and output of one map");
      }
    }
  }
  return std::real(trace(compose(cw.matrix, transpose(cp.matrix))));
}

}  // namespace qdeloc
