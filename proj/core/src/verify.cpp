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

#include "qdeloc/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <nlohmann/json.hpp>
#include <random>

#include "qdeloc/circuits.hpp"
#include "qdeloc/cpmaps.hpp"
#include "qdeloc/error.hpp"
#include "qdeloc/random.hpp"
#include "qdeloc/reframe.hpp"
#include "qdeloc/switch.hpp"

namespace qdeloc {
namespace {

using qswitch::Perspective;
using qswitch::SwitchOps;

constexpr double kTightTolerance = 1e-12;
constexpr double kSandwichTolerance = 1e-11;
constexpr double kReductionTolerance = 1e-10;
constexpr double kMomentTolerance = 1e-8;
constexpr double kWitnessTolerance = 1e-6;
constexpr double kWitnessImaginary = 1e-9;

struct Measured {
  std::vector<std::pair<std::string, double>> values;
  bool pass = true;

  // Records `value` and fails the case if it exceeds `limit`.
  void bound(const std::string& name, double value, double limit) {
    values.emplace_back(name, value);
    pass = pass && std::isfinite(value) && value <= limit;
  }
  void note(const std::string& name, double value) { values.emplace_back(name, value); }
};

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  return h;
}

Rng case_rng(std::uint64_t seed, const std::string& suite, int index) {
  const std::uint64_t h = fnv1a(suite);
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(index)};
  return Rng(seq);
}

class Runner {
 public:
  Runner(std::string suite, const VerifyOptions& options) : options_(options) {
    report_.suite = std::move(suite);
    report_.seed = options.seed;
    report_.samples = options.samples;
  }

  double tol(double fallback) const { return options_.tol.value_or(fallback); }
  const StoragePolicy& policy() const { return options_.policy; }
  int samples() const { return options_.samples; }
  Rng rng(int index) const { return case_rng(options_.seed, report_.suite, index); }

  void run(const std::string& id, double tolerance,
           const std::function<Measured(double)>& body) {
    CaseResult c;
    c.id = id;
    c.tolerance = tolerance;
    const auto start = std::chrono::steady_clock::now();
    try {
      Measured m = body(tolerance);
      c.values = std::move(m.values);
      c.pass = m.pass;
    } catch (const std::exception& e) {
      c.pass = false;
      c.error = e.what();
    }
    c.wall_ms = std::chrono::duration<double, std::milli>(
                    std::chrono::steady_clock::now() - start)
                    .count();
    report_.cases.push_back(std::move(c));
  }

  VerificationReport take() { return std::move(report_); }

 private:
  const VerifyOptions& options_;
  VerificationReport report_;
};

std::string sample_id(const char* prefix, int i) {
  return std::string(prefix) + "-" + std::to_string(i);
}

DenseMatrix unit_gaussian(std::int64_t rows, std::int64_t cols, Rng& rng) {
  DenseMatrix m = random_gaussian(rows, cols, rng);
  return m / m.norm();
}

LabeledOperator labeled(const DenseMatrix& m, std::vector<Subsystem> out,
                        std::vector<Subsystem> in) {
  return LabeledOperator(SpaceSignature(std::move(out)), SpaceSignature(std::move(in)), m);
}

// --- eq1 ---------------------------------------------------------------------

void suite_eq1(Runner& r) {
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("chain", i), r.tol(kTightTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      const int systems = std::uniform_int_distribution<int>(1, 5)(rng);
      std::vector<std::int64_t> dims{1};
      for (int s = 0; s < systems; ++s) {
        dims.push_back(std::uniform_int_distribution<int>(1, 4)(rng));
      }
      dims.push_back(1);
      const auto label = [](int s) { return "S" + std::to_string(s); };

      std::vector<KrausMap> steps;
      DenseMatrix product = DenseMatrix::Identity(1, 1);
      for (int s = 1; s <= systems + 1; ++s) {
        const DenseMatrix k = unit_gaussian(dims[s], dims[s - 1], rng);
        product = k * product;
        std::vector<Subsystem> out, in;
        if (s <= systems) out.push_back({label(s), dims[s]});
        if (s > 1) in.push_back({label(s - 1), dims[s - 1]});
        steps.push_back(KrausMap({labeled(k, out, in)}));
      }
      std::shuffle(steps.begin(), steps.end(), rng);
      const CircuitDescription c(std::move(steps));

      Measured m;
      const Complex amp = chain_amplitude(c, r.policy());
      m.note("steps", systems + 1);
      m.bound("amplitude_deviation", std::abs(amp - product(0, 0)), tol);
      m.bound("probability_deviation",
              std::abs(chain_probability(c, r.policy()) - std::norm(amp)), tol);
      m.bound("not_chain", c.is_chain() ? 0.0 : 1.0, 0.0);
      return m;
    });
  }
}

// --- composition ---------------------------------------------------------------

KrausMap random_map(std::vector<Subsystem> out, std::vector<Subsystem> in, int count,
                    Rng& rng) {
  const SpaceSignature so(out), si(in);
  std::vector<LabeledOperator> ks;
  for (int k = 0; k < count; ++k) {
    ks.push_back(LabeledOperator(so, si, unit_gaussian(so.dim(), si.dim(), rng)));
  }
  return KrausMap(std::move(ks));
}

KrausMap random_channel_map(const Subsystem& in, const Subsystem& out, int count,
                            Rng& rng) {
  std::vector<LabeledOperator> ks;
  for (const auto& k : random_channel(in.dim, out.dim, count, rng)) {
    ks.push_back(labeled(k, {out}, {in}));
  }
  return KrausMap(std::move(ks));
}

void suite_composition(Runner& r) {
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("instance", i), r.tol(kSandwichTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      auto dim = [&](int lo) { return std::uniform_int_distribution<int>(lo, 3)(rng); };
      auto count = [&] { return std::uniform_int_distribution<int>(1, 3)(rng); };
      const Subsystem x{"X", dim(2)}, a{"A", dim(1)}, b{"B", dim(1)};
      const KrausMap m = random_map({x, b}, {x, a}, count(), rng);
      const KrausMap reduced = partial_compose(m, x.label);

      Measured meas;
      double worst = 0.0;
      for (std::int64_t p = 0; p < a.dim; ++p) {
        for (std::int64_t q = 0; q < a.dim; ++q) {
          const LabeledOperator sigma = ketbra(a.label, p, a.label, q, a.dim);
          worst = std::max(worst,
                           frobenius_distance(apply(reduced, sigma),
                                              partial_compose_sandwich(m, x.label, sigma)));
        }
      }
      meas.bound("partial_deviation", worst, tol);

      const KrausMap closed = random_map({x, a}, {x, a}, count(), rng);
      meas.bound("full_deviation",
                 std::abs(full_compose(closed) - full_compose_sandwich(closed)), tol);

      const Subsystem ai{"A_I", 2}, ao{"A_O", 2}, bi{"B_I", 2}, bo{"B_O", 2};
      const KrausMap ma = random_channel_map(ai, ao, count(), rng);
      const KrausMap mb = random_channel_map(bi, bo, count(), rng);
      const KrausMap w = random_map({ai, bi}, {ao, bo}, count(), rng);
      meas.bound("link_deviation",
                 std::abs(link_probability(w, ma, mb) - link_probability_choi(w, ma, mb)),
                 tol);
      return meas;
    });
  }
}

// --- reframe -----------------------------------------------------------------

void suite_reframe(Runner& r) {
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("circuit", i), r.tol(kInvarianceTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
      const Subsystem s1{"S1", pick(2, 8)}, s2{"S2", pick(2, 8)};
      std::vector<KrausMap> steps;
      if (i % 2 == 0) {
        // Preparation, channel, and a scaled effect.
        std::vector<LabeledOperator> prep, effect;
        for (const auto& k : random_channel(1, s1.dim, pick(1, 2), rng)) {
          prep.push_back(labeled(k, {s1}, {}));
        }
        const double weight = std::uniform_real_distribution<double>(0.3, 1.0)(rng);
        for (const auto& k : random_channel(s2.dim, 1, pick(1, 2), rng)) {
          effect.push_back(labeled(k * weight, {}, {s2}));
        }
        steps.emplace_back(std::move(prep));
        steps.push_back(random_channel_map(s1, s2, pick(1, 2), rng));
        steps.emplace_back(std::move(effect));
      } else {
        // Two maps wired into a cycle.
        steps.push_back(random_map({s2}, {s1}, pick(1, 2), rng));
        steps.push_back(random_map({s1}, {s2}, pick(1, 2), rng));
      }
      const CircuitDescription c(std::move(steps));
      const KrausMap m = circuit_superoperator(c, r.policy());

      const std::int64_t total = s1.dim * s2.dim;
      std::vector<std::int64_t> divisors;
      for (std::int64_t d = 1; d <= total; ++d) {
        if (total % d == 0) divisors.push_back(d);
      }
      const std::int64_t d1 = divisors[static_cast<std::size_t>(
          pick(0, static_cast<int>(divisors.size()) - 1))];
      const SpaceSignature fresh({{"Y1", d1}, {"Y2", total / d1}});
      const SubsystemIsomorphism j(
          LabeledOperator(fresh, m.in_sig(), haar_unitary(total, rng)), r.policy());

      const InvarianceReport rep = invariance_check(m, j, tol, r.policy());
      Measured meas;
      meas.note("before", rep.before);
      meas.note("after", rep.after);
      meas.bound("difference", rep.difference, tol);
      return meas;
    });
  }
}

// --- switch ------------------------------------------------------------------

void suite_reduction(Runner& r, Perspective p) {
  const auto body = [&](const SwitchOps& ops, double tol) {
    const qswitch::ReductionReport rep = qswitch::verify_reduction(p, ops, r.policy());
    const double stage_tol = std::min(tol, kTightTolerance);
    Measured m;
    m.bound("distance", rep.distance, tol);
    m.bound("cyc_distance", rep.cyc_distance, tol);
    m.bound("control_stage", rep.control_stage, stage_tol);
    m.bound("routing_stage", rep.routing_stage, stage_tol);
    return m;
  };
  r.run("trivial-ops", r.tol(kReductionTolerance),
        [&](double tol) { return body(SwitchOps::trivial(), tol); });
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("haar", i), r.tol(kReductionTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      return body(SwitchOps::random(rng), tol);
    });
  }
}

void suite_inequivalence(Runner& r) {
  const qswitch::WitnessReport w = qswitch::inequivalence_witness(r.policy());
  r.run("omega-traces", r.tol(kWitnessTolerance), [&](double tol) {
    Measured m;
    m.note("omega_a", w.omega_a.real());
    m.note("omega_b", w.omega_b.real());
    m.bound("omega_a_deviation", std::abs(w.omega_a.real() - 40960.0), tol);
    m.bound("omega_b_deviation", std::abs(w.omega_b.real() - 32768.0), tol);
    m.bound("omega_a_imag", std::abs(w.omega_a.imag()), kWitnessImaginary);
    m.bound("omega_b_imag", std::abs(w.omega_b.imag()), kWitnessImaginary);
    return m;
  });
  r.run("summand-terms", r.tol(kWitnessTolerance), [&](double tol) {
    Measured m;
    for (int k = 0; k < 2; ++k) {
      m.bound("diag_a_" + std::to_string(k), std::abs(w.terms_a[k] - 16384.0), tol);
      m.bound("diag_b_" + std::to_string(k), std::abs(w.terms_b[k] - 16384.0), tol);
    }
    m.note("cross_a", w.terms_a[2].real());
    m.note("cross_b", w.terms_b[2].real());
    m.bound("cross_b_deviation", std::abs(w.terms_b[2]), tol);
    return m;
  });
  r.run("sparse-oracle", r.tol(kWitnessTolerance), [&](double tol) {
    StoragePolicy sparse = r.policy();
    sparse.force_dense = false;
    Measured m;
    const SwitchOps x = qswitch::witness_ops(qswitch::pauli_x());
    const SwitchOps y = qswitch::witness_ops(qswitch::pauli_y());
    const Complex expected[2] = {w.omega_a, w.omega_b};
    int idx = 0;
    for (Perspective p : {Perspective::kAlice, Perspective::kBob}) {
      const FactoredSum omega{{{1.0, qswitch::k_temp(p, x)}, {1.0, qswitch::k_temp(p, y)}}};
      const double norm = frobenius_norm(expand(omega, sparse));
      m.bound(idx == 0 ? "sparse_a_deviation" : "sparse_b_deviation",
              std::abs(norm * norm - expected[idx].real()), tol);
      ++idx;
    }
    return m;
  });
}

void suite_similarity(Runner& r) {
  const auto body = [&](const SwitchOps& ops, double tol) {
    const qswitch::SimilarityReport s = qswitch::fixed_ops_similarity(ops, 8, r.policy());
    Measured m;
    m.bound("canonical_distance", s.canonical_distance, tol);
    m.bound("conjugation_bound_a", s.conjugation_bound_a, tol);
    m.bound("conjugation_bound_b", s.conjugation_bound_b, tol);
    m.bound("moment_difference", s.max_moment_difference, r.tol(kMomentTolerance));
    return m;
  };
  r.run("trivial-ops", r.tol(kReductionTolerance),
        [&](double tol) { return body(SwitchOps::trivial(), tol); });
  r.run("witness-ops", r.tol(kReductionTolerance), [&](double tol) {
    return body(qswitch::witness_ops(qswitch::pauli_x()), tol);
  });
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("haar", i), r.tol(kReductionTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      return body(SwitchOps::random(rng), tol);
    });
  }
}

void suite_amplitude(Runner& r) {
  r.run("interference", r.tol(kTightTolerance), [&](double tol) {
    Vector psi(4), phi(4);
    const double h = 1.0 / std::sqrt(2.0);
    psi << h, h, 0, 0;   // |0>_t |+>_c
    phi << 0, 0, h, -h;  // |1>_t |->_c
    const SwitchOps ops = SwitchOps::from_matrices(psi, qswitch::pauli_x(),
                                                   qswitch::pauli_z(), phi);
    // <1| (Z X - X Z) |0> / 2 on the target alone.
    const DenseMatrix zx = qswitch::pauli_z() * qswitch::pauli_x();
    const DenseMatrix xz = qswitch::pauli_x() * qswitch::pauli_z();
    const Complex oracle = (zx(1, 0) - xz(1, 0)) / 2.0;
    Measured m;
    m.note("oracle", oracle.real());
    m.bound("closed_form", std::abs(qswitch::switch_amplitude(ops) - oracle), tol);
    m.bound("k_sw", std::abs(chain_trace(qswitch::k_sw(ops), r.policy()) - oracle), tol);
    m.bound("k_temp_a", std::abs(chain_trace(qswitch::k_temp_a(ops), r.policy()) - oracle), tol);
    m.bound("k_temp_b", std::abs(chain_trace(qswitch::k_temp_b(ops), r.policy()) - oracle), tol);
    return m;
  });
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("haar", i), r.tol(kTightTolerance), [&](double tol) {
      Rng rng = r.rng(i);
      const SwitchOps ops = SwitchOps::random(rng);
      const Complex closed = qswitch::switch_amplitude(ops);
      Measured m;
      m.bound("k_sw", std::abs(chain_trace(qswitch::k_sw(ops), r.policy()) - closed), tol);
      m.bound("k_temp_a", std::abs(chain_trace(qswitch::k_temp_a(ops), r.policy()) - closed), tol);
      m.bound("k_temp_b", std::abs(chain_trace(qswitch::k_temp_b(ops), r.policy()) - closed), tol);
      return m;
    });
  }
}

double unitarity_deviation(const LabeledOperator& u) {
  const LabeledOperator left = compose(adjoint(u), u);
  const LabeledOperator right = compose(u, adjoint(u));
  return std::max(frobenius_distance(left, identity(u.in_sig())),
                  frobenius_distance(right, identity(u.out_sig())));
}

void suite_unitarity(Runner& r) {
  const double tol = r.tol(kReductionTolerance);
  r.run("u_sw", tol, [&](double t) {
    Measured m;
    m.bound("deviation", unitarity_deviation(qswitch::u_sw()), t);
    return m;
  });
  r.run("cswap", tol, [&](double t) {
    Measured m;
    m.bound("deviation", unitarity_deviation(qswitch::cswap("a", "b", "c", "d", "e", "f")), t);
    return m;
  });
  for (Perspective p : {Perspective::kAlice, Perspective::kBob}) {
    r.run(p == Perspective::kAlice ? "j_a" : "j_b", tol, [&](double t) {
      StoragePolicy sparse = r.policy();
      sparse.force_dense = false;
      Measured m;
      m.bound("deviation", unitarity_deviation(qswitch::j_iso(p).expanded(sparse)), t);
      return m;
    });
  }
  for (int i = 0; i < r.samples(); ++i) {
    r.run(sample_id("r-haar", i), tol, [&](double t) {
      Rng rng = r.rng(i);
      const DenseMatrix u = haar_unitary(2, rng);
      Measured m;
      m.bound("r_of_ub", unitarity_deviation(qswitch::r_of_ub(single_system(u, "B_I", "B_O"))), t);
      m.bound("r_tilde_of_ua",
              unitarity_deviation(qswitch::r_tilde_of_ua(single_system(u, "A_I", "A_O"))), t);
      return m;
    });
  }
}

using SuiteFn = void (*)(Runner&);

const std::vector<std::pair<std::string, SuiteFn>>& registry() {
  static const std::vector<std::pair<std::string, SuiteFn>> suites{
      {"eq1", suite_eq1},
      {"composition", suite_composition},
      {"reframe", suite_reframe},
      {"switch-a", [](Runner& r) { suite_reduction(r, Perspective::kAlice); }},
      {"switch-b", [](Runner& r) { suite_reduction(r, Perspective::kBob); }},
      {"inequivalence", suite_inequivalence},
      {"similarity", suite_similarity},
      {"amplitude", suite_amplitude},
      {"unitarity", suite_unitarity},
  };
  return suites;
}

}  // namespace

int VerificationReport::passed() const {
  return static_cast<int>(
      std::count_if(cases.begin(), cases.end(), [](const CaseResult& c) { return c.pass; }));
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> n;
    for (const auto& [name, fn] : registry()) n.push_back(name);
    return n;
  }();
  return names;
}

VerificationReport run_suite(const std::string& name, const VerifyOptions& options) {
  if (name == "all") {
    VerificationReport all;
    all.suite = "all";
    all.seed = options.seed;
    all.samples = options.samples;
    for (const auto& [suite, fn] : registry()) {
      Runner r(suite, options);
      fn(r);
      for (auto& c : r.take().cases) {
        c.id = suite + "/" + c.id;
        all.cases.push_back(std::move(c));
      }
    }
    return all;
  }
  for (const auto& [suite, fn] : registry()) {
    if (suite == name) {
      Runner r(suite, options);
      fn(r);
      return r.take();
    }
  }
  throw Error(ErrorCode::kOutOfRange, "unknown suite '" + name + "'");
}

std::string to_json(const VerificationReport& report, bool with_timing) {
  using json = nlohmann::ordered_json;
  json cases = json::array();
  for (const auto& c : report.cases) {
    json values = json::object();
    for (const auto& [k, v] : c.values) values[k] = v;
    json entry{{"id", c.id},
               {"pass", c.pass},
               {"values", std::move(values)},
               {"tolerance", c.tolerance},
               {"wall_ms", with_timing ? c.wall_ms : 0.0}};
    if (!c.error.empty()) entry["error"] = c.error;
    cases.push_back(std::move(entry));
  }
  const json doc{{"schema", 1},
                 {"suite", report.suite},
                 {"seed", report.seed},
                 {"samples", report.samples},
                 {"cases", std::move(cases)},
                 {"summary",
                  {{"total", report.cases.size()},
                   {"passed", report.passed()},
                   {"failed", report.failed()}}}};
  return doc.dump(2);
}

}  // namespace qdeloc
