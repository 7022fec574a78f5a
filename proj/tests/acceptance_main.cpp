// Copyright 2026 The Fouriq Authors
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
//
// End-to-end verification suite. Each check prints one PASS/FAIL line; the
// process exits nonzero if any check fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <vector>

#include "fouriq/extract.hpp"
#include "fouriq/family.hpp"
#include "fouriq/hamiltonian.hpp"
#include "fouriq/learning.hpp"
#include "test_util.hpp"

using namespace fouriq;

namespace {

struct Check {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;
};

// ---------------------------------------------------------------------------
// Shared fixtures
// ---------------------------------------------------------------------------

/// Three-input concept family with one two-qubit encoding (m = 5): input
/// bits toggle seeded single-qubit unitaries on both sides of the encoding,
/// giving a full-rank effective feature map and a wide concept range.
ConceptFamily small_family() {
  RngStream rng = make_stream(9, 0xfa111);
  CircuitTemplate t;
  t.n = 2;
  t.d = 1;
  t.input_bits = 3;
  t.gates.push_back(TemplateGate{make_named_gate("H", {0}), -1});
  t.gates.push_back(TemplateGate{FixedGate{fouriq::test::random_unitary(rng, 2), {0}, ""}, 0});
  t.gates.push_back(TemplateGate{FixedGate{fouriq::test::random_unitary(rng, 2), {1}, ""}, 1});
  t.gates.push_back(TemplateGate{make_named_gate("CNOT", {0, 1}), -1});
  t.gates.push_back(TemplateGate{EncodeGate{PauliString::from_string("ZZ"), 0}, -1});
  t.gates.push_back(TemplateGate{FixedGate{fouriq::test::random_unitary(rng, 2), {0}, ""}, 2});
  t.gates.push_back(TemplateGate{FixedGate{fouriq::test::random_unitary(rng, 2), {1}, ""}, -1});
  t.gates.push_back(TemplateGate{make_named_gate("CNOT", {1, 0}), -1});
  t.gates.push_back(TemplateGate{FixedGate{fouriq::test::random_unitary(rng, 2), {0}, ""}, -1});
  ConceptFamily fam;
  fam.source = std::move(t);
  fam.obs = PauliObs{PauliString::from_string("XI")};
  return fam;
}

ParamHamiltonian triangle_ising() { return build_ising({true, true, true}, 3, 1.0); }

std::vector<bool> all_bits(int value, int bits) {
  std::vector<bool> x(bits);
  for (int b = 0; b < bits; ++b) x[b] = (value >> (bits - 1 - b)) & 1;
  return x;
}

Observable random_observable(RngStream& rng, int n, int kind) {
  if (kind == 0) return PauliObs{fouriq::test::random_pauli(rng, n)};
  if (kind == 1) {
    CombinationObs comb;
    const int terms = 2 + static_cast<int>(rng.next_u64() % 3);  // 2..4 terms
    for (int h = 0; h < terms; ++h)
      comb.terms.emplace_back(2.0 * rng.next_double() - 1.0, fouriq::test::random_pauli(rng, n));
    if (comb.beta_l1() == 0) comb.terms.front().first = 1.0;
    return comb;
  }
  return ZeroProjectorObs{};
}

ParamHamiltonian random_dynamics_instance(RngStream& rng) {
  ParamHamiltonian h;
  h.n = 2 + static_cast<int>(rng.next_u64() % 3);  // 2..4 qubits
  h.tau = 1.0;
  const int fixed = 1 + static_cast<int>(rng.next_u64() % 3);
  for (int i = 0; i < fixed; ++i) {
    if (rng.next_double() < 0.5)
      h.fixed_terms.push_back(FixedTerm{InputBit{i}, fouriq::test::random_pauli(rng, h.n)});
    else
      h.fixed_terms.push_back(
          FixedTerm{Constant{2.0 * rng.next_double() - 1.0}, fouriq::test::random_pauli(rng, h.n)});
  }
  const int alphas = 1 + static_cast<int>(rng.next_u64() % 2);
  for (int i = 0; i < alphas; ++i)
    h.alpha_terms.push_back(AlphaTerm{0, fouriq::test::random_pauli(rng, h.n)});
  return h;
}

// Circuits shared between checks 1-3.
std::vector<ParametrizedCircuit> g_state_circuits;
std::vector<ParametrizedCircuit> g_table_circuits;
std::vector<Observable> g_table_observables;

// ---------------------------------------------------------------------------
// 1. Frequency-register compilation reconstructs the simulated state.
// ---------------------------------------------------------------------------

bool check_state_compilation(std::string& detail) {
  RngStream rng = make_stream(0xACC, 1);
  double worst = 0;
  for (int trial = 0; trial < 25; ++trial) {
    const ParametrizedCircuit c = fouriq::test::random_circuit(rng);
    g_state_circuits.push_back(c);
    const CompiledFourierCircuit cc = compile_state(c);
    const StateVector compiled = run_compiled(cc);
    for (int rep = 0; rep < 5; ++rep) {
      const std::vector<double> alpha = fouriq::test::random_alpha(rng, c.d);
      const StateVector direct = run(c, alpha);
      for (long k = 0; k < direct.dim(); ++k) {
        cplx acc{0, 0};
        for (long li = 0; li < cc.lattice.size(); ++li) {
          const std::vector<long> l = cc.lattice.point(li);
          double phase = 0;
          for (int s = 0; s < cc.lattice.d; ++s)
            phase += cc.base * alpha[s] * static_cast<double>(l[s]);
          acc += compiled.amps[cc.layout.index_of(l, k)] * std::polar(1.0, phase);
        }
        worst = std::max(worst, std::abs(acc - direct.amps[k]));
      }
    }
  }
  std::ostringstream ss;
  ss << "25 circuits x 5 points, worst amplitude deviation " << worst;
  detail = ss.str();
  return worst < 1e-9;
}

// ---------------------------------------------------------------------------
// 2. Exact tables match the classical grid-DFT oracle entrywise.
// ---------------------------------------------------------------------------

bool check_tables_vs_oracle(std::string& detail) {
  RngStream rng = make_stream(0xACC, 2);
  double worst = 0;
  for (int trial = 0; trial < 15; ++trial) {
    const ParametrizedCircuit c = fouriq::test::random_circuit(rng);
    for (int kind = 0; kind < 3; ++kind) {
      const Observable obs = random_observable(rng, c.n, kind);
      const FourierTable table = extract_table(c, obs, ExtractMode::Exact());
      const FourierTable oracle = grid_dft_oracle(c, obs);
      for (long i = 0; i < table.lattice.size(); ++i)
        worst = std::max(worst, std::abs(table.coeffs[i] - oracle.coeffs[i]));
      g_table_circuits.push_back(c);
      g_table_observables.push_back(obs);
    }
  }
  std::ostringstream ss;
  ss << "15 circuits x {pauli, combination, projector}, worst entry deviation " << worst;
  detail = ss.str();
  return worst < 1e-9;
}

// ---------------------------------------------------------------------------
// 3. Conjugate symmetry, Parseval, and the post-selection identity.
// ---------------------------------------------------------------------------

bool check_spectral_identities(std::string& detail) {
  RngStream rng = make_stream(0xACC, 3);
  double worst_sym = 0, worst_parseval = 0, worst_success = 0;
  std::vector<std::pair<ParametrizedCircuit, Observable>> cases;
  for (const auto& c : g_state_circuits)
    cases.emplace_back(c, PauliObs{fouriq::test::random_pauli(rng, c.n)});
  for (size_t i = 0; i < g_table_circuits.size(); ++i)
    cases.emplace_back(g_table_circuits[i], g_table_observables[i]);
  for (const auto& [c, obs] : cases) {
    const FourierTable t = extract_table(c, obs, ExtractMode::Exact());
    for (long i = 0; i < t.lattice.size(); ++i) {
      std::vector<long> l = t.lattice.point(i);
      for (long& v : l) v = -v;
      worst_sym = std::max(worst_sym, std::abs(t.coeffs[i] - std::conj(t.at(l))));
    }
    const double mean_sq = grid_mean_square(c, obs);
    worst_parseval = std::max(worst_parseval, std::abs(t.norm_sq() - mean_sq));
    const CompiledFourierCircuit cc = compile_expectation(c, obs);
    worst_success = std::max(worst_success, std::abs(success_probability(cc) - t.norm_sq()));
  }
  std::ostringstream ss;
  ss << cases.size() << " tables: symmetry " << worst_sym << ", parseval " << worst_parseval
     << ", postselection " << worst_success;
  detail = ss.str();
  return worst_sym < 1e-9 && worst_parseval < 1e-9 && worst_success < 1e-9;
}

// ---------------------------------------------------------------------------
// 4. Planned shot budgets deliver the promised coefficient accuracy.
// ---------------------------------------------------------------------------

bool check_shot_statistics(std::string& detail) {
  ParametrizedCircuit c;
  c.n = 1;
  c.d = 1;
  c.gates.push_back(make_named_gate("H", {0}));
  c.gates.push_back(EncodeGate{PauliString::single(1, 0, Pauli::Z), 0});
  const Observable obs = PauliObs{PauliString::from_string("X")};
  const CompiledFourierCircuit cc = compile_expectation(c, obs);
  const cplx truth = grid_dft_oracle(c, obs).at({+2});

  const double eps_b = 0.05, delta = 0.05;
  const CoefficientShotPlan plan = plan_coefficient_shots(eps_b, delta);
  int failures = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const cplx est =
        extract_coefficient(cc, {+2}, ExtractMode::Shots(plan.shots_per_part, 1000 + t));
    if (std::abs(est - truth) > eps_b) ++failures;
  }
  const double rate = static_cast<double>(failures) / trials;
  std::ostringstream ss;
  ss << "S=" << plan.shots_per_part << " per part, failure rate " << rate << " over " << trials
     << " trials (allowed 0.10)";
  detail = ss.str();
  return rate <= 2 * delta;
}

// ---------------------------------------------------------------------------
// 5. Trotter error bound soundness and first-order scaling.
// ---------------------------------------------------------------------------

bool check_trotter_bound(std::string& detail) {
  RngStream rng = make_stream(0xACC, 5);
  double worst_margin = -1e300;
  for (int trial = 0; trial < 50; ++trial) {
    const ParamHamiltonian h = random_dynamics_instance(rng);
    std::vector<bool> x(std::max(1, h.input_bits()));
    for (size_t i = 0; i < x.size(); ++i) x[i] = rng.next_double() < 0.5;
    const std::vector<double> alpha{rng.next_double()};
    const Observable obs = PauliObs{fouriq::test::random_pauli(rng, h.n)};
    const double exact = eval_dynamics(h, obs, x, alpha, EvalMode::Exact());
    const double a = commutator_bound(h);
    for (long r : {1L, 2L, 4L, 8L}) {
      const double approx = eval_dynamics(h, obs, x, alpha, EvalMode::Trotter(r));
      const double err = std::abs(exact - approx);
      const double bound = h.tau * h.tau * a / (2.0 * static_cast<double>(r)) + 1e-8;
      worst_margin = std::max(worst_margin, err - bound);
      if (err > bound) {
        detail = "bound violated at trial " + std::to_string(trial) + ", r=" + std::to_string(r);
        return false;
      }
    }
  }

  // Log-log slope on the triangle Ising instance. The observable is Y on
  // qubit 0: real observables on this real Hamiltonian converge second-order
  // in the expectation (the leading product-formula perturbation is
  // imaginary), so they cannot exhibit the first-order rate being fitted.
  const ParamHamiltonian h = triangle_ising();
  const std::vector<bool> x{true, true, true};
  const std::vector<double> alpha{0.7};
  const Observable obs = PauliObs{PauliString::from_string("YII")};
  const double exact = eval_dynamics(h, obs, x, alpha, EvalMode::Exact());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int pts = 0;
  for (long r : {1L, 2L, 4L, 8L, 16L}) {
    const double err = std::abs(exact - eval_dynamics(h, obs, x, alpha, EvalMode::Trotter(r)));
    if (err < 1e-12) continue;
    const double lx = std::log(static_cast<double>(r)), ly = std::log(err);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++pts;
  }
  const double slope = (pts * sxy - sx * sy) / (pts * sxx - sx * sx);
  std::ostringstream ss;
  ss << "50 instances x r in {1,2,4,8} sound (worst margin " << worst_margin
     << "); ising slope " << slope;
  detail = ss.str();
  return slope > -1.4 && slope < -0.6;
}

// ---------------------------------------------------------------------------
// 6. Regression pipeline at desk scale, exact and shot features.
// ---------------------------------------------------------------------------

struct PipelineResult {
  double mse = 0;
  bool converged = false;
};

PipelineResult run_pipeline(const ConceptFamily& fam, uint64_t seed, long t_samples, bool exact,
                            long shots_per_part, double eps3) {
  const FrequencyLattice lat = fam.feature_lattice();
  const long m = lat.size();
  std::vector<double> alpha_star(fam.param_count());
  RngStream astream = make_stream(seed, 0xa1fa);
  for (double& a : alpha_star) a = astream.next_double();
  auto concept_fn = [&](const std::vector<bool>& x) { return fam.concept_value(x, alpha_star); };
  const InputDistribution dist = InputDistribution::uniform(fam.input_bits());
  const Dataset ds = generate_dataset(concept_fn, dist, t_samples, seed);

  std::map<std::vector<bool>, FourierTable> cache;
  auto features = [&](const std::vector<bool>& x, uint64_t tag, long row) {
    FourierTable t;
    if (exact) {
      auto it = cache.find(x);
      if (it == cache.end()) it = cache.emplace(x, fam.features(x, ExtractMode::Exact())).first;
      t = it->second;
    } else {
      const uint64_t rs = mix64(seed ^ mix64(tag + 0x9e37ULL * static_cast<uint64_t>(row)));
      t = fam.features(x, ExtractMode::Shots(shots_per_part, rs));
    }
    return Eigen::Map<const Eigen::VectorXcd>(t.coeffs.data(), static_cast<Eigen::Index>(m)).eval();
  };

  Eigen::MatrixXcd b(t_samples, m);
  for (long t = 0; t < t_samples; ++t) b.row(t) = features(ds.inputs[t], 1, t).transpose();
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ds.labels.data(), t_samples);
  PipelineResult out;
  LassoFit fit;
  try {
    fit = lasso_fit(b, y, static_cast<double>(m), eps3);
  } catch (const std::runtime_error&) {
    return out;
  }
  out.converged = true;

  long row = 1 << 20;
  auto hypothesis = [&](const std::vector<bool>& x) {
    return predict(fit.weights, features(x, 2, row++)).value;
  };
  out.mse = exhaustive_risk(hypothesis, concept_fn, fam.input_bits());
  return out;
}

bool check_learning_pipeline(std::string& detail) {
  const ConceptFamily fam = small_family();
  const long m = fam.feature_lattice().size();
  if (m != 5) {
    detail = "unexpected lattice size " + std::to_string(m);
    return false;
  }

  double worst_exact = 0;
  for (uint64_t seed = 40; seed < 45; ++seed) {
    const PipelineResult r = run_pipeline(fam, seed, 200, true, 0, 1e-6);
    if (!r.converged) {
      detail = "exact-feature fit did not converge";
      return false;
    }
    worst_exact = std::max(worst_exact, r.mse);
  }
  if (worst_exact > 1e-4) {
    detail = "exact-feature held-out MSE " + std::to_string(worst_exact) + " above 1e-4";
    return false;
  }

  const double eps_b = 0.01, eps3 = 1e-3;
  const long shots = plan_coefficient_shots(eps_b, 0.05).shots_per_part;
  const double bound = std::pow(static_cast<double>(m) * eps_b, 2) + eps3;
  int ok = 0;
  for (uint64_t seed = 100; seed < 120; ++seed) {
    const PipelineResult r = run_pipeline(fam, seed, 200, false, shots, eps3);
    if (r.converged && r.mse <= bound) ++ok;
  }
  std::ostringstream ss;
  ss << "exact worst MSE " << worst_exact << "; shot runs within " << bound << ": " << ok
     << "/20 (need 18)";
  detail = ss.str();
  return ok >= 18;
}

// ---------------------------------------------------------------------------
// 7. Empirical-risk stability under injected bounded noise.
// ---------------------------------------------------------------------------

bool check_risk_stability(std::string& detail) {
  const ConceptFamily fam = small_family();
  const FrequencyLattice lat = fam.feature_lattice();
  const long m = lat.size();
  const double lambda1 = static_cast<double>(m);
  const double eps3 = 1e-3;
  const long t_samples = 150;

  // Exact features per input, cached once.
  std::map<std::vector<bool>, Eigen::VectorXcd> feats;
  for (int v = 0; v < 8; ++v) {
    const std::vector<bool> x = all_bits(v, 3);
    const FourierTable t = fam.features(x, ExtractMode::Exact());
    feats[x] = Eigen::Map<const Eigen::VectorXcd>(t.coeffs.data(), m);
  }

  std::ostringstream ss;
  for (const double eps_b : {0.01, 0.05}) {
    for (const double eps_y : {0.0, 0.05}) {
      const double bound = std::pow(lambda1 * eps_b + eps_y, 2) + eps3;
      for (uint64_t seed = 0; seed < 10; ++seed) {
        std::vector<double> alpha_star{make_stream(seed, 0xa1fa).next_double()};
        auto concept_fn = [&](const std::vector<bool>& x) {
          return fam.concept_value(x, alpha_star);
        };
        const Dataset ds = generate_dataset(concept_fn, InputDistribution::uniform(3), t_samples,
                                            seed + 7000);
        Eigen::MatrixXcd b(t_samples, m);
        Eigen::VectorXd y(t_samples);
        for (long t = 0; t < t_samples; ++t) {
          RngStream noise = make_stream(seed + 7000, 0x4015e, static_cast<uint64_t>(t));
          Eigen::VectorXcd f = feats[ds.inputs[t]];
          for (long c = 0; c < m; ++c)
            f[c] += std::polar(eps_b, 2.0 * kPi * noise.next_double());
          b.row(t) = f.transpose();
          y[t] = ds.labels[t] + eps_y * (noise.next_double() < 0.5 ? -1.0 : 1.0);
        }
        LassoFit fit;
        try {
          fit = lasso_fit(b, y, lambda1, 1e-6);
        } catch (const std::runtime_error&) {
          detail = "fit did not converge";
          return false;
        }
        long row = 0;
        auto hypothesis = [&](const std::vector<bool>& x) {
          RngStream noise = make_stream(seed + 9000, 0x1b1a5, static_cast<uint64_t>(row++));
          Eigen::VectorXcd f = feats[x];
          for (long c = 0; c < m; ++c)
            f[c] += std::polar(eps_b, 2.0 * kPi * noise.next_double());
          return predict(fit.weights, f).value;
        };
        const double mse = exhaustive_risk(hypothesis, concept_fn, 3);
        if (mse > bound) {
          ss << "violated at eps_b=" << eps_b << " eps_y=" << eps_y << " seed=" << seed << ": "
             << mse << " > " << bound;
          detail = ss.str();
          return false;
        }
      }
    }
  }
  detail = "4 noise settings x 10 seeds all under (lambda1 eps_b + eps_y)^2 + eps3";
  return true;
}

// ---------------------------------------------------------------------------
// 8. Kernel ridge pipeline: interpolation, PSD clip, and the total bound.
// ---------------------------------------------------------------------------

bool check_kernel_pipeline(std::string& detail) {
  const ConceptFamily fam = small_family();
  const long t_train = 8;
  std::vector<std::vector<bool>> inputs;
  for (int v = 0; v < t_train; ++v) inputs.push_back(all_bits(v, 3));
  const std::vector<double> alpha_star{0.37};
  Eigen::VectorXd y(t_train);
  for (long i = 0; i < t_train; ++i) y[i] = fam.concept_value(inputs[i], alpha_star);

  // Exact Gram interpolates at a vanishing ridge.
  const Eigen::MatrixXd k_exact = gram_matrix(fam, inputs, GramMode::Exact());
  const KrrModel exact_model = krr_fit(clip_psd(k_exact), y, 1e-8);
  const double residual = (clip_psd(k_exact) * exact_model.dual - y).cwiseAbs().maxCoeff();
  if (residual > 1e-6) {
    detail = "exact-Gram interpolation residual " + std::to_string(residual);
    return false;
  }

  // Shot Gram: clip to PSD, fit, and compare against the four-term bound.
  const double eps_k = 0.05, delta = 0.05, lambda = 0.5;
  const long shots = shots_for(eps_k / 2.0, delta).shots_per_estimate;
  const Eigen::MatrixXd k_shot = gram_matrix(fam, inputs, GramMode::Shots(shots, 2026));
  const Eigen::MatrixXd k_clip = clip_psd(k_shot);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k_clip);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -1e-10) {
    detail = "clipped Gram still indefinite: " + std::to_string(min_eig);
    return false;
  }
  const KrrModel model = krr_fit(k_clip, y, lambda);

  double test_mse = 0;
  long pair_id = 0;
  for (int v = 0; v < 8; ++v) {
    const std::vector<bool> x = all_bits(v, 3);
    Eigen::VectorXd overlaps(t_train);
    for (long j = 0; j < t_train; ++j)
      overlaps[j] = gram_entry(fam, x, inputs[j],
                               GramMode::Shots(shots, mix64(0xfeedULL + pair_id++)));
    const double err = krr_predict(model, overlaps) - fam.concept_value(x, alpha_star);
    test_mse += err * err;
  }
  test_mse /= 8.0;
  const double b_norm = std::sqrt(static_cast<double>(fam.feature_lattice().size()));
  const double e_bound =
      krr_error_bound(b_norm, static_cast<double>(t_train), 1.0, eps_k, 0.0, lambda);
  std::ostringstream ss;
  ss << "interpolation residual " << residual << "; min eig after clip " << min_eig
     << "; test MSE " << test_mse << " vs bound^2 " << e_bound * e_bound;
  detail = ss.str();
  return test_mse <= e_bound * e_bound;
}

// ---------------------------------------------------------------------------
// 9. Feature maps of refined Trotterizations stay epsilon-close.
// ---------------------------------------------------------------------------

bool check_feature_map_stability(std::string& detail) {
  const ParamHamiltonian h = triangle_ising();
  const std::vector<bool> x{true, true, true};
  const Observable obs = PauliObs{PauliString::from_string("ZII")};
  const double a = commutator_bound(h);
  std::ostringstream ss;
  for (const double eps : {0.2, 0.1}) {
    const long r = static_cast<long>(std::ceil(h.tau * h.tau * a / eps));
    const ParametrizedCircuit c1 = trotterize(h, x, r);
    const ParametrizedCircuit c2 = trotterize(h, x, 2 * r);
    const FourierTable t1 = refine_base(grid_dft_oracle(c1, obs), 2);
    const FourierTable t2 = grid_dft_oracle(c2, obs);
    const double dist = table_l2_distance(t1, t2);
    ss << "eps=" << eps << " (r=" << r << "): ||b_r - b_2r||_2 = " << dist << "; ";
    if (dist > eps + 1e-6) {
      detail = ss.str() + "exceeds " + std::to_string(eps + 1e-6);
      return false;
    }
  }
  detail = ss.str();
  return true;
}

// ---------------------------------------------------------------------------
// 10. Planner arithmetic against independent expressions.
// ---------------------------------------------------------------------------

bool check_planners(std::string& detail) {
  const LassoPlan plan = plan_lasso(5, 0.5, 0.1);
  const long double md = 5.0L;
  const long double t_ref =
      16.0L * md * md * md * md * sqrtl(2.0L * logl(2.0L * md / 0.1L)) / (0.5L * 0.5L);
  const long t_expected = static_cast<long>(ceill(t_ref));
  if (plan.t_samples != t_expected) {
    detail = "lasso T " + std::to_string(plan.t_samples) + " != " + std::to_string(t_expected);
    return false;
  }
  if (std::abs(plan.epsilon_b - 0.2 * 0.5 / 5.0) > 1e-15 || plan.lambda1 != 5.0) {
    detail = "lasso accuracy or budget mismatch";
    return false;
  }

  RngStream rng = make_stream(0xACC, 10);
  for (int t = 0; t < 10; ++t) {
    const int d = 1 + static_cast<int>(rng.next_u64() % 3);
    const double l = 1 + static_cast<double>(rng.next_u64() % 4);
    const double b1 = 0.5 + 4.0 * rng.next_double();
    const double eps = 0.05 + rng.next_double();
    const CoveringGrid g = covering_grid(d, l, b1, eps);
    const long m_expected = std::max(1L, static_cast<long>(std::ceil(d * l * b1 / eps)));
    long double g_expected = 1;
    for (int i = 0; i < d; ++i) g_expected *= m_expected;
    if (g.divisions != m_expected || g.points != static_cast<double>(g_expected)) {
      detail = "covering grid mismatch at trial " + std::to_string(t);
      return false;
    }
  }
  detail = "lasso plan T=" + std::to_string(plan.t_samples) + "; 10 covering grids match";
  return true;
}

}  // namespace

int main() {
  std::vector<Check> checks = {
      {1, "state compilation reconstructs simulated amplitudes", check_state_compilation},
      {2, "exact tables equal the grid-DFT oracle", check_tables_vs_oracle},
      {3, "conjugate symmetry, Parseval, post-selection identity", check_spectral_identities},
      {4, "planned shot budgets meet the accuracy target", check_shot_statistics},
      {5, "Trotter error bound soundness and first-order slope", check_trotter_bound},
      {6, "regression pipeline: exact and shot features", check_learning_pipeline},
      {7, "risk stability under bounded feature/label noise", check_risk_stability},
      {8, "kernel ridge pipeline: interpolation, clip, total bound", check_kernel_pipeline},
      {9, "feature-map stability across Trotter refinements", check_feature_map_stability},
      {10, "planner arithmetic matches independent evaluation", check_planners},
  };
  int failures = 0;
  for (auto& check : checks) {
    const auto start = std::chrono::steady_clock::now();
    std::string detail;
    bool ok = false;
    try {
      ok = check.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %2d: %s (%.1fs) %s\n", ok ? "PASS" : "FAIL", check.id,
                check.name.c_str(), secs, detail.c_str());
    std::fflush(stdout);
    if (!ok) ++failures;
  }
  if (failures) std::printf("%d criterion(s) failed\n", failures);
  else std::printf("all %zu criteria passed\n", checks.size());
  return failures == 0 ? 0 : 1;
}
