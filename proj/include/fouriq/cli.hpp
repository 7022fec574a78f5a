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

#ifndef FOURIQ_CLI_HPP
#define FOURIQ_CLI_HPP

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>

#include "fouriq/family.hpp"
#include "fouriq/io.hpp"
#include "fouriq/learning.hpp"
#include "fouriq/serialize.hpp"

namespace fouriq {

/// A quantitative guarantee checked by a command failed (exit code 4).
class BoundViolation : public std::runtime_error {
 public:
  explicit BoundViolation(const std::string& what) : std::runtime_error(what) {}
};

enum ExitCode {
  kExitOk = 0,
  kExitInternal = 1,
  kExitConfig = 2,
  kExitBudget = 3,
  kExitBound = 4,
};

struct RunContext {
  json config;
  std::string config_hash;
  uint64_t seed = 0;
  bool seed_given = false;
  std::string out_dir = "out";
  std::filesystem::path base_dir;
  Budget budget;
  bool oracle = false;

  std::string stamp() const { return "config=" + config_hash + " seed=" + std::to_string(seed); }

  void attach(json& doc) const {
    doc["config_hash"] = config_hash;
    doc["seed"] = seed;
  }

  std::string resolve(const std::string& rel) const {
    const std::filesystem::path p(rel);
    if (p.is_absolute()) return rel;
    return (base_dir / p).string();
  }

  std::string out_path(const std::string& name) const {
    return (std::filesystem::path(out_dir) / name).string();
  }

  void require_seed(const std::string& why) const {
    if (!seed_given)
      throw ParseError("config: a seed is required for " + why + " (set \"seed\" or pass --seed)");
  }
};

inline RunContext load_context(const std::string& config_path, std::optional<uint64_t> seed_override,
                               const std::string& out_override, bool oracle) {
  if (!std::filesystem::exists(config_path))
    throw ParseError("config file not found: " + config_path);
  RunContext ctx;
  const std::string text = read_text_file(config_path);
  ctx.config_hash = hex64(fnv1a64(text));
  try {
    ctx.config = json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  ctx.base_dir = std::filesystem::path(config_path).parent_path();
  if (seed_override) {
    ctx.seed = *seed_override;
    ctx.seed_given = true;
  } else if (ctx.config.contains("seed")) {
    ctx.seed = ctx.config["seed"].get<uint64_t>();
    ctx.seed_given = true;
  }
  if (!out_override.empty()) ctx.out_dir = out_override;
  else if (ctx.config.contains("out_dir")) ctx.out_dir = ctx.resolve(ctx.config["out_dir"].get<std::string>());
  if (ctx.config.contains("budget")) {
    const json& b = ctx.config["budget"];
    ctx.budget.max_total_qubits = b.value("max_qubits", ctx.budget.max_total_qubits);
    ctx.budget.max_lattice_size = b.value("max_lattice", ctx.budget.max_lattice_size);
    ctx.budget.max_samples = b.value("max_samples", ctx.budget.max_samples);
  }
  ctx.oracle = oracle;
  return ctx;
}

namespace detail {

struct ModeSpec {
  bool exact = true;
  long shots_per_part = 0;
  double epsilon_b = 0;  // 0 when shots were given directly
  double delta = 0;
};

inline ModeSpec parse_mode(const RunContext& ctx, const json& cfg) {
  ModeSpec spec;
  if (!cfg.contains("mode")) return spec;
  const json& m = cfg["mode"];
  const std::string kind = m.value("kind", "exact");
  if (kind == "exact") return spec;
  if (kind != "shots") throw ParseError("config: mode.kind must be \"exact\" or \"shots\"");
  spec.exact = false;
  ctx.require_seed("shot-based extraction");
  if (m.contains("shots")) {
    spec.shots_per_part = m["shots"].get<long>();
    if (spec.shots_per_part < 1) throw ParseError("config: mode.shots must be >= 1");
  } else if (m.contains("epsilon_b")) {
    spec.epsilon_b = m["epsilon_b"].get<double>();
    spec.delta = m.value("delta", 0.05);
    spec.shots_per_part = plan_coefficient_shots(spec.epsilon_b, spec.delta).shots_per_part;
  } else {
    throw ParseError("config: shot mode needs \"shots\" or \"epsilon_b\"");
  }
  return spec;
}

inline std::string bits_to_string(const std::vector<bool>& x) {
  std::string s;
  for (bool b : x) s.push_back(b ? '1' : '0');
  return s;
}

inline std::vector<bool> bits_from_string(const std::string& s) {
  std::vector<bool> x;
  for (char c : s) {
    if (c != '0' && c != '1') throw ParseError("bitstring must contain only 0 and 1");
    x.push_back(c == '1');
  }
  return x;
}

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

inline ConceptFamily load_family(const RunContext& ctx) {
  if (!ctx.config.contains("family")) throw ParseError("config: missing \"family\"");
  const json& f = ctx.config["family"];
  if (f.is_string()) {
    const std::string path = ctx.resolve(f.get<std::string>());
    if (!std::filesystem::exists(path)) throw ParseError("family document not found: " + path);
    return parse_family(read_text_file(path));
  }
  return family_from_json(f);
}

inline std::vector<double> hidden_alpha(const RunContext& ctx, int d) {
  std::vector<double> alpha(d);
  if (ctx.config.contains("alpha_star")) {
    const auto given = ctx.config["alpha_star"].get<std::vector<double>>();
    if (static_cast<int>(given.size()) != d)
      throw ParseError("config: alpha_star length must equal the family parameter count");
    return given;
  }
  RngStream s = make_stream(ctx.seed, 0xa1faULL);
  for (double& a : alpha) a = s.next_double();
  return alpha;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// extract: compile a circuit, extract its coefficient table, emit artifacts
// ---------------------------------------------------------------------------

inline int cmd_extract(const RunContext& ctx) {
  if (!ctx.config.contains("circuit")) throw ParseError("config: missing \"circuit\"");
  const std::string path = ctx.resolve(ctx.config["circuit"].get<std::string>());
  if (!std::filesystem::exists(path)) throw ParseError("circuit document not found: " + path);
  const ParametrizedCircuit circuit = parse_circuit(read_text_file(path));
  if (!ctx.config.contains("observable")) throw ParseError("config: missing \"observable\"");
  const Observable obs = observable_from_json(ctx.config["observable"]);
  const detail::ModeSpec mode = detail::parse_mode(ctx, ctx.config);

  const CompiledFourierCircuit cc = compile_expectation(circuit, obs, ctx.budget);
  const ExtractMode em = mode.exact ? ExtractMode::Exact()
                                    : ExtractMode::Shots(mode.shots_per_part, ctx.seed);
  const FourierTable table = extract_table(circuit, obs, em, ctx.budget);
  const double success = success_probability(cc);
  const CompiledStats stats = compiled_stats(cc);

  write_text_file(ctx.out_path("table.csv"), table_to_csv(table, ctx.stamp()));
  json jt = table_to_json(table);
  ctx.attach(jt);
  write_text_file(ctx.out_path("table.json"), jt.dump(2) + "\n");

  std::vector<double> mags;
  std::vector<std::string> labels;
  for (long i = 0; i < table.lattice.size(); ++i) {
    mags.push_back(std::abs(table.coeffs[i]));
    std::string lab;
    for (long v : table.lattice.point(i)) lab += (lab.empty() ? "" : ",") + std::to_string(v);
    labels.push_back(lab);
  }
  write_text_file(ctx.out_path("stem.svg"),
                  svg_stem_plot(mags, labels, "coefficient magnitudes", ctx.stamp()));

  json summary;
  summary["success_probability"] = success;
  summary["coefficient_norm_sq"] = table.norm_sq();
  summary["lattice_size"] = table.lattice.size();
  summary["total_qubits"] = stats.total_qubits;
  summary["frequency_qubits"] = stats.frequency_qubits;
  summary["gate_count"] = stats.gate_count;
  summary["mode"] = mode.exact ? "exact" : "shots";
  if (!mode.exact) summary["shots_per_part"] = mode.shots_per_part;

  if (ctx.oracle) {
    const FourierTable oracle = grid_dft_oracle(circuit, obs, {}, ctx.budget);
    write_text_file(ctx.out_path("oracle.csv"), table_to_csv(oracle, ctx.stamp()));
    double maxdiff = 0;
    for (long i = 0; i < table.lattice.size(); ++i)
      maxdiff = std::max(maxdiff, std::abs(table.coeffs[i] - oracle.coeffs[i]));
    summary["oracle_max_entry_diff"] = maxdiff;
  }
  ctx.attach(summary);
  write_text_file(ctx.out_path("summary.json"), summary.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// learn: plan, sample, extract features, fit, and report held-out risk
// ---------------------------------------------------------------------------

inline int cmd_learn(const RunContext& ctx) {
  const ConceptFamily family = detail::load_family(ctx);
  const json lcfg = ctx.config.value("learn", json::object());
  const double epsilon = lcfg.value("epsilon", 0.5);
  const double delta = lcfg.value("delta", 0.1);
  const double eps3 = lcfg.value("epsilon3", 1e-6);
  const long test_points = lcfg.value("test_points", 200L);
  const double label_noise = lcfg.value("label_noise", 0.0);
  ctx.require_seed("dataset generation");

  const FrequencyLattice lat = family.feature_lattice();
  const double base = family.feature_base();
  const long m = lat.size();
  const LassoPlan plan = plan_lasso(m, epsilon, delta);

  json jplan;
  jplan["m"] = plan.m;
  jplan["T_paper"] = plan.t_samples;
  jplan["T_paper_real"] = plan.t_samples_real;
  jplan["epsilon_b"] = plan.epsilon_b;
  jplan["lambda1"] = plan.lambda1;
  jplan["epsilon"] = plan.epsilon;
  jplan["delta"] = plan.delta;
  jplan["circuit_executions"] = plan.circuit_executions;

  long t_used = 0;
  bool certified = false;
  if (lcfg.contains("t_override")) {
    t_used = lcfg["t_override"].get<long>();
    jplan["T_override"] = t_used;
    jplan["guarantee"] = "bound not certified (sample-count override in effect)";
  } else if (plan.t_samples <= ctx.budget.max_samples) {
    t_used = plan.t_samples;
    certified = true;
    jplan["guarantee"] = "plan-faithful";
  } else {
    ctx.attach(jplan);
    write_text_file(ctx.out_path("plan.json"), jplan.dump(2) + "\n");
    throw BudgetError("plan-faithful sample count T=" + std::to_string(plan.t_samples) +
                      " exceeds budget max_samples=" + std::to_string(ctx.budget.max_samples) +
                      "; set learn.t_override to run at reduced scale");
  }
  ctx.attach(jplan);
  write_text_file(ctx.out_path("plan.json"), jplan.dump(2) + "\n");

  const std::vector<double> alpha_star = detail::hidden_alpha(ctx, family.param_count());
  auto concept_fn = [&](const std::vector<bool>& x) { return family.concept_value(x, alpha_star); };
  const InputDistribution dist = InputDistribution::uniform(family.input_bits());
  const Dataset ds = generate_dataset(concept_fn, dist, t_used, ctx.seed, label_noise);

  detail::ModeSpec mode = detail::parse_mode(ctx, ctx.config);
  double eps_b_used = mode.exact ? 0.0 : mode.epsilon_b;
  if (!mode.exact && mode.epsilon_b == 0) eps_b_used = plan.epsilon_b;

  std::map<std::vector<bool>, FourierTable> exact_cache;
  auto features_of = [&](const std::vector<bool>& x, uint64_t tag, long row) -> Eigen::VectorXcd {
    FourierTable t;
    if (mode.exact) {
      auto it = exact_cache.find(x);
      if (it == exact_cache.end())
        it = exact_cache.emplace(x, family.features(x, ExtractMode::Exact(), ctx.budget)).first;
      t = it->second;
    } else {
      const uint64_t row_seed = mix64(ctx.seed ^ mix64(tag + 0x9e37ULL * static_cast<uint64_t>(row)));
      t = family.features(x, ExtractMode::Shots(mode.shots_per_part, row_seed), ctx.budget);
    }
    return Eigen::Map<const Eigen::VectorXcd>(t.coeffs.data(), static_cast<Eigen::Index>(t.coeffs.size()));
  };

  Eigen::MatrixXcd b(t_used, m);
  for (long t = 0; t < t_used; ++t) b.row(t) = features_of(ds.inputs[t], 0xfea70ULL, t).transpose();
  Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ds.labels.data(), t_used);

  const LassoFit fit = lasso_fit(b, y, plan.lambda1, eps3);

  long inference_row = 0;
  auto hypothesis = [&](const std::vector<bool>& x) {
    return predict(fit.weights, features_of(x, 0x1f3a0ULL, inference_row++)).value;
  };
  const RiskEstimate heldout = risk(hypothesis, concept_fn, dist, test_points,
                                    mix64(ctx.seed ^ 0x7e57ULL));

  // Learning curve on nested prefixes of the training set.
  std::string curve_csv = "# " + ctx.stamp() + "\nT,train_mse,heldout_mse\n";
  std::vector<PlotSeries> curve_series(1);
  curve_series[0].label = "held-out MSE";
  long last_tp = 0;
  for (long frac = 8; frac >= 1; frac /= 2) {
    const long tp = std::max(m, t_used / frac);
    if (tp > t_used || tp == last_tp) continue;
    last_tp = tp;
    try {
      const LassoFit pf = lasso_fit(b.topRows(tp), y.head(tp), plan.lambda1, eps3);
      long row = 1 << 20;
      auto h = [&](const std::vector<bool>& x) {
        return predict(pf.weights, features_of(x, 0x1f3a0ULL, row++)).value;
      };
      const RiskEstimate r = risk(h, concept_fn, dist, test_points, mix64(ctx.seed ^ 0xc37eULL));
      curve_csv += std::to_string(tp) + "," + detail::fmt(pf.empirical_risk) + "," +
                   detail::fmt(r.mse) + "\n";
      curve_series[0].points.emplace_back(static_cast<double>(tp), r.mse);
    } catch (const std::runtime_error&) {
      curve_csv += std::to_string(tp) + ",unconverged,unconverged\n";
    }
  }
  write_text_file(ctx.out_path("curve.csv"), curve_csv);
  write_text_file(ctx.out_path("curve.svg"),
                  svg_plot(curve_series, "held-out MSE vs training size", "T", "MSE", false, true,
                           ctx.stamp()));

  json jmodel;
  jmodel["type"] = "lasso";
  jmodel["lattice"] = json{{"d", lat.d}, {"bounds", lat.bounds}};
  jmodel["base"] = base;
  json jw = json::array();
  for (Eigen::Index i = 0; i < fit.weights.size(); ++i)
    jw.push_back(json::array({fit.weights[i].real(), fit.weights[i].imag()}));
  jmodel["weights"] = std::move(jw);
  jmodel["lambda1"] = fit.lambda1;
  jmodel["fit"] = json{{"iterations", fit.iterations},
                       {"gap", fit.gap},
                       {"converged", fit.converged},
                       {"epsilon3", eps3},
                       {"empirical_risk", fit.empirical_risk}};
  ctx.attach(jmodel);
  write_text_file(ctx.out_path("model.json"), jmodel.dump(2) + "\n");

  const double eps_y_total = label_noise + family.label_error_bound();
  json jrisk;
  jrisk["heldout_mse"] = heldout.mse;
  jrisk["heldout_std_error"] = heldout.std_error;
  jrisk["test_points"] = heldout.samples;
  jrisk["epsilon"] = epsilon;
  jrisk["delta"] = delta;
  jrisk["epsilon_b"] = eps_b_used;
  jrisk["epsilon_y"] = eps_y_total;
  jrisk["risk_bound"] = std::pow(plan.lambda1 * eps_b_used + eps_y_total, 2) + eps3;
  jrisk["certified"] = certified && mode.exact;
  jrisk["T_used"] = t_used;
  jrisk["executed_circuits_planned"] = plan.circuit_executions;
  if (!mode.exact) jrisk["shots_per_part"] = mode.shots_per_part;
  ctx.attach(jrisk);
  write_text_file(ctx.out_path("risk.json"), jrisk.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// trotter: sweep step counts, compare against exact evolution and the bound
// ---------------------------------------------------------------------------

inline int cmd_trotter(const RunContext& ctx) {
  if (!ctx.config.contains("hamiltonian")) throw ParseError("config: missing \"hamiltonian\"");
  const std::string path = ctx.resolve(ctx.config["hamiltonian"].get<std::string>());
  if (!std::filesystem::exists(path)) throw ParseError("hamiltonian document not found: " + path);
  const ParamHamiltonian h = parse_hamiltonian(read_text_file(path));
  if (!ctx.config.contains("x")) throw ParseError("config: missing \"x\" bitstring");
  const std::vector<bool> x = detail::bits_from_string(ctx.config["x"].get<std::string>());
  if (!ctx.config.contains("alpha")) throw ParseError("config: missing \"alpha\"");
  const std::vector<double> alpha = ctx.config["alpha"].get<std::vector<double>>();
  const std::vector<long> r_list = ctx.config.value("r_list", std::vector<long>{1, 2, 4, 8, 16});
  Observable obs;
  if (ctx.config.contains("observable")) obs = observable_from_json(ctx.config["observable"]);
  else obs = PauliObs{PauliString::single(h.n, 0, Pauli::Z)};

  const double a_sum = commutator_bound(h);
  const double exact = eval_dynamics(h, obs, x, alpha, EvalMode::Exact());

  std::string csv = "# " + ctx.stamp() + "\nr,error,bound\n";
  PlotSeries err_series{"|exact - trotter|", {}, "#1f6fb2", true};
  PlotSeries bound_series{"bound", {}, "#c0392b", true};
  std::vector<std::pair<double, double>> loglog;
  std::string violation;
  for (long r : r_list) {
    const double approx = eval_dynamics(h, obs, x, alpha, EvalMode::Trotter(r));
    const double err = std::abs(exact - approx);
    const double bound = h.tau * h.tau * a_sum / (2.0 * static_cast<double>(r));
    csv += std::to_string(r) + "," + detail::fmt(err) + "," + detail::fmt(bound) + "\n";
    err_series.points.emplace_back(static_cast<double>(r), std::max(err, 1e-18));
    bound_series.points.emplace_back(static_cast<double>(r), std::max(bound, 1e-18));
    if (err > 1e-12) loglog.emplace_back(std::log(static_cast<double>(r)), std::log(err));
    if (err > bound + 1e-8)
      violation = "trotter error " + std::to_string(err) + " exceeds bound " +
                  std::to_string(bound) + " at r=" + std::to_string(r);
  }
  write_text_file(ctx.out_path("sweep.csv"), csv);
  write_text_file(ctx.out_path("sweep.svg"),
                  svg_plot({err_series, bound_series}, "trotter error vs steps", "r", "error", true,
                           true, ctx.stamp()));

  double slope = 0;
  if (loglog.size() >= 2) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& [lx, ly] : loglog) {
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
    }
    const double n = static_cast<double>(loglog.size());
    slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  json summary;
  summary["commutator_sum"] = a_sum;
  summary["tau"] = h.tau;
  summary["exact_value"] = exact;
  summary["loglog_slope"] = slope;
  summary["bound_satisfied"] = violation.empty();
  if (!violation.empty()) summary["violation"] = violation;
  ctx.attach(summary);
  write_text_file(ctx.out_path("summary.json"), summary.dump(2) + "\n");
  if (!violation.empty()) throw BoundViolation(violation);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// kernel: Gram assembly, PSD clip, ridge fit, bound comparison
// ---------------------------------------------------------------------------

inline int cmd_kernel(const RunContext& ctx) {
  const ConceptFamily family = detail::load_family(ctx);
  const json kcfg = ctx.config.value("kernel", json::object());
  const double lambda = kcfg.value("lambda", 1e-8);
  const double eps_k = kcfg.value("epsilon_k", 0.0);
  const double delta = kcfg.value("delta", 0.05);
  const long t_train = kcfg.value("train", 16L);
  const long t_test = kcfg.value("test", 8L);
  const double kappa = kcfg.value("kappa", 1.0);
  ctx.require_seed("dataset generation");

  const std::vector<double> alpha_star = detail::hidden_alpha(ctx, family.param_count());
  auto concept_fn = [&](const std::vector<bool>& x) { return family.concept_value(x, alpha_star); };
  const InputDistribution dist = InputDistribution::uniform(family.input_bits());
  const Dataset train = generate_dataset(concept_fn, dist, t_train, ctx.seed);

  GramMode mode = GramMode::Exact();
  long shots = 0;
  if (eps_k > 0) {
    shots = shots_for(eps_k / 2.0, delta).shots_per_estimate;
    mode = GramMode::Shots(shots, ctx.seed);
  }
  const Eigen::MatrixXd k_raw = gram_matrix(family, train.inputs, mode, ctx.budget);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_raw(k_raw);
  const double min_eig_before = es_raw.eigenvalues().minCoeff();
  const Eigen::MatrixXd k_clip = clip_psd(k_raw);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es_clip(k_clip);
  const double min_eig_after = es_clip.eigenvalues().minCoeff();

  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(train.labels.data(), t_train);
  const KrrModel model = krr_fit(k_clip, y, lambda);
  const double train_residual = (k_clip * model.dual - y).cwiseAbs().maxCoeff();

  const Dataset test = generate_dataset(concept_fn, dist, t_test, mix64(ctx.seed ^ 0x7e57ULL));
  double test_mse = 0;
  for (long i = 0; i < t_test; ++i) {
    Eigen::VectorXd overlaps(t_train);
    for (long j = 0; j < t_train; ++j) {
      GramMode pair = mode;
      if (!mode.exact)
        pair.seed = mix64(ctx.seed ^ mix64(0xf17eULL + static_cast<uint64_t>(i) * 0x9e37ULL +
                                           static_cast<uint64_t>(j)));
      overlaps[j] = gram_entry(family, test.inputs[i], train.inputs[j], pair, ctx.budget);
    }
    const double pred = krr_predict(model, overlaps);
    const double err = pred - test.labels[i];
    test_mse += err * err;
  }
  test_mse /= static_cast<double>(t_test);

  const double b_norm = std::sqrt(static_cast<double>(family.feature_lattice().size()));
  const double eps_y = family.label_error_bound();
  const double bound_e = krr_error_bound(b_norm, static_cast<double>(t_train), kappa, eps_k, eps_y,
                                         lambda);

  std::vector<std::vector<double>> kplot(t_train, std::vector<double>(t_train));
  std::string gram_csv = "# " + ctx.stamp() + "\n";
  for (long i = 0; i < t_train; ++i) {
    for (long j = 0; j < t_train; ++j) {
      kplot[i][j] = k_clip(i, j);
      gram_csv += (j ? "," : "") + detail::fmt(k_raw(i, j));
    }
    gram_csv += "\n";
  }
  write_text_file(ctx.out_path("gram.csv"), gram_csv);
  write_text_file(ctx.out_path("gram.svg"), svg_heatmap(kplot, "Gram matrix", ctx.stamp()));

  json jmodel;
  jmodel["type"] = "krr";
  jmodel["lambda"] = lambda;
  json jd = json::array();
  for (Eigen::Index i = 0; i < model.dual.size(); ++i) jd.push_back(model.dual[i]);
  jmodel["dual"] = std::move(jd);
  json jin = json::array();
  for (const auto& x : train.inputs) jin.push_back(detail::bits_to_string(x));
  jmodel["training_inputs"] = std::move(jin);
  ctx.attach(jmodel);
  write_text_file(ctx.out_path("model.json"), jmodel.dump(2) + "\n");

  json report;
  report["train"] = t_train;
  report["test"] = t_test;
  report["lambda"] = lambda;
  report["epsilon_k"] = eps_k;
  report["shots_per_entry"] = shots;
  report["min_eig_before_clip"] = min_eig_before;
  report["min_eig_after_clip"] = min_eig_after;
  report["train_residual_max"] = train_residual;
  report["test_mse"] = test_mse;
  report["kappa"] = kappa;
  report["feature_norm_bound_B"] = b_norm;
  report["epsilon_y"] = eps_y;
  report["error_bound_E"] = bound_e;
  report["error_bound_E_sq"] = bound_e * bound_e;
  report["bound_satisfied"] = test_mse <= bound_e * bound_e;
  ctx.attach(report);
  write_text_file(ctx.out_path("report.json"), report.dump(2) + "\n");
  return kExitOk;
}

// ---------------------------------------------------------------------------
// Dispatcher
// ---------------------------------------------------------------------------

inline int run_command(const std::string& experiment, const RunContext& ctx) {
  try {
    if (experiment == "extract") return cmd_extract(ctx);
    if (experiment == "learn") return cmd_learn(ctx);
    if (experiment == "trotter") return cmd_trotter(ctx);
    if (experiment == "kernel") return cmd_kernel(ctx);
    throw ParseError("unknown experiment: " + experiment);
  } catch (const BoundViolation& e) {
    json err{{"error", e.what()}, {"exit_code", kExitBound}};
    std::cerr << err.dump() << "\n";
    try { write_text_file(ctx.out_path("error.json"), err.dump(2) + "\n"); } catch (...) {}
    return kExitBound;
  } catch (const BudgetError& e) {
    json err{{"error", e.what()}, {"exit_code", kExitBudget}};
    std::cerr << err.dump() << "\n";
    try { write_text_file(ctx.out_path("error.json"), err.dump(2) + "\n"); } catch (...) {}
    return kExitBudget;
  } catch (const ParseError& e) {
    json err{{"error", e.what()}, {"exit_code", kExitConfig}};
    std::cerr << err.dump() << "\n";
    try { write_text_file(ctx.out_path("error.json"), err.dump(2) + "\n"); } catch (...) {}
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    json err{{"error", e.what()}, {"exit_code", kExitConfig}};
    std::cerr << err.dump() << "\n";
    try { write_text_file(ctx.out_path("error.json"), err.dump(2) + "\n"); } catch (...) {}
    return kExitConfig;
  } catch (const std::exception& e) {
    json err{{"error", e.what()}, {"exit_code", kExitInternal}};
    std::cerr << err.dump() << "\n";
    try { write_text_file(ctx.out_path("error.json"), err.dump(2) + "\n"); } catch (...) {}
    return kExitInternal;
  }
}

}  // namespace fouriq

#endif  // FOURIQ_CLI_HPP
