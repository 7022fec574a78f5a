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

#ifndef FOURIQ_LEARNING_HPP
#define FOURIQ_LEARNING_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <vector>

#include "fouriq/common.hpp"
#include "fouriq/extract.hpp"
#include "fouriq/shots.hpp"

namespace fouriq {

// ---------------------------------------------------------------------------
// Datasets
// ---------------------------------------------------------------------------

struct Dataset {
  std::vector<std::vector<bool>> inputs;
  std::vector<double> labels;
  double label_noise_bound = 0;
};

/// Independent per-bit input distribution; default is uniform bitstrings.
struct InputDistribution {
  std::vector<double> p_one;

  static InputDistribution uniform(int bits) {
    return InputDistribution{std::vector<double>(bits, 0.5)};
  }

  int bits() const { return static_cast<int>(p_one.size()); }

  std::vector<bool> sample(RngStream& s) const {
    std::vector<bool> x(p_one.size());
    for (size_t i = 0; i < p_one.size(); ++i) x[i] = s.next_double() < p_one[i];
    return x;
  }
};

/// Draws T inputs i.i.d. and labels them with the concept, optionally adding
/// uniform noise bounded by eps_y. Row t uses the stream (seed, t).
inline Dataset generate_dataset(const std::function<double(const std::vector<bool>&)>& concept_fn,
                                const InputDistribution& dist, long t_count, uint64_t seed,
                                double eps_y = 0) {
  if (t_count < 1) throw std::invalid_argument("dataset size must be >= 1");
  Dataset ds;
  ds.label_noise_bound = eps_y;
  ds.inputs.reserve(t_count);
  ds.labels.reserve(t_count);
  for (long t = 0; t < t_count; ++t) {
    RngStream s = make_stream(seed, 0xda7aULL, static_cast<uint64_t>(t));
    std::vector<bool> x = dist.sample(s);
    double y = concept_fn(x);
    if (eps_y > 0) y += eps_y * (2.0 * s.next_double() - 1.0);
    ds.inputs.push_back(std::move(x));
    ds.labels.push_back(y);
  }
  return ds;
}

// ---------------------------------------------------------------------------
// L1-constrained least squares
// ---------------------------------------------------------------------------

/// Sample/accuracy plan for the L1-constrained pipeline over a lattice of
/// size m: T = ceil(16 m^4 sqrt(2 ln(2m/delta)) / eps^2), per-coefficient
/// accuracy eps_b = 0.2 eps / m, L1 budget m, and the implied circuit
/// execution count m T / eps_b^2.
struct LassoPlan {
  long m = 1;
  long t_samples = 1;
  double t_samples_real = 1;  // un-rounded value, kept for reporting
  double epsilon_b = 0;
  double lambda1 = 1;
  double epsilon = 0;
  double delta = 0;
  double circuit_executions = 0;
};

inline LassoPlan plan_lasso(long m, double epsilon, double delta) {
  if (m < 1) throw std::invalid_argument("lattice size must be >= 1");
  if (!(epsilon > 0) || !(epsilon <= 1)) throw std::invalid_argument("epsilon must be in (0, 1]");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("delta must be in (0, 1)");
  LassoPlan p;
  p.m = m;
  p.epsilon = epsilon;
  p.delta = delta;
  const double md = static_cast<double>(m);
  p.t_samples_real =
      16.0 * md * md * md * md * std::sqrt(2.0 * std::log(2.0 * md / delta)) / (epsilon * epsilon);
  p.t_samples = static_cast<long>(std::ceil(p.t_samples_real));
  p.epsilon_b = 0.2 * epsilon / md;
  p.lambda1 = md;
  p.circuit_executions = md * p.t_samples_real / (p.epsilon_b * p.epsilon_b);
  return p;
}

/// Truth weights w_l = e^{i base l.alpha}; |w_l| = 1, so ||w||_1 = m.
inline Eigen::VectorXcd true_weights(std::span<const double> alpha, const FrequencyLattice& lat,
                                     double base = kPi) {
  if (static_cast<int>(alpha.size()) != lat.d)
    throw std::invalid_argument("alpha length does not match lattice dimension");
  Eigen::VectorXcd w(lat.size());
  for (long i = 0; i < lat.size(); ++i) {
    const std::vector<long> l = lat.point(i);
    double phase = 0;
    for (int s = 0; s < lat.d; ++s) phase += base * alpha[s] * static_cast<double>(l[s]);
    w[i] = std::polar(1.0, phase);
  }
  return w;
}

/// Projects moduli onto the simplex of radius `radius`, preserving phases:
/// the Euclidean projection onto the complex L1 ball.
inline Eigen::VectorXcd project_l1_ball(const Eigen::VectorXcd& w, double radius) {
  const Eigen::Index m = w.size();
  double total = 0;
  std::vector<double> mod(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    mod[i] = std::abs(w[i]);
    total += mod[i];
  }
  if (total <= radius) return w;
  std::vector<double> sorted = mod;
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0, tau = 0;
  for (Eigen::Index k = 0; k < m; ++k) {
    prefix += sorted[k];
    const double cand = (prefix - radius) / static_cast<double>(k + 1);
    if (k + 1 == m || sorted[k + 1] <= cand) {
      tau = cand;
      break;
    }
  }
  Eigen::VectorXcd out(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double keep = std::max(mod[i] - tau, 0.0);
    out[i] = mod[i] > 0 ? w[i] * (keep / mod[i]) : cplx{0, 0};
  }
  return out;
}

struct LassoFit {
  Eigen::VectorXcd weights;
  double lambda1 = 0;
  long iterations = 0;
  double gap = 0;             // certified suboptimality of the empirical risk
  double empirical_risk = 0;  // (1/T) ||B w - y||^2 at the returned point
  bool converged = false;
};

/// Minimizes (1/T) ||B w - y||_2^2 over ||w||_1 <= lambda1 by accelerated
/// projected gradient descent with backtracking and adaptive restarts. The
/// returned point is certified within eps3 / 2 of the constrained optimum
/// through the linear-minimization (Frank-Wolfe) gap; exceeding the
/// iteration cap without certification is an error reporting the gap.
inline LassoFit lasso_fit(const Eigen::MatrixXcd& b, const Eigen::VectorXd& y, double lambda1,
                          double eps3, long max_iterations = 200000) {
  if (b.rows() != y.size()) throw std::invalid_argument("feature/label row mismatch");
  if (!(lambda1 > 0)) throw std::invalid_argument("lambda1 must be positive");
  if (!(eps3 > 0)) throw std::invalid_argument("eps3 must be positive");
  const double t_inv = 1.0 / static_cast<double>(b.rows());
  const Eigen::VectorXcd yc = y.cast<cplx>();

  auto risk_of = [&](const Eigen::VectorXcd& w) { return t_inv * (b * w - yc).squaredNorm(); };
  auto grad_of = [&](const Eigen::VectorXcd& w) {
    return ((2.0 * t_inv) * (b.adjoint() * (b * w - yc))).eval();
  };
  // The linear-minimization gap Re<g, w> + lambda1 max|g_l| upper-bounds
  // f(w) - f* over the ball, giving a computable certificate.
  auto fw_gap = [&](const Eigen::VectorXcd& w, const Eigen::VectorXcd& g) {
    double gmax = 0;
    for (Eigen::Index i = 0; i < g.size(); ++i) gmax = std::max(gmax, std::abs(g[i]));
    return g.dot(w).real() + lambda1 * gmax;
  };

  double lip = 2.0 * t_inv * (b.adjoint() * b).operatorNorm();
  if (!(lip > 0)) lip = 1.0;

  Eigen::VectorXcd w = Eigen::VectorXcd::Zero(b.cols());
  Eigen::VectorXcd z = w;  // extrapolation point
  double momentum = 1.0;
  double f_prev = risk_of(w);
  LassoFit best;
  best.weights = w;
  best.lambda1 = lambda1;
  best.empirical_risk = f_prev;
  best.gap = fw_gap(w, grad_of(w));

  const double target = eps3 / 2.0;
  for (long it = 1; it <= max_iterations; ++it) {
    const Eigen::VectorXcd gz = grad_of(z);
    const double fz = risk_of(z);
    Eigen::VectorXcd w_next;
    for (int bt = 0; bt < 60; ++bt) {
      w_next = project_l1_ball(z - gz / lip, lambda1);
      const Eigen::VectorXcd dw = w_next - z;
      const double quad = fz + gz.dot(dw).real() + 0.5 * lip * dw.squaredNorm();
      if (risk_of(w_next) <= quad + 1e-15) break;
      lip *= 2.0;
    }
    const double f_next = risk_of(w_next);
    const double gap = fw_gap(w_next, grad_of(w_next));
    if (f_next <= best.empirical_risk) {
      best.weights = w_next;
      best.empirical_risk = f_next;
      best.gap = gap;
    }
    best.iterations = it;
    if (gap <= target) {
      best.weights = w_next;
      best.empirical_risk = f_next;
      best.gap = gap;
      best.converged = true;
      return best;
    }
    if (f_next > f_prev) momentum = 1.0;  // adaptive restart
    const double momentum_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * momentum * momentum));
    z = w_next + ((momentum - 1.0) / momentum_next) * (w_next - w);
    momentum = momentum_next;
    w = w_next;
    f_prev = f_next;
  }
  throw std::runtime_error("lasso_fit did not certify convergence: achieved gap " +
                           std::to_string(best.gap) + " > target " + std::to_string(target));
}

struct Prediction {
  double value = 0;
  double imag_residue = 0;
};

/// Model output w . b with the (reported) imaginary residue discarded.
inline Prediction predict(const Eigen::VectorXcd& weights, const Eigen::VectorXcd& features) {
  if (weights.size() != features.size()) throw std::invalid_argument("feature dimension mismatch");
  cplx acc{0, 0};
  for (Eigen::Index i = 0; i < weights.size(); ++i) acc += weights[i] * features[i];
  return Prediction{acc.real(), std::abs(acc.imag())};
}

// ---------------------------------------------------------------------------
// Risk estimation
// ---------------------------------------------------------------------------

struct RiskEstimate {
  double mse = 0;
  double std_error = 0;
  long samples = 0;
};

/// Monte-Carlo mean of |h(x) - c(x)|^2 over the input distribution.
inline RiskEstimate risk(const std::function<double(const std::vector<bool>&)>& hypothesis,
                         const std::function<double(const std::vector<bool>&)>& concept_fn,
                         const InputDistribution& dist, long n_samples, uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("risk needs at least one sample");
  double sum = 0, sum_sq = 0;
  for (long t = 0; t < n_samples; ++t) {
    RngStream s = make_stream(seed, 0x7269736bULL, static_cast<uint64_t>(t));
    const std::vector<bool> x = dist.sample(s);
    const double e = hypothesis(x) - concept_fn(x);
    sum += e * e;
    sum_sq += e * e * e * e;
  }
  RiskEstimate r;
  r.samples = n_samples;
  r.mse = sum / static_cast<double>(n_samples);
  const double var = std::max(0.0, sum_sq / n_samples - r.mse * r.mse);
  r.std_error = std::sqrt(var / static_cast<double>(n_samples));
  return r;
}

/// Exact risk under the uniform distribution by enumerating all bitstrings.
inline double exhaustive_risk(const std::function<double(const std::vector<bool>&)>& hypothesis,
                              const std::function<double(const std::vector<bool>&)>& concept_fn,
                              int bits) {
  const long total = checked_pow2(bits);
  double acc = 0;
  for (long i = 0; i < total; ++i) {
    std::vector<bool> x(bits);
    for (int b = 0; b < bits; ++b) x[b] = (i >> (bits - 1 - b)) & 1L;
    const double e = hypothesis(x) - concept_fn(x);
    acc += e * e;
  }
  return acc / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// Kernel ridge regression
// ---------------------------------------------------------------------------

/// Nearest (Frobenius) positive-semidefinite matrix: eigenvalues clipped at
/// zero. Input must be symmetric.
inline Eigen::MatrixXd clip_psd(const Eigen::MatrixXd& k, double sym_tol = 1e-9) {
  if (k.rows() != k.cols()) throw std::invalid_argument("clip_psd needs a square matrix");
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > sym_tol)
    throw std::invalid_argument("clip_psd needs a symmetric matrix");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0);
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().transpose();
}

struct KrrModel {
  Eigen::VectorXd dual;  // a = (K + lambda I)^{-1} y
  double lambda = 0;
  Eigen::MatrixXd gram;
  Eigen::VectorXd labels;
};

inline KrrModel krr_fit(const Eigen::MatrixXd& k, const Eigen::VectorXd& y, double lambda) {
  if (k.rows() != k.cols() || k.rows() != y.size()) throw std::invalid_argument("gram/label shape mismatch");
  if ((k - k.transpose()).cwiseAbs().maxCoeff() > 1e-9)
    throw std::invalid_argument("gram matrix must be symmetric");
  if (lambda < 0) throw std::invalid_argument("lambda must be >= 0");
  Eigen::MatrixXd sys = k + lambda * Eigen::MatrixXd::Identity(k.rows(), k.cols());
  Eigen::LDLT<Eigen::MatrixXd> ldlt(sys);
  if (ldlt.info() != Eigen::Success)
    throw std::runtime_error("kernel system factorization failed");
  Eigen::VectorXd a = ldlt.solve(y);
  const double residual = (sys * a - y).norm();
  if (!a.allFinite() || residual > 1e-6 * std::max(1.0, y.norm()))
    throw std::runtime_error("kernel system is singular at lambda = " + std::to_string(lambda));
  return KrrModel{std::move(a), lambda, k, y};
}

inline double krr_predict(const KrrModel& model, const Eigen::VectorXd& overlaps) {
  if (overlaps.size() != model.dual.size()) throw std::invalid_argument("overlap vector shape mismatch");
  return overlaps.dot(model.dual);
}

/// Four-term worst-case prediction-error bound of the noisy-Gram ridge
/// pipeline; the true risk is bounded by its square.
inline double krr_error_bound(double b_norm, double t_count, double kappa, double eps_k,
                              double eps_y, double lambda) {
  if (!(lambda > 0)) throw std::invalid_argument("lambda must be positive");
  if (b_norm < 0 || t_count < 0 || kappa < 0 || eps_k < 0 || eps_y < 0)
    throw std::invalid_argument("bound inputs must be nonnegative");
  const double rt = std::sqrt(t_count);
  return b_norm * t_count * t_count * eps_k * kappa / (lambda * lambda) +
         kappa * rt * eps_y / lambda + rt * kappa * b_norm * eps_k / lambda +
         t_count * eps_k * eps_y / lambda;
}

// ---------------------------------------------------------------------------
// Flipped concept: alpha is the input, x fixes the function
// ---------------------------------------------------------------------------

struct FlippedFit {
  FourierTable table;
  long rank = 0;
  double residual = 0;
  bool rank_deficient = false;
};

/// Least-squares Fourier fit of samples (alpha_t, y_t) over the lattice; on
/// a full regular grid this reproduces the grid DFT.
inline FlippedFit fit_flipped(const std::vector<std::vector<double>>& alphas,
                              const std::vector<double>& ys, const FrequencyLattice& lat,
                              double base = kPi) {
  if (alphas.size() != ys.size()) throw std::invalid_argument("sample count mismatch");
  const long t = static_cast<long>(alphas.size());
  const long m = lat.size();
  if (t < m) throw std::invalid_argument("need at least m samples to fit m coefficients");
  Eigen::MatrixXcd phi(t, m);
  for (long r = 0; r < t; ++r) {
    if (static_cast<int>(alphas[r].size()) != lat.d)
      throw std::invalid_argument("alpha dimension mismatch");
    for (long c = 0; c < m; ++c) {
      const std::vector<long> l = lat.point(c);
      double phase = 0;
      for (int s = 0; s < lat.d; ++s) phase += base * alphas[r][s] * static_cast<double>(l[s]);
      phi(r, c) = std::polar(1.0, phase);
    }
  }
  Eigen::VectorXcd y(t);
  for (long r = 0; r < t; ++r) y[r] = ys[r];
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(phi);
  FlippedFit fit;
  fit.rank = cod.rank();
  fit.rank_deficient = fit.rank < m;
  Eigen::VectorXcd c = cod.solve(y);
  fit.residual = (phi * c - y).norm();
  fit.table.lattice = lat;
  fit.table.base = base;
  fit.table.provenance = Provenance{ProvenanceKind::Oracle, 0, 0};
  fit.table.coeffs.assign(c.data(), c.data() + c.size());
  return fit;
}

// ---------------------------------------------------------------------------
// Covering grid of the concept class
// ---------------------------------------------------------------------------

struct CoveringGrid {
  long divisions = 1;  // M
  double points = 1;   // G = M^d
};

inline CoveringGrid covering_grid(int d, double l_uploads, double b_l1_norm, double epsilon) {
  if (d < 1 || !(l_uploads > 0) || !(b_l1_norm > 0) || !(epsilon > 0))
    throw std::invalid_argument("covering_grid inputs must be positive");
  CoveringGrid g;
  g.divisions = std::max(1L, static_cast<long>(std::ceil(d * l_uploads * b_l1_norm / epsilon)));
  long double p = 1;
  for (int i = 0; i < d; ++i) p *= static_cast<long double>(g.divisions);
  g.points = static_cast<double>(p);
  return g;
}

}  // namespace fouriq

#endif  // FOURIQ_LEARNING_HPP
