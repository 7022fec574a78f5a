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

#ifndef FOURIQ_HAMILTONIAN_HPP
#define FOURIQ_HAMILTONIAN_HPP

#include <Eigen/Dense>
#include <algorithm>
#include <variant>
#include <vector>

#include "fouriq/circuit.hpp"
#include "fouriq/common.hpp"
#include "fouriq/statevector.hpp"

namespace fouriq {

/// Coefficient of a fixed Hamiltonian term: an input bit x[index] or a
/// constant.
struct InputBit {
  int index = 0;
};
struct Constant {
  double value = 0;
};
using CoeffSource = std::variant<InputBit, Constant>;

struct FixedTerm {
  CoeffSource coeff;
  PauliString pauli;
};

struct AlphaTerm {
  int param = 0;
  PauliString pauli;
};

/// H(x, alpha) = sum_j c_j(x) P_j + sum_s alpha_s P_s, evolved for time tau.
struct ParamHamiltonian {
  int n = 0;
  double tau = 1.0;
  std::vector<FixedTerm> fixed_terms;
  std::vector<AlphaTerm> alpha_terms;

  int param_count() const {
    int d = 0;
    for (const auto& t : alpha_terms) d = std::max(d, t.param + 1);
    return d;
  }

  int input_bits() const {
    int b = 0;
    for (const auto& t : fixed_terms)
      if (const auto* ib = std::get_if<InputBit>(&t.coeff)) b = std::max(b, ib->index + 1);
    return b;
  }

  void check() const {
    if (n < 1) throw std::invalid_argument("hamiltonian needs at least one qubit");
    if (!std::isfinite(tau)) throw std::invalid_argument("tau must be finite");
    for (const auto& t : fixed_terms)
      if (t.pauli.n != n) throw std::invalid_argument("fixed term pauli length mismatch");
    for (const auto& t : alpha_terms) {
      if (t.pauli.n != n) throw std::invalid_argument("alpha term pauli length mismatch");
      if (t.param < 0) throw std::invalid_argument("alpha term parameter index negative");
    }
  }
};

/// Transverse-field Ising model on the graph described by `edges`, one bit
/// per pair (i, j), i < j, in row-major upper-triangular order. Every set
/// bit adds a Z_i Z_j coupling; a single unknown alpha scales X on every
/// qubit (d = 1).
inline ParamHamiltonian build_ising(const std::vector<bool>& edges, int n, double tau = 1.0) {
  const size_t expected = static_cast<size_t>(n) * (n - 1) / 2;
  if (edges.size() != expected)
    throw std::invalid_argument("edge bitstring must have n(n-1)/2 = " + std::to_string(expected) +
                                " bits");
  ParamHamiltonian h;
  h.n = n;
  h.tau = tau;
  size_t idx = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++idx) {
      if (!edges[idx]) continue;
      PauliString p = PauliString::identity(n);
      p.letters[i] = Pauli::Z;
      p.letters[j] = Pauli::Z;
      h.fixed_terms.push_back(FixedTerm{InputBit{static_cast<int>(idx)}, p});
    }
  for (int q = 0; q < n; ++q)
    h.alpha_terms.push_back(AlphaTerm{0, PauliString::single(n, q, Pauli::X)});
  return h;
}

inline double coeff_value(const CoeffSource& c, const std::vector<bool>& x) {
  if (const auto* ib = std::get_if<InputBit>(&c)) {
    if (ib->index >= static_cast<int>(x.size()))
      throw std::invalid_argument("input bitstring too short for hamiltonian");
    return x[ib->index] ? 1.0 : 0.0;
  }
  return std::get<Constant>(c).value;
}

/// Dense matrix of H(x, alpha) (oracle scale only).
inline Eigen::MatrixXcd dense_hamiltonian(const ParamHamiltonian& h, const std::vector<bool>& x,
                                          std::span<const double> alpha) {
  h.check();
  const long dim = checked_pow2(h.n);
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  for (const auto& t : h.fixed_terms) {
    const double c = coeff_value(t.coeff, x);
    if (c != 0) m += c * t.pauli.matrix();
  }
  for (const auto& t : h.alpha_terms) {
    if (t.param >= static_cast<int>(alpha.size()))
      throw std::invalid_argument("alpha vector too short for hamiltonian");
    if (alpha[t.param] != 0) m += alpha[t.param] * t.pauli.matrix();
  }
  return m;
}

namespace detail {

/// exp(i theta P) restricted to the support of P; P^2 = I gives the closed
/// form cos(theta) I + i sin(theta) P.
inline FixedGate pauli_exp_gate(const PauliString& p, double theta) {
  const std::vector<int> support = p.support();
  const int k = static_cast<int>(support.size());
  PauliString local;
  local.n = k;
  for (int q : support) local.letters.push_back(p.letters[q]);
  const long dim = 1L << k;
  Eigen::MatrixXcd m = std::cos(theta) * Eigen::MatrixXcd::Identity(dim, dim) +
                       kI * std::sin(theta) * local.matrix();
  return FixedGate{std::move(m), support, ""};
}

/// Ladder realization for wide strings: single-qubit basis changes, a CNOT
/// parity fan-in onto the last support qubit, the diagonal phase, and the
/// mirror. Every emitted gate touches at most two qubits.
inline void pauli_exp_ladder(std::vector<GateSpec>& out, const PauliString& p, double theta) {
  const std::vector<int> support = p.support();
  std::vector<FixedGate> basis;
  const Eigen::Matrix2cd v = y_basis_gate();
  for (int q : support) {
    if (p.letters[q] == Pauli::X) basis.push_back(make_named_gate("H", {q}));
    else if (p.letters[q] == Pauli::Y) basis.push_back(FixedGate{v, {q}, ""});
  }
  for (const auto& g : basis) out.push_back(g);
  const int last = support.back();
  for (size_t i = 0; i + 1 < support.size(); ++i)
    out.push_back(make_named_gate("CNOT", {support[i], last}));
  Eigen::Matrix2cd diag = Eigen::Matrix2cd::Zero();
  diag(0, 0) = std::polar(1.0, theta);
  diag(1, 1) = std::polar(1.0, -theta);
  out.push_back(FixedGate{diag, {last}, ""});
  for (size_t i = support.size() - 1; i-- > 0;)
    out.push_back(make_named_gate("CNOT", {support[i], last}));
  for (auto it = basis.rbegin(); it != basis.rend(); ++it) {
    FixedGate undo = *it;
    undo.unitary = undo.unitary.adjoint().eval();
    if (undo.name != "H") undo.name.clear();
    out.push_back(undo);
  }
}

inline bool pauli_less(const PauliString& a, const PauliString& b) { return a.str() < b.str(); }

}  // namespace detail

/// First-order product-formula compilation of exp(i tau H(x, alpha)) into a
/// Pauli-encoded circuit: r repetitions of (fixed-term exponentials, then
/// alpha-term encodings), each carrying angle tau/r. Within each group terms
/// apply in lexicographic Pauli order. Zero-coefficient fixed terms drop out.
inline ParametrizedCircuit trotterize(const ParamHamiltonian& h, const std::vector<bool>& x, long r) {
  h.check();
  if (r < 1) throw std::invalid_argument("trotter step count must be >= 1");
  ParametrizedCircuit c;
  c.n = h.n;
  c.d = h.param_count();
  c.metadata = "trotter r=" + std::to_string(r);
  const double step = h.tau / static_cast<double>(r);

  std::vector<FixedTerm> fixed = h.fixed_terms;
  std::stable_sort(fixed.begin(), fixed.end(),
                   [](const FixedTerm& a, const FixedTerm& b) { return detail::pauli_less(a.pauli, b.pauli); });
  std::vector<AlphaTerm> alphas = h.alpha_terms;
  std::stable_sort(alphas.begin(), alphas.end(),
                   [](const AlphaTerm& a, const AlphaTerm& b) { return detail::pauli_less(a.pauli, b.pauli); });

  for (long rep = 0; rep < r; ++rep) {
    for (const auto& t : fixed) {
      const double cval = coeff_value(t.coeff, x);
      if (cval == 0 || t.pauli.is_identity()) continue;
      if (t.pauli.support().size() <= 3)
        c.gates.push_back(detail::pauli_exp_gate(t.pauli, cval * step));
      else
        detail::pauli_exp_ladder(c.gates, t.pauli, cval * step);
    }
    for (const auto& t : alphas) c.gates.push_back(EncodeGate{t.pauli, t.param, step});
  }
  return c;
}

/// Sum over unordered term pairs of the commutator spectral norm, with
/// alpha coefficients bounded by 1 (their domain maximum), input-bit
/// coefficients by 1, and constants by their magnitude.
inline double commutator_bound(const ParamHamiltonian& h) {
  h.check();
  if (h.n > 6) throw BudgetError("commutator_bound uses dense norms; limited to 6 qubits");
  std::vector<std::pair<double, Eigen::MatrixXcd>> terms;
  for (const auto& t : h.fixed_terms) {
    double bound = 1.0;
    if (const auto* c = std::get_if<Constant>(&t.coeff)) bound = std::abs(c->value);
    terms.emplace_back(bound, t.pauli.matrix());
  }
  for (const auto& t : h.alpha_terms) terms.emplace_back(1.0, t.pauli.matrix());
  double a = 0;
  for (size_t i = 0; i < terms.size(); ++i)
    for (size_t j = i + 1; j < terms.size(); ++j) {
      const Eigen::MatrixXcd comm = terms[i].second * terms[j].second - terms[j].second * terms[i].second;
      // i [A, B] is Hermitian; its extreme eigenvalue is the spectral norm.
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(kI * comm, Eigen::EigenvaluesOnly);
      const double norm = es.eigenvalues().cwiseAbs().maxCoeff();
      a += terms[i].first * terms[j].first * norm;
    }
  return a;
}

/// Trotter budget: step count and the guaranteed label error tau^2 A / (2r).
struct TrotterPlan {
  long r = 1;
  double commutator_sum = 0;  // A
  double epsilon_y = 0;
};

/// Smallest r with tau^2 A / (2r) <= epsilon / 2, i.e. r >= tau^2 A / epsilon.
inline TrotterPlan plan_trotter(const ParamHamiltonian& h, double epsilon) {
  if (!(epsilon > 0)) throw std::invalid_argument("epsilon must be positive");
  const double a = commutator_bound(h);
  TrotterPlan plan;
  plan.commutator_sum = a;
  plan.r = std::max(1L, static_cast<long>(std::ceil(h.tau * h.tau * a / epsilon)));
  plan.epsilon_y = h.tau * h.tau * a / (2.0 * static_cast<double>(plan.r));
  return plan;
}

struct EvalMode {
  bool exact = true;
  long r = 1;

  static EvalMode Exact() { return EvalMode{}; }
  static EvalMode Trotter(long r) { return EvalMode{false, r}; }
};

/// Concept value <0| U^dag O U |0> with U = exp(i tau H(x, alpha)) (exact)
/// or its r-step first-order product formula.
inline double eval_dynamics(const ParamHamiltonian& h, const Observable& obs,
                            const std::vector<bool>& x, std::span<const double> alpha,
                            const EvalMode& mode) {
  if (mode.exact) {
    const Eigen::MatrixXcd m = dense_hamiltonian(h, x, alpha);
    const StateVector evolved = exact_evolution(m, h.tau, StateVector(h.n));
    return expectation(evolved, obs);
  }
  const ParametrizedCircuit c = trotterize(h, x, mode.r);
  std::vector<double> a(alpha.begin(), alpha.end());
  a.resize(std::max<size_t>(c.d, a.size()), 0.0);
  return eval_concept(c, obs, std::span<const double>(a.data(), c.d));
}

}  // namespace fouriq

#endif  // FOURIQ_HAMILTONIAN_HPP
