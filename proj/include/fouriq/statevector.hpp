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

#ifndef FOURIQ_STATEVECTOR_HPP
#define FOURIQ_STATEVECTOR_HPP

#include <Eigen/Dense>
#include <cmath>
#include <span>
#include <vector>

#include "fouriq/circuit.hpp"
#include "fouriq/common.hpp"
#include "fouriq/observable.hpp"

namespace fouriq {

/// Control condition on one qubit: the gate fires only on amplitudes whose
/// `qubit` bit equals `value`.
struct Control {
  int qubit;
  bool value;
};

/// Dense amplitudes over n qubits. Qubit 0 is the most significant bit of
/// the amplitude index throughout the library.
struct StateVector {
  int n = 0;
  std::vector<cplx> amps;
  bool flagged_zero = false;  // set when a post-selection had probability 0

  StateVector() = default;
  explicit StateVector(int n_) : n(n_), amps(checked_pow2(n_), cplx{0, 0}) { amps[0] = 1.0; }

  static StateVector zero_state(int n) { return StateVector(n); }

  long dim() const { return static_cast<long>(amps.size()); }

  /// Bit of `qubit` inside amplitude index `idx`.
  bool bit(long idx, int qubit) const { return (idx >> (n - 1 - qubit)) & 1L; }

  double norm_sq() const {
    double s = 0;
    for (const cplx& a : amps) s += std::norm(a);
    return s;
  }
};

namespace detail {

inline std::pair<long, long> control_mask(const StateVector& st, std::span<const Control> controls) {
  long mask = 0, value = 0;
  for (const Control& c : controls) {
    const long bit = 1L << (st.n - 1 - c.qubit);
    mask |= bit;
    if (c.value) value |= bit;
  }
  return {mask, value};
}

}  // namespace detail

/// Applies a dense 2^k x 2^k matrix to `targets` (targets[0] = most
/// significant bit of the local index), restricted to amplitudes matching
/// `controls`. Targets and control qubits must be disjoint.
inline void apply_dense(StateVector& st, const Eigen::MatrixXcd& mat, std::span<const int> targets,
                        std::span<const Control> controls = {}) {
  const int k = static_cast<int>(targets.size());
  const long sub = 1L << k;
  std::vector<long> tbit(k);
  long tmask = 0;
  for (int i = 0; i < k; ++i) {
    tbit[i] = 1L << (st.n - 1 - targets[i]);
    tmask |= tbit[i];
  }
  const auto [cmask, cval] = detail::control_mask(st, controls);
  std::vector<cplx> in(sub), out(sub);
  for (long base = 0; base < st.dim(); ++base) {
    if (base & tmask) continue;                  // visit each class once
    if ((base & cmask) != cval) continue;        // controls not satisfied
    for (long j = 0; j < sub; ++j) {
      long idx = base;
      for (int b = 0; b < k; ++b)
        if ((j >> (k - 1 - b)) & 1L) idx |= tbit[b];
      in[j] = st.amps[idx];
    }
    for (long i = 0; i < sub; ++i) {
      cplx acc{0, 0};
      for (long j = 0; j < sub; ++j) acc += mat(i, j) * in[j];
      out[i] = acc;
    }
    for (long j = 0; j < sub; ++j) {
      long idx = base;
      for (int b = 0; b < k; ++b)
        if ((j >> (k - 1 - b)) & 1L) idx |= tbit[b];
      st.amps[idx] = out[j];
    }
  }
}

/// Diagonal phase e^{i theta p} per amplitude, where p = +-1 is the Z-string
/// eigenvalue of the amplitude's basis state on `pauli`'s support. This is
/// the action of an encoding gate exp(i theta P) for a Z/I Pauli string.
inline void apply_zstring_phase(StateVector& st, const PauliString& pauli, double theta,
                                std::span<const Control> controls = {}) {
  long pmask = 0;
  for (int q = 0; q < pauli.n; ++q)
    if (pauli.letters[q] == Pauli::Z) pmask |= 1L << (st.n - 1 - q);
  const auto [cmask, cval] = detail::control_mask(st, controls);
  const cplx plus = std::polar(1.0, theta), minus = std::polar(1.0, -theta);
  for (long i = 0; i < st.dim(); ++i) {
    if ((i & cmask) != cval) continue;
    const bool odd = __builtin_parityl(i & pmask);
    st.amps[i] *= odd ? minus : plus;
  }
}

/// Applies one circuit gate at parameter vector `alpha`.
inline void apply_gate(StateVector& st, const GateSpec& gate, std::span<const double> alpha,
                       std::span<const Control> controls = {}) {
  if (const auto* fixed = std::get_if<FixedGate>(&gate)) {
    apply_dense(st, fixed->unitary, fixed->targets, controls);
    return;
  }
  const auto& enc = std::get<EncodeGate>(gate);
  const double theta = enc.scale * alpha[enc.param];
  if (enc.pauli.support().empty()) {
    // Identity-string encoding: a global phase (controlled if requested).
    apply_zstring_phase(st, enc.pauli, theta, controls);
    return;
  }
  // Reduce X/Y letters on the fly so callers need not pre-normalize.
  PauliString zs = enc.pauli;
  std::vector<FixedGate> pre;
  const Eigen::Matrix2cd v = y_basis_gate();
  for (int q = 0; q < zs.n; ++q) {
    if (zs.letters[q] == Pauli::X) {
      pre.push_back(make_named_gate("H", {q}));
      zs.letters[q] = Pauli::Z;
    } else if (zs.letters[q] == Pauli::Y) {
      pre.push_back(FixedGate{v, {q}, ""});
      zs.letters[q] = Pauli::Z;
    }
  }
  for (const auto& p : pre) apply_dense(st, p.unitary, p.targets, controls);
  apply_zstring_phase(st, zs, theta, controls);
  for (auto it = pre.rbegin(); it != pre.rend(); ++it)
    apply_dense(st, it->unitary.adjoint(), it->targets, controls);
}

/// Runs the circuit on |0...0>.
inline StateVector run(const ParametrizedCircuit& c, std::span<const double> alpha) {
  require_valid(c);
  if (static_cast<int>(alpha.size()) != c.d)
    throw std::invalid_argument("alpha length does not match parameter count");
  for (double a : alpha)
    if (!std::isfinite(a)) throw std::invalid_argument("alpha must be finite");
  StateVector st(c.n);
  for (const auto& g : c.gates) apply_gate(st, g, alpha);
  return st;
}

/// Applies the whole circuit to an existing state, conditioned on a control
/// qubit outside the circuit's register (block-diagonal action).
inline void controlled_apply(StateVector& st, const ParametrizedCircuit& c,
                             std::span<const double> alpha, int control,
                             std::span<const int> register_map = {}) {
  require_valid(c);
  std::vector<int> map(register_map.begin(), register_map.end());
  if (map.empty())
    for (int q = 0; q < c.n; ++q) map.push_back(q);
  for (int q : map)
    if (q == control) throw std::invalid_argument("control qubit overlaps circuit register");
  const Control ctl{control, true};
  for (const auto& g : c.gates) {
    if (const auto* fixed = std::get_if<FixedGate>(&g)) {
      std::vector<int> targets;
      for (int t : fixed->targets) targets.push_back(map[t]);
      apply_dense(st, fixed->unitary, targets, {&ctl, 1});
    } else {
      EncodeGate enc = std::get<EncodeGate>(g);
      PauliString mapped = PauliString::identity(st.n);
      for (int q = 0; q < enc.pauli.n; ++q) mapped.letters[map[q]] = enc.pauli.letters[q];
      enc.pauli = mapped;
      GateSpec gs = enc;
      apply_gate(st, gs, alpha, {&ctl, 1});
    }
  }
}

/// <state|P|state> for a Pauli string, computed without building a matrix.
inline double pauli_expectation(const StateVector& st, const PauliString& p) {
  if (p.n != st.n) throw std::invalid_argument("observable qubit count mismatch");
  long xmask = 0, zmask = 0;
  int ycount = 0;
  for (int q = 0; q < p.n; ++q) {
    const long bit = 1L << (st.n - 1 - q);
    switch (p.letters[q]) {
      case Pauli::I: break;
      case Pauli::X: xmask |= bit; break;
      case Pauli::Y: xmask |= bit; zmask |= bit; ++ycount; break;
      case Pauli::Z: zmask |= bit; break;
    }
  }
  // P|i> = phase(i) |i ^ xmask> with phase from Z letters and the Y factors:
  // Y = i X Z contributes i * (-1)^bit per Y letter.
  static constexpr cplx kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const cplx ybase = kIPow[ycount % 4];
  cplx acc{0, 0};
  for (long i = 0; i < st.dim(); ++i) {
    const cplx phase = __builtin_parityl(i & zmask) ? -ybase : ybase;
    acc += std::conj(st.amps[i ^ xmask]) * phase * st.amps[i];
  }
  return acc.real();
}

inline double expectation(const StateVector& st, const Observable& obs) {
  if (const auto* p = std::get_if<PauliObs>(&obs)) return pauli_expectation(st, p->p);
  if (const auto* c = std::get_if<CombinationObs>(&obs)) {
    check_observable(obs, st.n);
    double s = 0;
    for (const auto& [b, pauli] : c->terms) s += b * pauli_expectation(st, pauli);
    return s;
  }
  return std::norm(st.amps[0]);
}

/// The circuit function value f(alpha) = <0|U^dag(alpha) O U(alpha)|0>.
inline double eval_concept(const ParametrizedCircuit& c, const Observable& obs,
                           std::span<const double> alpha) {
  if (!std::holds_alternative<ZeroProjectorObs>(obs)) check_observable(obs, c.n);
  return expectation(run(c, alpha), obs);
}

struct PostselectResult {
  StateVector state;
  double probability = 0;
};

/// Projects `register_qubits` onto the bits of `value` and renormalizes.
/// Probability 0 returns a flagged all-zero state.
inline PostselectResult postselect(const StateVector& st, const std::vector<int>& register_qubits,
                                   const std::vector<bool>& value) {
  if (register_qubits.size() != value.size())
    throw std::invalid_argument("postselect register and value lengths differ");
  long mask = 0, want = 0;
  for (size_t i = 0; i < register_qubits.size(); ++i) {
    const int q = register_qubits[i];
    if (q < 0 || q >= st.n) throw std::invalid_argument("postselect qubit out of range");
    const long bit = 1L << (st.n - 1 - q);
    mask |= bit;
    if (value[i]) want |= bit;
  }
  PostselectResult out;
  out.state.n = st.n;
  out.state.amps.assign(st.dim(), cplx{0, 0});
  double p = 0;
  for (long i = 0; i < st.dim(); ++i) {
    if ((i & mask) != want) continue;
    out.state.amps[i] = st.amps[i];
    p += std::norm(st.amps[i]);
  }
  out.probability = p;
  if (p <= 0) {
    out.state = StateVector(st.n);
    out.state.flagged_zero = true;
    out.probability = 0;
    return out;
  }
  const double inv = 1.0 / std::sqrt(p);
  for (cplx& a : out.state.amps) a *= inv;
  return out;
}

/// Debug dump of the amplitudes, one "index,re,im" row per entry.
inline std::string amplitudes_csv(const StateVector& st) {
  std::string out = "index,re,im\n";
  char buf[80];
  for (long i = 0; i < st.dim(); ++i) {
    std::snprintf(buf, sizeof buf, "%ld,%.17g,%.17g\n", i, st.amps[i].real(), st.amps[i].imag());
    out += buf;
  }
  return out;
}

/// exp(i tau H) |initial> by dense eigendecomposition; H must be Hermitian.
inline StateVector exact_evolution(const Eigen::MatrixXcd& h, double tau, const StateVector& initial) {
  if (h.rows() != h.cols() || h.rows() != initial.dim())
    throw std::invalid_argument("hamiltonian dimension mismatch");
  if ((h - h.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol)
    throw std::invalid_argument("hamiltonian is not Hermitian");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  Eigen::VectorXcd v = Eigen::Map<const Eigen::VectorXcd>(initial.amps.data(), initial.dim());
  Eigen::VectorXcd w = es.eigenvectors().adjoint() * v;
  for (Eigen::Index i = 0; i < w.size(); ++i)
    w[i] *= std::polar(1.0, tau * es.eigenvalues()[i]);
  v = es.eigenvectors() * w;
  StateVector out;
  out.n = initial.n;
  out.amps.assign(v.data(), v.data() + v.size());
  return out;
}

}  // namespace fouriq

#endif  // FOURIQ_STATEVECTOR_HPP
