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

#ifndef FOURIQ_COMPILE_HPP
#define FOURIQ_COMPILE_HPP

#include <Eigen/Dense>
#include <variant>
#include <vector>

#include "fouriq/circuit.hpp"
#include "fouriq/common.hpp"
#include "fouriq/lattice.hpp"
#include "fouriq/observable.hpp"
#include "fouriq/statevector.hpp"

namespace fouriq {

// ---------------------------------------------------------------------------
// Register layout
//
// Compiled circuits act on | f_0 ... f_{d-1} | a | aux | c |, in that qubit
// order. Each frequency register f_s stores a signed winding number in
// two's complement on ceil(log2(2 K_s + 1)) qubits, where K_s is the lattice
// bound for dimension s. The winding of reachable amplitudes never exceeds
// K_s, so the modular wrap of the shift gates is never exercised; it exists
// to keep the shifts unitary on the full register space.
// ---------------------------------------------------------------------------

struct FreqRegister {
  int offset = 0;  // first qubit of the register (most significant bit)
  int qubits = 0;
  long capacity = 0;  // K_s
};

struct RegisterLayout {
  int d = 0;
  std::vector<FreqRegister> freq;
  int ancilla = 0;
  int aux_offset = 0, aux_qubits = 0;
  int circuit_offset = 0, circuit_qubits = 0;
  int total = 0;

  /// Amplitude-index contribution of register value `v` on qubits
  /// [offset, offset + width): the value occupies a contiguous bit span with
  /// its least significant bit at global bit (total - offset - width).
  long register_bits(int offset, int width, long v) const {
    const long mask = (1L << width) - 1;
    return (v & mask) << (total - offset - width);
  }

  /// Index of |l>_f |0>_a |0>_aux |k>_c.
  long index_of(const std::vector<long>& l, long k = 0) const {
    long idx = 0;
    for (int s = 0; s < d; ++s)
      if (freq[s].qubits > 0) idx |= register_bits(freq[s].offset, freq[s].qubits, l[s]);
    idx |= register_bits(circuit_offset, circuit_qubits, k);
    return idx;
  }
};

// ---------------------------------------------------------------------------
// Compiled gate set
// ---------------------------------------------------------------------------

struct DenseCompiledGate {
  Eigen::MatrixXcd mat;
  std::vector<int> targets;
};

/// Cyclic +-1 shift of frequency register `dim`, modulo its register size.
struct ShiftGate {
  int dim = 0;
  int delta = +1;
};

/// Scalar phase applied to the control-matching subspace.
struct PhaseGate {
  cplx phase{1, 0};
};

struct CompiledGate {
  std::variant<DenseCompiledGate, ShiftGate, PhaseGate> op;
  std::vector<Control> controls;
};

enum class CompiledKind { StatePrep, ExpectationPauli, ExpectationLCU, ExpectationProjector };

/// Output of the rewriting algorithm: a parameter-free circuit over the
/// layout registers whose all-zero-input amplitudes encode Fourier data.
struct CompiledFourierCircuit {
  RegisterLayout layout;
  std::vector<CompiledGate> gates;
  CompiledKind kind = CompiledKind::StatePrep;
  FrequencyLattice lattice;
  double base = kPi;           // phase base frequency of the represented series
  double amplitude_scale = 1;  // extracted amplitude times this equals b_l
  int source_qubits = 0;       // n of the original circuit

  bool is_expectation() const { return kind != CompiledKind::StatePrep; }
};

// ---------------------------------------------------------------------------
// Compiled-gate simulation
// ---------------------------------------------------------------------------

inline void apply_compiled_gate(StateVector& st, const RegisterLayout& lay, const CompiledGate& g,
                                std::span<const Control> extra = {}) {
  std::vector<Control> controls(g.controls);
  controls.insert(controls.end(), extra.begin(), extra.end());
  if (const auto* dense = std::get_if<DenseCompiledGate>(&g.op)) {
    apply_dense(st, dense->mat, dense->targets, controls);
    return;
  }
  if (const auto* phase = std::get_if<PhaseGate>(&g.op)) {
    const auto [cmask, cval] = detail::control_mask(st, controls);
    for (long i = 0; i < st.dim(); ++i)
      if ((i & cmask) == cval) st.amps[i] *= phase->phase;
    return;
  }
  const auto& shift = std::get<ShiftGate>(g.op);
  const FreqRegister& reg = lay.freq[shift.dim];
  const int w = reg.qubits;
  if (w == 0) return;
  const long period = 1L << w;
  const int lsb_shift = st.n - reg.offset - w;
  const long regmask = (period - 1) << lsb_shift;
  const auto [cmask, cval] = detail::control_mask(st, controls);
  for (long base = 0; base < st.dim(); ++base) {
    if (base & regmask) continue;
    if ((base & cmask) != cval) continue;
    auto idx = [&](long v) { return base | (v << lsb_shift); };
    if (shift.delta > 0) {
      const cplx saved = st.amps[idx(period - 1)];
      for (long v = period - 1; v >= 1; --v) st.amps[idx(v)] = st.amps[idx(v - 1)];
      st.amps[idx(0)] = saved;
    } else {
      const cplx saved = st.amps[idx(0)];
      for (long v = 0; v + 1 < period; ++v) st.amps[idx(v)] = st.amps[idx(v + 1)];
      st.amps[idx(period - 1)] = saved;
    }
  }
}

/// Runs the compiled circuit from |0...0>, optionally on a state extended by
/// `extra_qubits` trailing qubits with every gate further conditioned on
/// `extra` (used for Hadamard tests).
inline StateVector run_compiled(const CompiledFourierCircuit& cc, std::span<const Control> extra = {},
                                int extra_qubits = 0) {
  StateVector st(cc.layout.total + extra_qubits);
  for (const auto& g : cc.gates) apply_compiled_gate(st, cc.layout, g, extra);
  return st;
}

inline void apply_compiled(StateVector& st, const CompiledFourierCircuit& cc,
                           std::span<const Control> extra = {}) {
  for (const auto& g : cc.gates) apply_compiled_gate(st, cc.layout, g, extra);
}

// ---------------------------------------------------------------------------
// Compilation
// ---------------------------------------------------------------------------

namespace detail {

inline RegisterLayout make_layout(const std::vector<long>& counts, int capacity_multiplier,
                                  int circuit_qubits, int aux_qubits, const Budget& budget) {
  RegisterLayout lay;
  lay.d = static_cast<int>(counts.size());
  int q = 0;
  for (long ls : counts) {
    FreqRegister reg;
    reg.capacity = capacity_multiplier * ls;
    reg.qubits = reg.capacity == 0 ? 0 : ceil_log2(2 * reg.capacity + 1);
    reg.offset = q;
    q += reg.qubits;
    lay.freq.push_back(reg);
  }
  lay.ancilla = q++;
  lay.aux_offset = q;
  lay.aux_qubits = aux_qubits;
  q += aux_qubits;
  lay.circuit_offset = q;
  lay.circuit_qubits = circuit_qubits;
  lay.total = q + circuit_qubits;
  if (lay.total > budget.max_total_qubits)
    throw BudgetError("compiled circuit needs " + std::to_string(lay.total) +
                      " qubits, budget allows " + std::to_string(budget.max_total_qubits));
  return lay;
}

/// Emits the rewritten gate sequence of a Z-normalized circuit onto the
/// circuit register copy starting at `copy_offset`. Fixed gates pass through;
/// an encoding gate becomes parity fan-in D, a winding shift conditioned on
/// the parity (even parity raises the frequency, odd lowers it), and D again
/// to restore the ancilla. `direction` = -1 emits the conjugated circuit's
/// encodings (used for the U* copy of the projector construction).
inline void emit_forward(std::vector<CompiledGate>& out, const ParametrizedCircuit& cz,
                         const RegisterLayout& lay, int copy_offset, int direction,
                         bool conjugate_fixed) {
  const Eigen::Matrix2cd x = pauli_matrix(Pauli::X);
  for (const auto& g : cz.gates) {
    if (const auto* fixed = std::get_if<FixedGate>(&g)) {
      DenseCompiledGate dg;
      dg.mat = conjugate_fixed ? fixed->unitary.conjugate() : fixed->unitary;
      for (int t : fixed->targets) dg.targets.push_back(copy_offset + t);
      out.push_back({std::move(dg), {}});
      continue;
    }
    const auto& enc = std::get<EncodeGate>(g);
    const std::vector<int> support = enc.pauli.support();
    auto emit_parity = [&] {
      for (int qq : support)
        out.push_back({DenseCompiledGate{x, {lay.ancilla}}, {Control{copy_offset + qq, true}}});
    };
    emit_parity();
    out.push_back({ShiftGate{enc.param, direction}, {Control{lay.ancilla, false}}});
    out.push_back({ShiftGate{enc.param, -direction}, {Control{lay.ancilla, true}}});
    emit_parity();
  }
}

inline CompiledGate invert(const CompiledGate& g) {
  CompiledGate inv;
  inv.controls = g.controls;
  if (const auto* dense = std::get_if<DenseCompiledGate>(&g.op))
    inv.op = DenseCompiledGate{dense->mat.adjoint(), dense->targets};
  else if (const auto* shift = std::get_if<ShiftGate>(&g.op))
    inv.op = ShiftGate{shift->dim, -shift->delta};
  else
    inv.op = PhaseGate{std::conj(std::get<PhaseGate>(g.op).phase)};
  return inv;
}

inline std::vector<CompiledGate> inverse_sequence(const std::vector<CompiledGate>& gates) {
  std::vector<CompiledGate> out;
  out.reserve(gates.size());
  for (auto it = gates.rbegin(); it != gates.rend(); ++it) out.push_back(invert(*it));
  return out;
}

/// Completes a unit vector to a unitary whose first column is that vector.
inline Eigen::MatrixXcd state_prep_unitary(const Eigen::VectorXcd& column) {
  const Eigen::Index dim = column.size();
  Eigen::MatrixXcd u(dim, dim);
  u.col(0) = column;
  Eigen::Index filled = 1;
  for (Eigen::Index e = 0; e < dim && filled < dim; ++e) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    v[e] = 1;
    for (Eigen::Index j = 0; j < filled; ++j) v -= u.col(j).dot(v) * u.col(j);
    const double nv = v.norm();
    if (nv > 1e-8) u.col(filled++) = v / nv;
  }
  if (filled != dim) throw std::runtime_error("state preparation completion failed");
  return u;
}

/// Gates applying one Pauli string to the circuit register, letter by
/// letter, under shared controls. A negative sign enters as a phase gate.
inline void emit_pauli_apply(std::vector<CompiledGate>& out, const PauliString& p, int copy_offset,
                             std::vector<Control> controls, bool negate) {
  for (int q = 0; q < p.n; ++q)
    if (p.letters[q] != Pauli::I)
      out.push_back({DenseCompiledGate{pauli_matrix(p.letters[q]), {copy_offset + q}}, controls});
  if (negate) out.push_back({PhaseGate{cplx{-1, 0}}, controls});
}

}  // namespace detail

/// Rewrites a Pauli-encoded circuit into the frequency-register form: the
/// output prepares sum_{l,k} a_{l,k} |l>_f |0>_a |k>_c where the original
/// circuit prepares sum a_{l,k} e^{i w alpha.l} |k> (w = encode scale).
inline CompiledFourierCircuit compile_state(const ParametrizedCircuit& circuit,
                                            const Budget& budget = Budget{}) {
  require_valid(circuit);
  const ParametrizedCircuit cz = normalize_to_z(circuit);
  const std::vector<long> counts = upload_counts(cz);
  CompiledFourierCircuit cc;
  cc.layout = detail::make_layout(counts, 1, cz.n, 0, budget);
  detail::emit_forward(cc.gates, cz, cc.layout, cc.layout.circuit_offset, +1, false);
  cc.kind = CompiledKind::StatePrep;
  cc.lattice = lattice(cz, LatticeKind::State);
  cc.base = encode_scale(cz);
  cc.amplitude_scale = 1;
  cc.source_qubits = cz.n;
  return cc;
}

/// Rewrites the sandwich U^dag(alpha) O U(alpha) |0> so that the amplitude of
/// |l>_f |0 elsewhere> equals b_l / amplitude_scale, where f(alpha) =
/// <0|U^dag O U|0> = sum_l b_l e^{i w alpha.l}.
///
/// Pauli observables insert the string between the forward and inverted
/// passes. Combinations go through a select-register construction preparing
/// sqrt(|beta_h| / ||beta||_1) amplitudes with signs folded into the selected
/// strings, which scales the encoded coefficients by 1 / ||beta||_1. The
/// zero projector runs the circuit and its conjugate on two register copies.
inline CompiledFourierCircuit compile_expectation(const ParametrizedCircuit& circuit,
                                                  const Observable& obs,
                                                  const Budget& budget = Budget{}) {
  require_valid(circuit);
  if (!std::holds_alternative<ZeroProjectorObs>(obs)) check_observable(obs, circuit.n);
  const ParametrizedCircuit cz = normalize_to_z(circuit);
  const std::vector<long> counts = upload_counts(cz);
  CompiledFourierCircuit cc;
  cc.lattice = lattice(cz, LatticeKind::Expectation);
  cc.base = encode_scale(cz);
  cc.source_qubits = cz.n;

  if (std::holds_alternative<ZeroProjectorObs>(obs)) {
    cc.kind = CompiledKind::ExpectationProjector;
    cc.layout = detail::make_layout(counts, 2, 2 * cz.n, 0, budget);
    detail::emit_forward(cc.gates, cz, cc.layout, cc.layout.circuit_offset, +1, false);
    detail::emit_forward(cc.gates, cz, cc.layout, cc.layout.circuit_offset + cz.n, -1, true);
    cc.amplitude_scale = 1;
    return cc;
  }

  const auto* comb = std::get_if<CombinationObs>(&obs);
  const bool lcu = comb != nullptr && comb->terms.size() > 1;
  int aux = 0;
  if (lcu) aux = std::max(1, ceil_log2(static_cast<long>(comb->terms.size())));
  cc.layout = detail::make_layout(counts, 2, cz.n, aux, budget);

  std::vector<CompiledGate> forward;
  detail::emit_forward(forward, cz, cc.layout, cc.layout.circuit_offset, +1, false);
  cc.gates = forward;

  if (const auto* pauli = std::get_if<PauliObs>(&obs)) {
    cc.kind = CompiledKind::ExpectationPauli;
    detail::emit_pauli_apply(cc.gates, pauli->p, cc.layout.circuit_offset, {}, false);
    cc.amplitude_scale = 1;
  } else if (!lcu) {
    // Single-term combination: fold |beta| into the scale, sign into a phase.
    cc.kind = CompiledKind::ExpectationLCU;
    const auto& [beta, p] = comb->terms.front();
    detail::emit_pauli_apply(cc.gates, p, cc.layout.circuit_offset, {}, beta < 0);
    cc.amplitude_scale = std::abs(beta);
  } else {
    cc.kind = CompiledKind::ExpectationLCU;
    const double l1 = comb->beta_l1();
    const long hdim = 1L << aux;
    Eigen::VectorXcd prep = Eigen::VectorXcd::Zero(hdim);
    for (size_t h = 0; h < comb->terms.size(); ++h)
      prep[static_cast<Eigen::Index>(h)] = std::sqrt(std::abs(comb->terms[h].first) / l1);
    const Eigen::MatrixXcd vb = detail::state_prep_unitary(prep);
    std::vector<int> aux_targets;
    for (int q = 0; q < aux; ++q) aux_targets.push_back(cc.layout.aux_offset + q);
    cc.gates.push_back({DenseCompiledGate{vb, aux_targets}, {}});
    for (size_t h = 0; h < comb->terms.size(); ++h) {
      const auto& [beta, p] = comb->terms[h];
      if (beta == 0) continue;
      std::vector<Control> sel;
      for (int q = 0; q < aux; ++q)
        sel.push_back(Control{cc.layout.aux_offset + q, ((h >> (aux - 1 - q)) & 1) != 0});
      detail::emit_pauli_apply(cc.gates, p, cc.layout.circuit_offset, sel, beta < 0);
    }
    cc.gates.push_back({DenseCompiledGate{vb.adjoint(), aux_targets}, {}});
    cc.amplitude_scale = l1;
  }

  const std::vector<CompiledGate> inv = detail::inverse_sequence(forward);
  cc.gates.insert(cc.gates.end(), inv.begin(), inv.end());
  return cc;
}

/// Probability of finding the ancilla, select, and circuit registers all
/// zero, rescaled by amplitude_scale^2: equals sum_l |b_l|^2.
inline double success_probability(const CompiledFourierCircuit& cc) {
  if (!cc.is_expectation())
    throw std::invalid_argument("success_probability requires an expectation-kind compilation");
  const StateVector st = run_compiled(cc);
  double p = 0;
  for (long i = 0; i < cc.lattice.size(); ++i)
    p += std::norm(st.amps[cc.layout.index_of(cc.lattice.point(i))]);
  return p * cc.amplitude_scale * cc.amplitude_scale;
}

/// Gate and qubit tallies of a compilation (informational).
struct CompiledStats {
  int total_qubits = 0;
  int frequency_qubits = 0;
  long gate_count = 0;
};

inline CompiledStats compiled_stats(const CompiledFourierCircuit& cc) {
  CompiledStats s;
  s.total_qubits = cc.layout.total;
  for (const auto& f : cc.layout.freq) s.frequency_qubits += f.qubits;
  s.gate_count = static_cast<long>(cc.gates.size());
  return s;
}

}  // namespace fouriq

#endif  // FOURIQ_COMPILE_HPP
