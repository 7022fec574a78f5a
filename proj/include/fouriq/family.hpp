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

#ifndef FOURIQ_FAMILY_HPP
#define FOURIQ_FAMILY_HPP

#include <variant>
#include <vector>

#include "fouriq/circuit.hpp"
#include "fouriq/common.hpp"
#include "fouriq/extract.hpp"
#include "fouriq/hamiltonian.hpp"
#include "fouriq/lattice.hpp"
#include "fouriq/observable.hpp"

namespace fouriq {

/// A template gate optionally conditioned on one input bit: when `bit` is
/// nonnegative the gate is present iff x[bit] is set. Only fixed gates may
/// be conditioned, so the frequency lattice is the same for every input.
struct TemplateGate {
  GateSpec gate;
  int bit = -1;
};

/// PQC concept family: the bitstring x selects fixed gates of a circuit
/// template; the hidden parameters alpha enter through encoding gates.
struct CircuitTemplate {
  int n = 0;
  int d = 0;
  int input_bits = 0;
  std::vector<TemplateGate> gates;

  void check() const {
    for (const auto& tg : gates) {
      if (tg.bit >= input_bits) throw std::invalid_argument("template bit index out of range");
      if (tg.bit >= 0 && std::holds_alternative<EncodeGate>(tg.gate))
        throw std::invalid_argument("only fixed gates may be input-conditioned");
    }
  }

  ParametrizedCircuit instance(const std::vector<bool>& x) const {
    if (static_cast<int>(x.size()) != input_bits)
      throw std::invalid_argument("input bitstring length mismatch");
    ParametrizedCircuit c;
    c.n = n;
    c.d = d;
    for (const auto& tg : gates)
      if (tg.bit < 0 || x[tg.bit]) c.gates.push_back(tg.gate);
    return c;
  }
};

/// Hamiltonian-dynamics concept family: labels come from the exact time
/// evolution of H(x, alpha); the hypothesis circuit is its r-step
/// Trotterization, whose label error is bounded by tau^2 A / (2r).
struct HamiltonianConcept {
  ParamHamiltonian h;
  long r = 1;

  ParametrizedCircuit instance(const std::vector<bool>& x) const { return trotterize(h, x, r); }
};

struct ConceptFamily {
  std::variant<CircuitTemplate, HamiltonianConcept> source;
  Observable obs;

  int input_bits() const {
    if (const auto* t = std::get_if<CircuitTemplate>(&source)) return t->input_bits;
    return std::get<HamiltonianConcept>(source).h.input_bits();
  }

  int param_count() const {
    if (const auto* t = std::get_if<CircuitTemplate>(&source)) return t->d;
    return std::get<HamiltonianConcept>(source).h.param_count();
  }

  ParametrizedCircuit instance(const std::vector<bool>& x) const {
    if (const auto* t = std::get_if<CircuitTemplate>(&source)) return t->instance(x);
    return std::get<HamiltonianConcept>(source).instance(x);
  }

  /// True concept value: plain circuit evaluation for templates, exact
  /// matrix-exponential dynamics for Hamiltonian families.
  double concept_value(const std::vector<bool>& x, std::span<const double> alpha) const {
    if (const auto* t = std::get_if<CircuitTemplate>(&source))
      return eval_concept(t->instance(x), obs, alpha);
    const auto& hc = std::get<HamiltonianConcept>(source);
    return eval_dynamics(hc.h, obs, x, alpha, EvalMode::Exact());
  }

  /// Value of the hypothesis circuit (the Fourier side of the pipeline).
  double hypothesis_value(const std::vector<bool>& x, std::span<const double> alpha) const {
    return eval_concept(instance(x), obs, alpha);
  }

  /// Label error of the hypothesis class against the true concept: 0 for
  /// templates, the Trotter bound for Hamiltonian families.
  double label_error_bound() const {
    if (std::holds_alternative<CircuitTemplate>(source)) return 0.0;
    const auto& hc = std::get<HamiltonianConcept>(source);
    const double a = commutator_bound(hc.h);
    return hc.h.tau * hc.h.tau * a / (2.0 * static_cast<double>(hc.r));
  }

  /// Expectation lattice of the feature map; identical for every input.
  FrequencyLattice feature_lattice() const {
    return lattice(instance(std::vector<bool>(input_bits(), false)), LatticeKind::Expectation);
  }

  double feature_base() const {
    return encode_scale(instance(std::vector<bool>(input_bits(), false)));
  }

  FourierTable features(const std::vector<bool>& x, const ExtractMode& mode,
                        const Budget& budget = Budget{}) const {
    return extract_table(instance(x), obs, mode, budget);
  }
};

// ---------------------------------------------------------------------------
// Kernel overlaps Re<b(x)|b(x')>
// ---------------------------------------------------------------------------

struct GramMode {
  bool exact = true;
  long shots = 0;
  uint64_t seed = 0;

  static GramMode Exact() { return GramMode{}; }
  static GramMode Shots(long shots, uint64_t seed) { return GramMode{false, shots, seed}; }
};

namespace detail {

/// Exact outcome probabilities of the overlap circuit: a control in |+>
/// branch-selects the compiled circuit of x versus x', a closing Hadamard
/// interferes them, and the readout is the control Z value post-selected on
/// the non-frequency registers being all zero. Returns (p_plus, p_minus)
/// with p_plus - p_minus = Re<b(x)|b(x')> / scale^2.
inline std::pair<double, double> overlap_outcome_probs(const CompiledFourierCircuit& ca,
                                                       const CompiledFourierCircuit& cb) {
  if (!(ca.lattice == cb.lattice))
    throw std::invalid_argument("overlap requires instances of one circuit family");
  const int ctrl = ca.layout.total;
  StateVector st(ca.layout.total + 1);
  const Eigen::MatrixXcd h = named_gate_matrix("H");
  apply_dense(st, h, std::vector<int>{ctrl});
  const Control on{ctrl, true}, off{ctrl, false};
  for (const auto& g : ca.gates) apply_compiled_gate(st, ca.layout, g, {&on, 1});
  for (const auto& g : cb.gates) apply_compiled_gate(st, cb.layout, g, {&off, 1});
  apply_dense(st, h, std::vector<int>{ctrl});
  // Post-selection mask: every qubit except the control and the frequency
  // registers must read zero.
  double p_plus = 0, p_minus = 0;
  const int first_non_freq = ca.layout.ancilla;
  for (long i = 0; i < st.dim(); ++i) {
    const bool ctrl_one = i & 1L;  // control is the last qubit
    // bits of qubits [first_non_freq, total) must be zero
    const long rest = (i >> 1) & ((1L << (ca.layout.total - first_non_freq)) - 1);
    if (rest != 0) continue;
    if (ctrl_one) p_minus += std::norm(st.amps[i]);
    else p_plus += std::norm(st.amps[i]);
  }
  return {p_plus, p_minus};
}

}  // namespace detail

/// Kernel entry Re<b(x)|b(x')>. Exact mode computes it from the two exact
/// coefficient tables; shot mode samples the overlap-circuit observable.
inline double gram_entry(const ConceptFamily& family, const std::vector<bool>& x,
                         const std::vector<bool>& x_prime, const GramMode& mode,
                         const Budget& budget = Budget{}) {
  if (mode.exact) {
    const FourierTable ta = family.features(x, ExtractMode::Exact(), budget);
    const FourierTable tb = family.features(x_prime, ExtractMode::Exact(), budget);
    cplx acc{0, 0};
    for (long i = 0; i < ta.lattice.size(); ++i) acc += std::conj(ta.coeffs[i]) * tb.coeffs[i];
    return acc.real();
  }
  const CompiledFourierCircuit ca = compile_expectation(family.instance(x), family.obs, budget);
  const CompiledFourierCircuit cb = compile_expectation(family.instance(x_prime), family.obs, budget);
  const auto [p_plus, p_minus] = detail::overlap_outcome_probs(ca, cb);
  const double scale2 = ca.amplitude_scale * ca.amplitude_scale;
  return scale2 * sample_signed_mean(p_plus, p_minus, mode.shots, make_stream(mode.seed, 0x6f76ULL));
}

/// Symmetric T x T Gram matrix over the given inputs; pair (i, j) draws from
/// its own stream so assembly order does not matter.
inline Eigen::MatrixXd gram_matrix(const ConceptFamily& family,
                                   const std::vector<std::vector<bool>>& inputs, const GramMode& mode,
                                   const Budget& budget = Budget{}) {
  const long t = static_cast<long>(inputs.size());
  Eigen::MatrixXd k(t, t);
  std::vector<FourierTable> cache;
  if (mode.exact) {
    cache.reserve(t);
    for (const auto& x : inputs) cache.push_back(family.features(x, ExtractMode::Exact(), budget));
  }
  for (long i = 0; i < t; ++i)
    for (long j = i; j < t; ++j) {
      double v;
      if (mode.exact) {
        cplx acc{0, 0};
        for (long q = 0; q < cache[i].lattice.size(); ++q)
          acc += std::conj(cache[i].coeffs[q]) * cache[j].coeffs[q];
        v = acc.real();
      } else {
        GramMode pair = mode;
        pair.seed = mix64(mode.seed ^ mix64(0x6b65726eULL + static_cast<uint64_t>(i) * 0x1f123bb5ULL +
                                            static_cast<uint64_t>(j)));
        v = gram_entry(family, inputs[i], inputs[j], pair, budget);
      }
      k(i, j) = v;
      k(j, i) = v;
    }
  return k;
}

}  // namespace fouriq

#endif  // FOURIQ_FAMILY_HPP
