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

#ifndef FOURIQ_EXTRACT_HPP
#define FOURIQ_EXTRACT_HPP

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fouriq/compile.hpp"
#include "fouriq/shots.hpp"

namespace fouriq {

// ---------------------------------------------------------------------------
// Fourier tables
// ---------------------------------------------------------------------------

enum class ProvenanceKind { Exact, Shots, Oracle };

struct Provenance {
  ProvenanceKind kind = ProvenanceKind::Exact;
  long shots = 0;
  uint64_t seed = 0;

  std::string str() const {
    switch (kind) {
      case ProvenanceKind::Exact: return "exact";
      case ProvenanceKind::Shots:
        return "shots:" + std::to_string(shots) + ":" + std::to_string(seed);
      default: return "oracle";
    }
  }
};

/// Coefficients b_l of a finite series sum_l b_l e^{i base l.alpha}, stored
/// densely in lattice enumeration order.
struct FourierTable {
  FrequencyLattice lattice;
  double base = kPi;
  std::vector<cplx> coeffs;
  Provenance provenance;

  cplx at(const std::vector<long>& l) const {
    if (!lattice.contains(l)) throw std::invalid_argument("frequency outside lattice");
    return coeffs[lattice.flat_index(l)];
  }

  double norm_sq() const {
    double s = 0;
    for (const cplx& c : coeffs) s += std::norm(c);
    return s;
  }
};

inline cplx reconstruct(const FourierTable& t, std::span<const double> alpha) {
  if (static_cast<int>(alpha.size()) != t.lattice.d)
    throw std::invalid_argument("alpha length does not match lattice dimension");
  cplx acc{0, 0};
  for (long i = 0; i < t.lattice.size(); ++i) {
    const std::vector<long> l = t.lattice.point(i);
    double phase = 0;
    for (int s = 0; s < t.lattice.d; ++s) phase += t.base * alpha[s] * static_cast<double>(l[s]);
    acc += t.coeffs[i] * std::polar(1.0, phase);
  }
  return acc;
}

/// Re-expresses the table on a lattice whose base frequency is finer by an
/// integer factor (entries land on index multiples of the factor). Used to
/// compare series with commensurate bases, e.g. Trotterizations at r and 2r.
inline FourierTable refine_base(const FourierTable& t, long factor) {
  if (factor < 1) throw std::invalid_argument("refinement factor must be >= 1");
  FourierTable out;
  out.lattice.d = t.lattice.d;
  out.lattice.kind = t.lattice.kind;
  for (long k : t.lattice.bounds) out.lattice.bounds.push_back(k * factor);
  out.base = t.base / static_cast<double>(factor);
  out.provenance = t.provenance;
  out.coeffs.assign(out.lattice.size(), cplx{0, 0});
  for (long i = 0; i < t.lattice.size(); ++i) {
    std::vector<long> l = t.lattice.point(i);
    for (long& v : l) v *= factor;
    out.coeffs[out.lattice.flat_index(l)] = t.coeffs[i];
  }
  return out;
}

/// 2-norm of the coefficient difference over the union of the two lattices.
/// The tables must share the same base frequency.
inline double table_l2_distance(const FourierTable& a, const FourierTable& b) {
  if (std::abs(a.base - b.base) > 1e-12 * std::max(std::abs(a.base), 1.0))
    throw std::invalid_argument("tables have different base frequencies");
  if (a.lattice.d != b.lattice.d) throw std::invalid_argument("tables have different dimension");
  FrequencyLattice u;
  u.d = a.lattice.d;
  for (int s = 0; s < u.d; ++s) u.bounds.push_back(std::max(a.lattice.bounds[s], b.lattice.bounds[s]));
  double acc = 0;
  for (long i = 0; i < u.size(); ++i) {
    const std::vector<long> l = u.point(i);
    const cplx va = a.lattice.contains(l) ? a.coeffs[a.lattice.flat_index(l)] : cplx{0, 0};
    const cplx vb = b.lattice.contains(l) ? b.coeffs[b.lattice.flat_index(l)] : cplx{0, 0};
    acc += std::norm(va - vb);
  }
  return std::sqrt(acc);
}

// ---------------------------------------------------------------------------
// Coefficient extraction from compiled circuits
// ---------------------------------------------------------------------------

struct ExtractMode {
  bool exact = true;
  long shots = 0;      // per Hadamard-test part when not exact
  uint64_t seed = 0;
  // When set, only the half-lattice is measured and the mirror entries are
  // filled as conjugates (valid for real-valued functions). Off by default
  // so conjugate symmetry stays an observable property of the extraction.
  bool complete_by_symmetry = false;

  static ExtractMode Exact() { return ExtractMode{}; }
  static ExtractMode Shots(long shots_per_part, uint64_t seed) {
    if (shots_per_part < 1) throw std::invalid_argument("shots must be >= 1");
    return ExtractMode{false, shots_per_part, seed};
  }

  ExtractMode with_symmetry_completion() const {
    ExtractMode m = *this;
    m.complete_by_symmetry = true;
    return m;
  }
};

namespace detail {

/// Exact control-qubit P(outcome 0) of the Hadamard test estimating
/// <0|V_l^dag C|0> for the compiled circuit C. part 0 measures the real
/// component, part 1 (an S^dag phase on the control) the imaginary one.
inline double hadamard_test_p0(const CompiledFourierCircuit& cc, const std::vector<long>& l, int part) {
  const int ctrl = cc.layout.total;
  StateVector st(cc.layout.total + 1);
  const Eigen::MatrixXcd h = named_gate_matrix("H");
  Eigen::Matrix2cd sdag;
  sdag << 1, 0, 0, -kI;
  apply_dense(st, h, std::vector<int>{ctrl});
  if (part == 1) apply_dense(st, sdag, std::vector<int>{ctrl});
  const Control on{ctrl, true};
  for (const auto& g : cc.gates) apply_compiled_gate(st, cc.layout, g, {&on, 1});
  // V_l maps |0> to |l>; it is a layer of X gates on the frequency bits of
  // l's two's-complement pattern and is its own inverse.
  const Eigen::Matrix2cd x = pauli_matrix(Pauli::X);
  for (int s = 0; s < cc.layout.d; ++s) {
    const FreqRegister& reg = cc.layout.freq[s];
    const long pattern = l[s] & ((1L << reg.qubits) - 1);
    for (int b = 0; b < reg.qubits; ++b)
      if ((pattern >> (reg.qubits - 1 - b)) & 1L)
        apply_dense(st, x, std::vector<int>{reg.offset + b}, {&on, 1});
  }
  apply_dense(st, h, std::vector<int>{ctrl});
  double p0 = 0;
  for (long i = 0; i < st.dim(); i += 2) p0 += std::norm(st.amps[i]);  // control is the last qubit
  return p0;
}

}  // namespace detail

/// One Fourier coefficient of an expectation-kind compilation. Exact mode
/// reads the amplitude; shot mode runs the two seeded Hadamard tests with
/// `mode.shots` draws each, streams split per (l, part).
inline cplx extract_coefficient(const CompiledFourierCircuit& cc, const std::vector<long>& l,
                                const ExtractMode& mode) {
  if (!cc.lattice.contains(l)) throw std::invalid_argument("frequency outside lattice");
  if (mode.exact) {
    const StateVector st = run_compiled(cc);
    return st.amps[cc.layout.index_of(l)] * cc.amplitude_scale;
  }
  const long flat = cc.lattice.flat_index(l);
  const double p0_re = detail::hadamard_test_p0(cc, l, 0);
  const double p0_im = detail::hadamard_test_p0(cc, l, 1);
  const double re = 2.0 * sample_bernoulli_mean(p0_re, mode.shots, make_stream(mode.seed, flat, 0)) - 1.0;
  const double im = 2.0 * sample_bernoulli_mean(p0_im, mode.shots, make_stream(mode.seed, flat, 1)) - 1.0;
  return cc.amplitude_scale * cplx{re, im};
}

/// Full coefficient table of f(alpha) = <0|U^dag(alpha) O U(alpha)|0>.
inline FourierTable extract_table(const ParametrizedCircuit& circuit, const Observable& obs,
                                  const ExtractMode& mode, const Budget& budget = Budget{}) {
  const CompiledFourierCircuit cc = compile_expectation(circuit, obs, budget);
  const long m = cc.lattice.size();
  if (m > budget.max_lattice_size)
    throw BudgetError("lattice size " + std::to_string(m) + " exceeds budget " +
                      std::to_string(budget.max_lattice_size));
  FourierTable t;
  t.lattice = cc.lattice;
  t.base = cc.base;
  t.coeffs.resize(m);
  // With symmetry completion, a point whose first nonzero coordinate is
  // negative is filled from its mirror instead of being measured.
  auto mirror_source = [&](const std::vector<long>& l) -> long {
    for (long v : l) {
      if (v > 0) return -1;
      if (v < 0) {
        std::vector<long> neg(l);
        for (long& w : neg) w = -w;
        return cc.lattice.flat_index(neg);
      }
    }
    return -1;
  };
  if (mode.exact) {
    const StateVector st = run_compiled(cc);
    for (long i = 0; i < m; ++i)
      t.coeffs[i] = st.amps[cc.layout.index_of(cc.lattice.point(i))] * cc.amplitude_scale;
    t.provenance = Provenance{ProvenanceKind::Exact, 0, 0};
  } else {
    for (long i = 0; i < m; ++i) {
      if (mode.complete_by_symmetry && mirror_source(cc.lattice.point(i)) >= 0) continue;
      t.coeffs[i] = extract_coefficient(cc, cc.lattice.point(i), mode);
    }
    t.provenance = Provenance{ProvenanceKind::Shots, mode.shots, mode.seed};
  }
  if (mode.complete_by_symmetry && !mode.exact)
    for (long i = 0; i < m; ++i) {
      const long src = mirror_source(cc.lattice.point(i));
      if (src >= 0) t.coeffs[i] = std::conj(t.coeffs[src]);
    }
  return t;
}

// ---------------------------------------------------------------------------
// Classical grid-DFT oracle
// ---------------------------------------------------------------------------

/// Discrete Fourier transform of a black-box function sampled on a regular
/// grid over one period cell. Exact (up to float error) whenever the
/// function's spectrum lies inside the lattice and every N_s >= 2 K_s + 1.
inline FourierTable grid_dft_function(const std::function<double(std::span<const double>)>& f,
                                      const FrequencyLattice& lat, double base,
                                      std::vector<long> grid = {}) {
  if (grid.empty())
    for (long k : lat.bounds) grid.push_back(2 * k + 1);
  if (static_cast<int>(grid.size()) != lat.d) throw std::invalid_argument("grid dimension mismatch");
  for (int s = 0; s < lat.d; ++s)
    if (grid[s] < 2 * lat.bounds[s] + 1)
      throw std::invalid_argument("grid too small for lattice (aliasing): need at least " +
                                  std::to_string(2 * lat.bounds[s] + 1) + " points in dimension " +
                                  std::to_string(s));
  long total = 1;
  for (long g : grid) total *= g;
  std::vector<double> values(total);
  std::vector<double> alpha(lat.d);
  const double period = 2.0 * kPi / base;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int s = lat.d - 1; s >= 0; --s) {
      const long ks = rest % grid[s];
      rest /= grid[s];
      alpha[s] = period * static_cast<double>(ks) / static_cast<double>(grid[s]);
    }
    values[idx] = f(alpha);
  }
  FourierTable t;
  t.lattice = lat;
  t.base = base;
  t.provenance = Provenance{ProvenanceKind::Oracle, 0, 0};
  t.coeffs.assign(lat.size(), cplx{0, 0});
  for (long li = 0; li < lat.size(); ++li) {
    const std::vector<long> l = lat.point(li);
    cplx acc{0, 0};
    for (long idx = 0; idx < total; ++idx) {
      long rest = idx;
      double phase = 0;
      for (int s = lat.d - 1; s >= 0; --s) {
        const long ks = rest % grid[s];
        rest /= grid[s];
        phase -= 2.0 * kPi * static_cast<double>(l[s]) * static_cast<double>(ks) /
                 static_cast<double>(grid[s]);
      }
      acc += values[idx] * std::polar(1.0, phase);
    }
    t.coeffs[li] = acc / static_cast<double>(total);
  }
  return t;
}

/// Grid-DFT ground truth for a circuit function, evaluated through the plain
/// simulator (independent of the compilation path).
inline FourierTable grid_dft_oracle(const ParametrizedCircuit& circuit, const Observable& obs,
                                    std::vector<long> grid = {}, const Budget& budget = Budget{}) {
  require_valid(circuit);
  const FrequencyLattice lat = lattice(circuit, LatticeKind::Expectation);
  if (lat.size() > budget.max_lattice_size)
    throw BudgetError("lattice size " + std::to_string(lat.size()) + " exceeds budget " +
                      std::to_string(budget.max_lattice_size));
  const double base = encode_scale(circuit);
  return grid_dft_function(
      [&](std::span<const double> alpha) { return eval_concept(circuit, obs, alpha); }, lat, base,
      std::move(grid));
}

/// Mean of |f|^2 over the default oracle grid; with enough points this is
/// the period-cell average (used for Parseval checks).
inline double grid_mean_square(const ParametrizedCircuit& circuit, const Observable& obs,
                               std::vector<long> grid = {}) {
  const FrequencyLattice lat = lattice(circuit, LatticeKind::Expectation);
  if (grid.empty())
    for (long k : lat.bounds) grid.push_back(4 * k + 1);
  const double period = 2.0 * kPi / encode_scale(circuit);
  long total = 1;
  for (long g : grid) total *= g;
  std::vector<double> alpha(lat.d);
  double acc = 0;
  for (long idx = 0; idx < total; ++idx) {
    long rest = idx;
    for (int s = lat.d - 1; s >= 0; --s) {
      const long ks = rest % grid[s];
      rest /= grid[s];
      alpha[s] = period * static_cast<double>(ks) / static_cast<double>(grid[s]);
    }
    const double v = eval_concept(circuit, obs, alpha);
    acc += v * v;
  }
  return acc / static_cast<double>(total);
}

// ---------------------------------------------------------------------------
// QFT pathway (literal simulation of the oracle-based route)
// ---------------------------------------------------------------------------

namespace detail {

inline Eigen::MatrixXcd inverse_qft_matrix(long m) {
  Eigen::MatrixXcd f(m, m);
  const double s = 1.0 / std::sqrt(static_cast<double>(m));
  for (long r = 0; r < m; ++r)
    for (long c = 0; c < m; ++c)
      f(r, c) = s * std::polar(1.0, -2.0 * kPi * static_cast<double>(r * c) / static_cast<double>(m));
  return f;
}

inline void qft_budget_check(const ParametrizedCircuit& c, long grid_m, const Budget& budget) {
  if (c.d > budget.qft_max_dims)
    throw BudgetError("QFT pathway budget allows at most " + std::to_string(budget.qft_max_dims) +
                      " parameter dimension(s)");
  if (c.n > budget.qft_max_circuit_qubits)
    throw BudgetError("QFT pathway budget allows at most " +
                      std::to_string(budget.qft_max_circuit_qubits) + " circuit qubits");
  if (grid_m > budget.qft_max_grid)
    throw BudgetError("QFT pathway grid " + std::to_string(grid_m) + " exceeds budget " +
                      std::to_string(budget.qft_max_grid));
  if (grid_m < 2 || (grid_m & (grid_m - 1)) != 0)
    throw std::invalid_argument("QFT pathway grid must be a power of two >= 2");
}

/// Applies one original-circuit gate at a fixed alpha, remapped onto the
/// circuit register at `offset`, under shared controls. `conj` applies the
/// entrywise conjugate (for the projector's second copy), `invert` the
/// adjoint (for the un-computation pass).
inline void apply_resolved_gate(StateVector& st, const GateSpec& g, std::span<const double> alpha,
                                int offset, std::span<const Control> controls, bool conj,
                                bool invert) {
  if (const auto* fixed = std::get_if<FixedGate>(&g)) {
    Eigen::MatrixXcd m = fixed->unitary;
    if (conj) m = m.conjugate().eval();
    if (invert) m = m.adjoint().eval();
    std::vector<int> targets;
    for (int t : fixed->targets) targets.push_back(offset + t);
    apply_dense(st, m, targets, controls);
    return;
  }
  const auto& enc = std::get<EncodeGate>(g);
  double theta = enc.scale * alpha[enc.param];
  if (conj) theta = -theta;
  if (invert) theta = -theta;
  EncodeGate mapped;
  mapped.pauli = PauliString::identity(st.n);
  for (int q = 0; q < enc.pauli.n; ++q) mapped.pauli.letters[offset + q] = enc.pauli.letters[q];
  mapped.param = 0;
  mapped.scale = 1;
  const double a[1] = {theta};
  GateSpec gs = mapped;
  apply_gate(st, gs, a, controls);
}

}  // namespace detail

/// Literal simulation of the oracle/QFT route for expectation functions: the
/// index registers start in uniform superposition, the sandwich
/// U^dag(alpha_j) O U(alpha_j) is applied controlled on each grid point j,
/// and an inverse QFT per register turns grid phases into frequency labels.
/// Matches the grid-DFT oracle whenever M >= 2 K_s + 1 in every dimension.
inline FourierTable qft_pathway(const ParametrizedCircuit& circuit, const Observable& obs, long grid_m,
                                const Budget& budget = Budget{}) {
  require_valid(circuit);
  if (!std::holds_alternative<ZeroProjectorObs>(obs)) check_observable(obs, circuit.n);
  detail::qft_budget_check(circuit, grid_m, budget);
  const ParametrizedCircuit cz = normalize_to_z(circuit);
  const FrequencyLattice lat = lattice(cz, LatticeKind::Expectation);
  const double base = encode_scale(cz);
  const int d = cz.d;
  const int treg = ceil_log2(grid_m);
  const bool projector = std::holds_alternative<ZeroProjectorObs>(obs);
  const auto* comb = std::get_if<CombinationObs>(&obs);
  const bool lcu = comb != nullptr && comb->terms.size() > 1;
  const int aux = lcu ? std::max(1, ceil_log2(static_cast<long>(comb->terms.size()))) : 0;
  const int copies = projector ? 2 : 1;
  const int total = d * treg + aux + copies * cz.n;
  if (total > budget.max_total_qubits)
    throw BudgetError("QFT pathway needs " + std::to_string(total) + " qubits, budget allows " +
                      std::to_string(budget.max_total_qubits));

  const int aux_offset = d * treg;
  const int c_offset = aux_offset + aux;
  StateVector st(total);
  const Eigen::MatrixXcd h = named_gate_matrix("H");
  for (int q = 0; q < d * treg; ++q) apply_dense(st, h, std::vector<int>{q});

  double scale = 1;
  long grid_total = 1;
  for (int s = 0; s < d; ++s) grid_total *= grid_m;
  const double period = 2.0 * kPi / base;
  std::vector<double> alpha(d);
  for (long j = 0; j < grid_total; ++j) {
    std::vector<Control> on;
    long rest = j;
    for (int s = d - 1; s >= 0; --s) {
      const long js = rest % grid_m;
      rest /= grid_m;
      alpha[s] = period * static_cast<double>(js) / static_cast<double>(grid_m);
      for (int b = 0; b < treg; ++b)
        on.push_back(Control{s * treg + b, ((js >> (treg - 1 - b)) & 1L) != 0});
    }
    for (const auto& g : cz.gates) detail::apply_resolved_gate(st, g, alpha, c_offset, on, false, false);
    if (projector) {
      for (const auto& g : cz.gates)
        detail::apply_resolved_gate(st, g, alpha, c_offset + cz.n, on, true, false);
      continue;
    }
    if (const auto* pauli = std::get_if<PauliObs>(&obs)) {
      std::vector<CompiledGate> block;
      detail::emit_pauli_apply(block, pauli->p, c_offset, on, false);
      for (const auto& g : block) {
        RegisterLayout dummy;  // block has no shift gates
        apply_compiled_gate(st, dummy, g);
      }
    } else {
      const double l1 = comb->beta_l1();
      scale = l1;
      std::vector<CompiledGate> block;
      if (!lcu) {
        detail::emit_pauli_apply(block, comb->terms.front().second, c_offset, on,
                                 comb->terms.front().first < 0);
        scale = std::abs(comb->terms.front().first);
      } else {
        const long hdim = 1L << aux;
        Eigen::VectorXcd prep = Eigen::VectorXcd::Zero(hdim);
        for (size_t t = 0; t < comb->terms.size(); ++t)
          prep[static_cast<Eigen::Index>(t)] = std::sqrt(std::abs(comb->terms[t].first) / l1);
        const Eigen::MatrixXcd vb = detail::state_prep_unitary(prep);
        std::vector<int> aux_targets;
        for (int q = 0; q < aux; ++q) aux_targets.push_back(aux_offset + q);
        block.push_back({DenseCompiledGate{vb, aux_targets}, on});
        for (size_t t = 0; t < comb->terms.size(); ++t) {
          if (comb->terms[t].first == 0) continue;
          std::vector<Control> sel = on;
          for (int q = 0; q < aux; ++q)
            sel.push_back(Control{aux_offset + q, ((t >> (aux - 1 - q)) & 1) != 0});
          detail::emit_pauli_apply(block, comb->terms[t].second, c_offset, sel,
                                   comb->terms[t].first < 0);
        }
        block.push_back({DenseCompiledGate{vb.adjoint(), aux_targets}, on});
      }
      for (const auto& g : block) {
        RegisterLayout dummy;
        apply_compiled_gate(st, dummy, g);
      }
    }
    for (auto it = cz.gates.rbegin(); it != cz.gates.rend(); ++it)
      detail::apply_resolved_gate(st, *it, alpha, c_offset, on, false, true);
  }

  const Eigen::MatrixXcd iqft = detail::inverse_qft_matrix(grid_m);
  for (int s = 0; s < d; ++s) {
    std::vector<int> targets;
    for (int b = 0; b < treg; ++b) targets.push_back(s * treg + b);
    apply_dense(st, iqft, targets);
  }

  FourierTable t;
  t.lattice = lat;
  t.base = base;
  t.provenance = Provenance{ProvenanceKind::Exact, 0, 0};
  t.coeffs.assign(lat.size(), cplx{0, 0});
  for (long li = 0; li < lat.size(); ++li) {
    const std::vector<long> l = lat.point(li);
    long idx = 0;
    for (int s = 0; s < d; ++s) {
      const long v = ((l[s] % grid_m) + grid_m) % grid_m;
      idx |= v << (total - (s + 1) * treg);
    }
    t.coeffs[li] = st.amps[idx] * scale;
  }
  return t;
}

/// State-level QFT pathway: returns the matrix a[l][k] of Fourier amplitudes
/// of U(alpha)|0>, comparable with the state compilation.
inline Eigen::MatrixXcd qft_state_pathway(const ParametrizedCircuit& circuit, long grid_m,
                                          const Budget& budget = Budget{}) {
  require_valid(circuit);
  detail::qft_budget_check(circuit, grid_m, budget);
  const ParametrizedCircuit cz = normalize_to_z(circuit);
  const FrequencyLattice lat = lattice(cz, LatticeKind::State);
  const double base = encode_scale(cz);
  const int d = cz.d;
  const int treg = ceil_log2(grid_m);
  const int total = d * treg + cz.n;
  if (total > budget.max_total_qubits) throw BudgetError("QFT pathway exceeds qubit budget");
  const int c_offset = d * treg;
  StateVector st(total);
  const Eigen::MatrixXcd h = named_gate_matrix("H");
  for (int q = 0; q < d * treg; ++q) apply_dense(st, h, std::vector<int>{q});
  long grid_total = 1;
  for (int s = 0; s < d; ++s) grid_total *= grid_m;
  const double period = 2.0 * kPi / base;
  std::vector<double> alpha(d);
  for (long j = 0; j < grid_total; ++j) {
    std::vector<Control> on;
    long rest = j;
    for (int s = d - 1; s >= 0; --s) {
      const long js = rest % grid_m;
      rest /= grid_m;
      alpha[s] = period * static_cast<double>(js) / static_cast<double>(grid_m);
      for (int b = 0; b < treg; ++b)
        on.push_back(Control{s * treg + b, ((js >> (treg - 1 - b)) & 1L) != 0});
    }
    for (const auto& g : cz.gates) detail::apply_resolved_gate(st, g, alpha, c_offset, on, false, false);
  }
  const Eigen::MatrixXcd iqft = detail::inverse_qft_matrix(grid_m);
  for (int s = 0; s < d; ++s) {
    std::vector<int> targets;
    for (int b = 0; b < treg; ++b) targets.push_back(s * treg + b);
    apply_dense(st, iqft, targets);
  }
  const long kdim = checked_pow2(cz.n);
  Eigen::MatrixXcd a(lat.size(), kdim);
  for (long li = 0; li < lat.size(); ++li) {
    const std::vector<long> l = lat.point(li);
    long idx = 0;
    for (int s = 0; s < d; ++s) {
      const long v = ((l[s] % grid_m) + grid_m) % grid_m;
      idx |= v << (total - (s + 1) * treg);
    }
    for (long k = 0; k < kdim; ++k) a(li, k) = st.amps[idx | k];
  }
  return a;
}

}  // namespace fouriq

#endif  // FOURIQ_EXTRACT_HPP
