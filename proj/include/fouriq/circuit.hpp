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

#ifndef FOURIQ_CIRCUIT_HPP
#define FOURIQ_CIRCUIT_HPP

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "fouriq/common.hpp"
#include "fouriq/pauli.hpp"

namespace fouriq {

/// A fixed (parameter-free) unitary on up to three target qubits.
/// `targets[0]` is the most significant bit of the local matrix index.
/// `name` is kept when the gate came from the named-gate table so documents
/// round-trip compactly; matrix-built gates serialize their entries.
struct FixedGate {
  Eigen::MatrixXcd unitary;
  std::vector<int> targets;
  std::string name;
};

/// A Pauli-encoding gate exp(i * scale * P * alpha[param]).
/// `scale` is pi for circuits in the plain encoding convention; Trotter
/// compilation emits tau/r so that the frequency lattice stays integer.
struct EncodeGate {
  PauliString pauli;
  int param = 0;
  double scale = kPi;
};

using GateSpec = std::variant<FixedGate, EncodeGate>;

struct ParametrizedCircuit {
  int n = 0;  // qubit count
  int d = 0;  // parameter count
  std::vector<GateSpec> gates;
  std::string metadata;
};

/// Named single/two-qubit gates accepted by the circuit document format.
inline Eigen::MatrixXcd named_gate_matrix(const std::string& name) {
  const double s = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXcd m;
  if (name == "H") {
    m.resize(2, 2);
    m << s, s, s, -s;
  } else if (name == "X" || name == "Y" || name == "Z") {
    m = pauli_matrix(pauli_from_char(name[0]));
  } else if (name == "S") {
    m.resize(2, 2);
    m << 1, 0, 0, kI;
  } else if (name == "CNOT") {
    m = Eigen::MatrixXcd::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
  } else if (name == "CZ") {
    m = Eigen::MatrixXcd::Identity(4, 4);
    m(3, 3) = -1;
  } else {
    throw ParseError("unknown gate name '" + name + "'");
  }
  return m;
}

inline FixedGate make_named_gate(const std::string& name, std::vector<int> targets) {
  return FixedGate{named_gate_matrix(name), std::move(targets), name};
}

/// Basis-change single such that V^dagger Z V = Y. With it, an encoding in Y
/// is rewritten as V, encode-in-Z, V^dagger.
inline Eigen::Matrix2cd y_basis_gate() {
  Eigen::Matrix2cd v;
  const double s = 1.0 / std::sqrt(2.0);
  v << s, -s * kI, s, s * kI;
  return v;
}

inline bool is_unitary(const Eigen::MatrixXcd& m, double tol = kUnitaryTol) {
  if (m.rows() != m.cols() || m.rows() == 0) return false;
  Eigen::MatrixXcd g = m.adjoint() * m;
  return (g - Eigen::MatrixXcd::Identity(m.rows(), m.cols())).cwiseAbs().maxCoeff() <= tol;
}

/// Invariant violations are reported as data, not thrown.
struct ValidationReport {
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

inline ValidationReport validate(const ParametrizedCircuit& c) {
  ValidationReport report;
  auto add = [&](const std::string& msg) { report.violations.push_back(msg); };
  if (c.n < 1) add("qubit count must be positive");
  if (c.d < 0) add("parameter count must be nonnegative");
  std::optional<double> scale_seen;
  for (size_t g = 0; g < c.gates.size(); ++g) {
    const std::string where = "gates[" + std::to_string(g) + "]: ";
    if (const auto* fixed = std::get_if<FixedGate>(&c.gates[g])) {
      const int k = static_cast<int>(fixed->targets.size());
      if (k < 1 || k > 3) add(where + "fixed gate must act on 1 to 3 qubits");
      if (fixed->unitary.rows() != (1L << k) || fixed->unitary.cols() != (1L << k))
        add(where + "matrix dimension does not match target count");
      else if (!is_unitary(fixed->unitary))
        add(where + "unitarity tolerance exceeded");
      std::vector<int> seen;
      for (int t : fixed->targets) {
        if (t < 0 || t >= c.n) add(where + "target qubit out of range");
        for (int u : seen)
          if (u == t) add(where + "duplicate target qubit");
        seen.push_back(t);
      }
    } else {
      const auto& enc = std::get<EncodeGate>(c.gates[g]);
      if (enc.pauli.n != c.n) add(where + "encode pauli length does not match qubit count");
      if (enc.param < 0 || enc.param >= c.d) add(where + "parameter index out of range");
      if (!(enc.scale > 0) || !std::isfinite(enc.scale)) add(where + "encode scale must be positive and finite");
      if (scale_seen && std::abs(*scale_seen - enc.scale) > 1e-12)
        add(where + "encode scale differs from earlier encode gates");
      if (!scale_seen) scale_seen = enc.scale;
    }
  }
  return report;
}

inline void require_valid(const ParametrizedCircuit& c) {
  ValidationReport r = validate(c);
  if (!r.ok()) throw std::invalid_argument("invalid circuit: " + r.violations.front());
}

/// Number of encoding gates per parameter; the total is the circuit's L.
inline std::vector<long> upload_counts(const ParametrizedCircuit& c) {
  require_valid(c);
  std::vector<long> counts(c.d, 0);
  for (const auto& g : c.gates)
    if (const auto* enc = std::get_if<EncodeGate>(&g)) ++counts[enc->param];
  return counts;
}

/// The common phase scale of all encoding gates (pi when there are none).
inline double encode_scale(const ParametrizedCircuit& c) {
  for (const auto& g : c.gates)
    if (const auto* enc = std::get_if<EncodeGate>(&g)) return enc->scale;
  return kPi;
}

/// Rewrites every encoding gate so its Pauli uses only I and Z letters,
/// flanking it with the corresponding single-qubit basis changes (H for X,
/// the fixed Y-basis single for Y). The circuit unitary is unchanged.
inline ParametrizedCircuit normalize_to_z(const ParametrizedCircuit& c) {
  require_valid(c);
  ParametrizedCircuit out;
  out.n = c.n;
  out.d = c.d;
  out.metadata = c.metadata;
  const Eigen::Matrix2cd v = y_basis_gate();
  for (const auto& g : c.gates) {
    const auto* enc = std::get_if<EncodeGate>(&g);
    if (!enc) {
      out.gates.push_back(g);
      continue;
    }
    std::vector<FixedGate> pre;
    PauliString zs = enc->pauli;
    for (int q = 0; q < zs.n; ++q) {
      if (zs.letters[q] == Pauli::X) {
        pre.push_back(make_named_gate("H", {q}));
        zs.letters[q] = Pauli::Z;
      } else if (zs.letters[q] == Pauli::Y) {
        pre.push_back(FixedGate{v, {q}, ""});
        zs.letters[q] = Pauli::Z;
      }
    }
    for (const auto& p : pre) out.gates.push_back(p);
    out.gates.push_back(EncodeGate{zs, enc->param, enc->scale});
    for (auto it = pre.rbegin(); it != pre.rend(); ++it) {
      FixedGate undo = *it;
      undo.unitary = undo.unitary.adjoint().eval();
      if (undo.name != "H") undo.name.clear();  // H is self-adjoint
      out.gates.push_back(undo);
    }
  }
  return out;
}

}  // namespace fouriq

#endif  // FOURIQ_CIRCUIT_HPP
