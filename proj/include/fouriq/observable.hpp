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

#ifndef FOURIQ_OBSERVABLE_HPP
#define FOURIQ_OBSERVABLE_HPP

#include <Eigen/Dense>
#include <cmath>
#include <variant>
#include <vector>

#include "fouriq/common.hpp"
#include "fouriq/pauli.hpp"

namespace fouriq {

struct PauliObs {
  PauliString p;
};

/// Real linear combination sum_h beta_h P_h of Pauli strings.
struct CombinationObs {
  std::vector<std::pair<double, PauliString>> terms;

  double beta_l1() const {
    double s = 0;
    for (const auto& [b, p] : terms) s += std::abs(b);
    return s;
  }
};

/// Projector |0...0><0...0| on the circuit register; the expectation is the
/// probability of measuring all zeros.
struct ZeroProjectorObs {};

using Observable = std::variant<PauliObs, CombinationObs, ZeroProjectorObs>;

inline int observable_qubits(const Observable& obs) {
  if (const auto* p = std::get_if<PauliObs>(&obs)) return p->p.n;
  if (const auto* c = std::get_if<CombinationObs>(&obs))
    return c->terms.empty() ? 0 : c->terms.front().second.n;
  return -1;  // projector adapts to the state
}

inline void check_observable(const Observable& obs, int n) {
  if (const auto* c = std::get_if<CombinationObs>(&obs)) {
    if (c->terms.empty()) throw std::invalid_argument("combination observable needs at least one term");
    bool any = false;
    for (const auto& [b, p] : c->terms) {
      if (!std::isfinite(b)) throw std::invalid_argument("combination coefficient not finite");
      if (p.n != n) throw std::invalid_argument("observable qubit count mismatch");
      if (b != 0.0) any = true;
    }
    if (!any) throw std::invalid_argument("combination observable has all-zero coefficients");
  } else if (const auto* p = std::get_if<PauliObs>(&obs)) {
    if (p->p.n != n) throw std::invalid_argument("observable qubit count mismatch");
  }
}

/// Spectral-norm bound used for label-range checks: 1 for a Pauli string or
/// the zero projector, sum |beta_h| for combinations.
inline double observable_norm_bound(const Observable& obs) {
  if (const auto* c = std::get_if<CombinationObs>(&obs)) return c->beta_l1();
  return 1.0;
}

/// Dense Hermitian matrix (oracle scale only).
inline Eigen::MatrixXcd observable_matrix(const Observable& obs, int n) {
  check_observable(obs, n);
  const long dim = checked_pow2(n);
  if (const auto* p = std::get_if<PauliObs>(&obs)) return p->p.matrix();
  if (const auto* c = std::get_if<CombinationObs>(&obs)) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (const auto& [b, pauli] : c->terms) m += b * pauli.matrix();
    return m;
  }
  Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
  m(0, 0) = 1;
  return m;
}

}  // namespace fouriq

#endif  // FOURIQ_OBSERVABLE_HPP
