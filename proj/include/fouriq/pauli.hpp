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

#ifndef FOURIQ_PAULI_HPP
#define FOURIQ_PAULI_HPP

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "fouriq/common.hpp"

namespace fouriq {

enum class Pauli : uint8_t { I = 0, X = 1, Y = 2, Z = 3 };

inline char pauli_char(Pauli p) { return "IXYZ"[static_cast<int>(p)]; }

inline Pauli pauli_from_char(char c) {
  switch (c) {
    case 'I': return Pauli::I;
    case 'X': return Pauli::X;
    case 'Y': return Pauli::Y;
    case 'Z': return Pauli::Z;
    default: throw ParseError(std::string("unknown Pauli letter '") + c + "'");
  }
}

inline Eigen::Matrix2cd pauli_matrix(Pauli p) {
  Eigen::Matrix2cd m;
  switch (p) {
    case Pauli::I: m << 1, 0, 0, 1; break;
    case Pauli::X: m << 0, 1, 1, 0; break;
    case Pauli::Y: m << 0, -kI, kI, 0; break;
    case Pauli::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

/// An n-qubit Pauli string. Letter 0 acts on qubit 0, which by library
/// convention is the most significant bit of the amplitude index.
struct PauliString {
  int n = 0;
  std::vector<Pauli> letters;

  PauliString() = default;
  PauliString(int n_, std::vector<Pauli> letters_) : n(n_), letters(std::move(letters_)) {}

  static PauliString identity(int n) { return PauliString(n, std::vector<Pauli>(n, Pauli::I)); }

  static PauliString from_string(const std::string& s) {
    PauliString p;
    p.n = static_cast<int>(s.size());
    p.letters.reserve(s.size());
    for (char c : s) p.letters.push_back(pauli_from_char(c));
    return p;
  }

  /// Single nontrivial letter at `qubit` on an n-qubit register.
  static PauliString single(int n, int qubit, Pauli p) {
    PauliString s = identity(n);
    s.letters.at(qubit) = p;
    return s;
  }

  std::string str() const {
    std::string s;
    s.reserve(letters.size());
    for (Pauli p : letters) s.push_back(pauli_char(p));
    return s;
  }

  bool is_identity() const {
    for (Pauli p : letters)
      if (p != Pauli::I) return false;
    return true;
  }

  /// Qubits carrying a non-identity letter, ascending.
  std::vector<int> support() const {
    std::vector<int> qs;
    for (int q = 0; q < n; ++q)
      if (letters[q] != Pauli::I) qs.push_back(q);
    return qs;
  }

  bool operator==(const PauliString& o) const { return n == o.n && letters == o.letters; }

  /// Dense 2^n x 2^n matrix of the string (test/oracle scale only).
  /// Qubit 0 is the leftmost tensor factor.
  Eigen::MatrixXcd matrix() const {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(1, 1);
    for (int q = 0; q < n; ++q) {
      Eigen::Matrix2cd f = pauli_matrix(letters[q]);
      Eigen::MatrixXcd next(m.rows() * 2, m.cols() * 2);
      for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
          for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b) next(i * 2 + a, j * 2 + b) = m(i, j) * f(a, b);
      m = std::move(next);
    }
    return m;
  }
};

}  // namespace fouriq

#endif  // FOURIQ_PAULI_HPP
