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

#ifndef FOURIQ_COMMON_HPP
#define FOURIQ_COMMON_HPP

#include <complex>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace fouriq {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr cplx kI{0.0, 1.0};

// Default tolerances used across the library.
inline constexpr double kUnitaryTol = 1e-10;
inline constexpr double kNormTol = 1e-9;
inline constexpr double kHermitianTol = 1e-10;

/// Raised when an operation would exceed a configured resource budget.
/// The message always names the offending quantity so callers can report it.
class BudgetError : public std::runtime_error {
 public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

/// Raised by document parsers; carries the field or line that failed.
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Resource guards for simulation-backed operations. The defaults target
/// desk-scale runs; experiment configs may tighten or relax them.
struct Budget {
  int max_total_qubits = 24;
  long max_lattice_size = 1'000'000;
  long max_samples = 100'000;        // dataset rows
  int qft_max_grid = 8;              // per-dimension grid for the QFT pathway
  int qft_max_circuit_qubits = 3;
  int qft_max_dims = 1;
};

inline long checked_pow2(int bits) {
  if (bits < 0 || bits > 62) throw std::invalid_argument("qubit count out of range");
  return 1L << bits;
}

inline int ceil_log2(long value) {
  int bits = 0;
  while ((1L << bits) < value) ++bits;
  return bits;
}

}  // namespace fouriq

#endif  // FOURIQ_COMMON_HPP
