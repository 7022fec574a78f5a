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

#ifndef FOURIQ_SHOTS_HPP
#define FOURIQ_SHOTS_HPP

#include <cmath>
#include <cstdint>

#include "fouriq/common.hpp"

namespace fouriq {

// ---------------------------------------------------------------------------
// Counter-based randomness. Every stochastic task owns a stream keyed by the
// run seed plus task identifiers, so results are reproducible independent of
// evaluation order or thread count.
// ---------------------------------------------------------------------------

inline uint64_t mix64(uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct RngStream {
  uint64_t key = 0;
  uint64_t counter = 0;

  uint64_t next_u64() { return mix64(key + (++counter) * 0x9e3779b97f4a7c15ULL); }

  /// Uniform in [0, 1).
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller.
  double next_normal() {
    double u = next_double(), v = next_double();
    if (u <= 0) u = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * kPi * v);
  }
};

inline RngStream make_stream(uint64_t seed, uint64_t id0 = 0, uint64_t id1 = 0, uint64_t id2 = 0) {
  uint64_t key = mix64(seed ^ 0x243f6a8885a308d3ULL);
  key = mix64(key ^ mix64(id0 ^ 0x13198a2e03707344ULL));
  key = mix64(key ^ mix64(id1 ^ 0xa4093822299f31d0ULL));
  key = mix64(key ^ mix64(id2 ^ 0x082efa98ec4e6c89ULL));
  return RngStream{key, 0};
}

// ---------------------------------------------------------------------------
// Shot planning
// ---------------------------------------------------------------------------

/// Sample budget guaranteeing a Bernoulli mean within epsilon_b of its truth
/// with probability at least 1 - delta (two-sided Hoeffding bound for draws
/// of unit range).
struct ShotPlan {
  double epsilon_b = 0;
  double delta = 0;
  long shots_per_estimate = 1;
};

inline ShotPlan shots_for(double epsilon_b, double delta) {
  if (!(epsilon_b > 0) || !(epsilon_b <= 1)) throw std::invalid_argument("epsilon_b must be in (0, 1]");
  if (!(delta > 0) || !(delta < 1)) throw std::invalid_argument("delta must be in (0, 1)");
  ShotPlan plan;
  plan.epsilon_b = epsilon_b;
  plan.delta = delta;
  plan.shots_per_estimate =
      std::max(1L, static_cast<long>(std::ceil(std::log(2.0 / delta) / (2.0 * epsilon_b * epsilon_b))));
  return plan;
}

/// Per-part budget for a complex coefficient estimated by two Hadamard tests.
/// Each test mean is measured to epsilon_b / (2 sqrt 2) at confidence
/// delta / 2; the factor 2 undoes the [0,1] -> [-1,1] rescaling of the test
/// outcome and the sqrt 2 splits the error between the two parts, so the
/// coefficient lands within epsilon_b of its truth with probability 1-delta.
struct CoefficientShotPlan {
  double epsilon_b = 0;
  double delta = 0;
  long shots_per_part = 1;
};

inline CoefficientShotPlan plan_coefficient_shots(double epsilon_b, double delta) {
  const ShotPlan part = shots_for(epsilon_b / (2.0 * std::sqrt(2.0)), delta / 2.0);
  return CoefficientShotPlan{epsilon_b, delta, part.shots_per_estimate};
}

// ---------------------------------------------------------------------------
// Samplers
// ---------------------------------------------------------------------------

/// Empirical mean of `shots` Bernoulli(p) draws from the given stream.
inline double sample_bernoulli_mean(double p, long shots, RngStream stream) {
  if (!(p >= 0) || !(p <= 1)) throw std::invalid_argument("p must be in [0, 1]");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  long count = 0;
  for (long s = 0; s < shots; ++s) count += stream.next_double() < p ? 1 : 0;
  return static_cast<double>(count) / static_cast<double>(shots);
}

/// Empirical mean of draws taking value +1 with probability p_plus, -1 with
/// probability p_minus, 0 otherwise (three-outcome parity-style readout).
inline double sample_signed_mean(double p_plus, double p_minus, long shots, RngStream stream) {
  if (p_plus < 0 || p_minus < 0 || p_plus + p_minus > 1 + 1e-12)
    throw std::invalid_argument("invalid outcome probabilities");
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  long acc = 0;
  for (long s = 0; s < shots; ++s) {
    const double u = stream.next_double();
    if (u < p_plus) ++acc;
    else if (u < p_plus + p_minus) --acc;
  }
  return static_cast<double>(acc) / static_cast<double>(shots);
}

}  // namespace fouriq

#endif  // FOURIQ_SHOTS_HPP
