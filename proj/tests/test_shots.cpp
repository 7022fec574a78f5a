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

#include <catch2/catch_amalgamated.hpp>
#include <cmath>

#include "fouriq/shots.hpp"

using namespace fouriq;

TEST_CASE("shot planning") {
  SECTION("frozen spot value") {
    REQUIRE(shots_for(0.1, 0.05).shots_per_estimate == 185);
  }
  SECTION("loose targets need a single shot") {
    REQUIRE(shots_for(1.0, 0.5).shots_per_estimate == 1);
  }
  SECTION("halving the accuracy quadruples the budget") {
    const long s1 = shots_for(0.1, 0.05).shots_per_estimate;
    const long s2 = shots_for(0.05, 0.05).shots_per_estimate;
    REQUIRE(s2 >= 4 * s1 - 4);
    REQUIRE(s2 <= 4 * s1 + 4);
  }
  SECTION("matches the closed form") {
    for (double eps : {0.02, 0.05, 0.3}) {
      for (double delta : {0.01, 0.1}) {
        const long expected =
            static_cast<long>(std::ceil(std::log(2.0 / delta) / (2.0 * eps * eps)));
        REQUIRE(shots_for(eps, delta).shots_per_estimate == expected);
      }
    }
  }
  SECTION("input validation") {
    REQUIRE_THROWS_AS(shots_for(0.0, 0.05), std::invalid_argument);
    REQUIRE_THROWS_AS(shots_for(1.5, 0.05), std::invalid_argument);
    REQUIRE_THROWS_AS(shots_for(0.1, 0.0), std::invalid_argument);
    REQUIRE_THROWS_AS(shots_for(0.1, 1.0), std::invalid_argument);
  }
}

TEST_CASE("coefficient-level planning splits the budget over both parts") {
  const CoefficientShotPlan plan = plan_coefficient_shots(0.05, 0.05);
  const long expected = shots_for(0.05 / (2.0 * std::sqrt(2.0)), 0.025).shots_per_estimate;
  REQUIRE(plan.shots_per_part == expected);
  // Tightening the target never shrinks the budget.
  REQUIRE(plan_coefficient_shots(0.01, 0.05).shots_per_part > plan.shots_per_part);
}

TEST_CASE("bernoulli sampling") {
  SECTION("degenerate probabilities") {
    REQUIRE(sample_bernoulli_mean(0.0, 50, make_stream(1)) == 0.0);
    REQUIRE(sample_bernoulli_mean(1.0, 50, make_stream(1)) == 1.0);
  }
  SECTION("deterministic per seed") {
    const double a = sample_bernoulli_mean(0.37, 1000, make_stream(5, 2, 3));
    const double b = sample_bernoulli_mean(0.37, 1000, make_stream(5, 2, 3));
    REQUIRE(a == b);
    REQUIRE(a != sample_bernoulli_mean(0.37, 1000, make_stream(6, 2, 3)));
  }
  SECTION("concentrates around p") {
    int ok = 0;
    for (uint64_t seed = 0; seed < 100; ++seed)
      if (std::abs(sample_bernoulli_mean(0.5, 10000, make_stream(seed)) - 0.5) <= 0.02) ++ok;
    REQUIRE(ok >= 95);
  }
  SECTION("unbiased across seeds") {
    double acc = 0;
    const long seeds = 200, shots = 400;
    for (uint64_t seed = 0; seed < static_cast<uint64_t>(seeds); ++seed)
      acc += sample_bernoulli_mean(0.3, shots, make_stream(seed, 9));
    const double mean = acc / seeds;
    const double se = std::sqrt(0.3 * 0.7 / (seeds * shots));
    REQUIRE(std::abs(mean - 0.3) <= 3 * se + 1e-12);
  }
  SECTION("input validation") {
    REQUIRE_THROWS_AS(sample_bernoulli_mean(-0.1, 10, make_stream(1)), std::invalid_argument);
    REQUIRE_THROWS_AS(sample_bernoulli_mean(0.5, 0, make_stream(1)), std::invalid_argument);
  }
}

TEST_CASE("planned budgets meet the failure-rate guarantee empirically") {
  const double eps = 0.1, delta = 0.05;
  const ShotPlan plan = shots_for(eps, delta);
  int failures = 0;
  const int trials = 500;
  for (int t = 0; t < trials; ++t) {
    const double est = sample_bernoulli_mean(0.62, plan.shots_per_estimate,
                                             make_stream(static_cast<uint64_t>(t), 11));
    if (std::abs(est - 0.62) > eps) ++failures;
  }
  REQUIRE(static_cast<double>(failures) / trials <= 2 * delta);
}

TEST_CASE("signed three-outcome sampling") {
  REQUIRE(sample_signed_mean(1.0, 0.0, 20, make_stream(3)) == 1.0);
  REQUIRE(sample_signed_mean(0.0, 1.0, 20, make_stream(3)) == -1.0);
  REQUIRE(sample_signed_mean(0.0, 0.0, 20, make_stream(3)) == 0.0);
  const double est = sample_signed_mean(0.5, 0.3, 200000, make_stream(17));
  REQUIRE(std::abs(est - 0.2) < 0.01);
  REQUIRE_THROWS_AS(sample_signed_mean(0.7, 0.6, 10, make_stream(1)), std::invalid_argument);
}

TEST_CASE("streams with different identifiers are independent") {
  RngStream a = make_stream(123, 1, 2, 3);
  RngStream b = make_stream(123, 1, 2, 4);
  int same = 0;
  for (int i = 0; i < 64; ++i) same += a.next_u64() == b.next_u64() ? 1 : 0;
  REQUIRE(same == 0);
}
