// Copyright 2026 The cjfit Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "cj/bootstrap.hpp"
#include "cj/strengths.hpp"

using namespace cj;

namespace {

BootstrapConfig Config(int m, std::uint64_t seed, int jobs = 1) {
  BootstrapConfig cfg;
  cfg.m = m;
  cfg.seed = seed;
  cfg.jobs = jobs;
  return cfg;
}

}  // namespace

TEST_CASE("empirical quantiles interpolate order statistics") {
  const std::vector<double> v = {1, 2, 4, 8};
  CHECK(empirical_quantile(v, 0.0) == 1.0);
  CHECK(empirical_quantile(v, 1.0) == 8.0);
  CHECK(empirical_quantile(v, 0.5) == doctest::Approx(3.0));
  CHECK(empirical_quantile(v, 0.25) == doctest::Approx(1.75));
  std::vector<double> forty(40);
  for (int k = 0; k < 40; ++k) forty[k] = k;
  CHECK(empirical_quantile(forty, 0.025) == doctest::Approx(0.975));
  CHECK(empirical_quantile(forty, 0.975) == doctest::Approx(38.025));
  CHECK_THROWS_AS(empirical_quantile(std::vector<double>{}, 0.5), DomainError);
  CHECK_THROWS_AS(empirical_quantile(v, 1.5), DomainError);
}

TEST_CASE("bias correction arithmetic") {
  const LogStrengths original{0.5, -0.2, -0.3};
  Matrix same(5, 3);
  for (int s = 0; s < 5; ++s) same.row(s) << 0.5, -0.2, -0.3;
  const auto fixed = correct_from_replicates(original, same, 0.95);
  for (Index i = 0; i < 3; ++i) {
    CHECK(fixed.corrected[i] == doctest::Approx(original[i]).epsilon(1e-15));
    CHECK(fixed.per_item_bias[i] == doctest::Approx(0.0));
    CHECK(fixed.ci_lower[i] == doctest::Approx(original[i]));
    CHECK(fixed.ci_upper[i] == doctest::Approx(original[i]));
  }

  Matrix shifted(4, 3);
  shifted << 0.6, -0.25, -0.35,
             0.8, -0.35, -0.45,
             0.7, -0.3, -0.4,
             0.7, -0.3, -0.4;
  const auto r = correct_from_replicates(original, shifted, 0.95);
  CHECK(r.per_item_bias[0] == doctest::Approx(0.2));
  CHECK(r.corrected[0] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(r.corrected[1] == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(std::fabs(r.corrected.mean()) < 1e-12);
  // Item 0 replicates sorted: 0.6 0.7 0.7 0.8; q at 0.025 and 0.975 of 3.
  CHECK(r.ci_lower[0] == doctest::Approx(1.0 - (0.8 - 0.075 * 0.1)).epsilon(1e-12));
  CHECK(r.ci_upper[0] == doctest::Approx(1.0 - (0.6 + 0.075 * 0.1)).epsilon(1e-12));

  CHECK_THROWS_AS(correct_from_replicates(original, Matrix(1, 3), 0.95), DomainError);
  CHECK_THROWS_AS(correct_from_replicates(original, Matrix(4, 2), 0.95), DomainError);
  CHECK_THROWS_AS(percentile_ci(r, 1.0), DomainError);
  CHECK_THROWS_AS(percentile_ci(r, 0.0), DomainError);
}

TEST_CASE("configuration validation") {
  BootstrapConfig cfg;
  CHECK_NOTHROW(cfg.validate());
  cfg.m = 1;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  cfg = {};
  cfg.ci_level = 1.2;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
}

TEST_CASE("replicates keep the ancillary part of the schedule") {
  const LogStrengths lambda = normal_strengths(20);
  for (auto kind : {SchedulerKind::kRandom, SchedulerKind::kSwiss}) {
    const Assessment a = simulate_assessment(lambda, {kind, 10}, 3);
    Rng rng(4);
    for (int s = 0; s < 10; ++s) {
      const Assessment rep = replicate_assessment(a, kind, lambda, rng);
      CHECK(rep.tournament.rounds.size() == a.tournament.rounds.size());
      if (kind == SchedulerKind::kRandom) {
        CHECK(rep.tournament == a.tournament);
      } else {
        CHECK(rep.tournament.rounds.front() == a.tournament.rounds.front());
        CHECK_FALSE(rep.tournament == a.tournament);
      }
    }
    const auto result = bias_correct(a, {kind, 10}, Config(10, 5));
    CHECK(result.ancillary_preserved);
    CHECK(result.replicate_estimates.rows() == 10);
    CHECK(result.replicate_estimates.cols() == 20);
  }
}

TEST_CASE("bias_correct is reproducible and independent of jobs") {
  const LogStrengths lambda = normal_strengths(16);
  const Assessment a = simulate_assessment(lambda, {SchedulerKind::kSwiss, 10}, 8);
  const SchedulerSpec spec{SchedulerKind::kSwiss, 10};
  const auto one = bias_correct(a, spec, Config(12, 42, 1));
  const auto three = bias_correct(a, spec, Config(12, 42, 3));
  const auto other = bias_correct(a, spec, Config(12, 43, 1));
  CHECK(one.replicate_estimates == three.replicate_estimates);
  CHECK(one.corrected == three.corrected);
  CHECK(one.ci_lower == three.ci_lower);
  CHECK_FALSE(one.replicate_estimates == other.replicate_estimates);
  CHECK(std::fabs(one.corrected.mean()) < 1e-12);
  for (Index i = 0; i < 16; ++i) {
    CHECK(one.ci_lower[i] < one.ci_upper[i]);
    const double mean = one.replicate_estimates.col(i).mean();
    CHECK(one.corrected[i] == doctest::Approx(2 * one.original[i] - mean).epsilon(1e-10));
  }
}

TEST_CASE("doubling m agrees within Monte Carlo error") {
  const LogStrengths lambda = normal_strengths(20);
  const Assessment a = simulate_assessment(lambda, {SchedulerKind::kRandom, 12}, 21);
  const SchedulerSpec spec{SchedulerKind::kRandom, 12};
  const auto r1 = bias_correct(a, spec, Config(40, 100));
  const auto r2 = bias_correct(a, spec, Config(40, 200));
  const auto big = bias_correct(a, spec, Config(80, 300));
  for (Index i = 0; i < 20; ++i) {
    const auto col = big.replicate_estimates.col(i);
    const double sd = std::sqrt((col.array() - col.mean()).square().sum() / 79.0);
    // Difference of two independent means of 80 draws, scaled by 2 by Eq. 9.
    const double se = 2.0 * sd * std::sqrt(2.0 / 80.0);
    const double avg = 0.5 * (r1.corrected[i] + r2.corrected[i]);
    CHECK(std::fabs(big.corrected[i] - avg) < 4.5 * se);
  }
}

TEST_CASE("failing original fit propagates") {
  // Item 0 wins everything; no unpenalized estimate.
  Assessment a{Tournament{2, {{{0, 1}}, {{0, 1}}}}, {{0}, {0}}};
  BootstrapConfig cfg = Config(5, 1);
  cfg.penalty = {PenaltyKind::kNone, 0};
  CHECK_THROWS_AS(bias_correct(a, {SchedulerKind::kRandom, 2}, cfg), NonFiniteEstimate);
}

TEST_CASE("replicates that cannot be fitted raise after redraws") {
  // Fitted strengths are far apart, so unpenalized replicates separate.
  Assessment a{Tournament{2, {}}, {}};
  for (int r = 0; r < 3; ++r) {
    a.tournament.rounds.push_back({{0, 1}});
    a.winners.push_back({r == 0 ? Index{1} : Index{0}});
  }
  BootstrapConfig cfg = Config(40, 1);
  cfg.penalty = {PenaltyKind::kNone, 0};
  CHECK_THROWS_AS(bias_correct(a, {SchedulerKind::kRandom, 3}, cfg), NumericalError);
}
