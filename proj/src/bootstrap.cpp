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

#include "cj/bootstrap.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

#include "cj/parallel.hpp"

namespace cj {
namespace {

constexpr int kAttemptsPerReplicate = 3;

void RequireLevel(double level) {
  if (!(level > 0 && level < 1)) {
    throw DomainError("confidence level must lie in (0, 1)");
  }
}

bool KeepsAncillaryPart(const Assessment& original, const Assessment& replicate,
                        SchedulerKind scheduler) {
  const auto& a = original.tournament.rounds;
  const auto& b = replicate.tournament.rounds;
  if (scheduler == SchedulerKind::kRandom) return a == b;
  return !a.empty() && !b.empty() && a.front() == b.front();
}

}  // namespace

void BootstrapConfig::validate() const {
  if (m < 2) throw DomainError("bootstrap needs m >= 2 replicates");
  RequireLevel(ci_level);
  penalty.validate();
  fit.validate();
}

double empirical_quantile(std::span<const double> sorted, double q) {
  if (sorted.empty()) throw DomainError("quantile of an empty sample");
  if (!(q >= 0 && q <= 1)) throw DomainError("quantile position outside [0, 1]");
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
}

std::pair<std::vector<double>, std::vector<double>> percentile_ci(
    const BiasCorrectedResult& result, double level) {
  RequireLevel(level);
  const Matrix& reps = result.replicate_estimates;
  if (reps.rows() < 2) throw DomainError("intervals need at least two replicates");
  const Index n = result.original.size();
  std::vector<double> lower(n), upper(n), column(reps.rows());
  for (Index i = 0; i < n; ++i) {
    for (Eigen::Index s = 0; s < reps.rows(); ++s) column[s] = reps(s, i);
    std::sort(column.begin(), column.end());
    const double q_lo = empirical_quantile(column, 0.5 * (1.0 - level));
    const double q_hi = empirical_quantile(column, 0.5 * (1.0 + level));
    lower[i] = 2.0 * result.original[i] - q_hi;
    upper[i] = 2.0 * result.original[i] - q_lo;
  }
  return {std::move(lower), std::move(upper)};
}

BiasCorrectedResult correct_from_replicates(const LogStrengths& original,
                                            const Matrix& replicates,
                                            double level) {
  const Index n = original.size();
  if (static_cast<Index>(replicates.cols()) != n) {
    throw DomainError("replicate matrix has the wrong number of items");
  }
  BiasCorrectedResult result;
  result.original = original;
  result.replicate_estimates = replicates;
  result.per_item_bias.resize(n);
  std::vector<double> corrected(n);
  for (Index i = 0; i < n; ++i) {
    const double mean = replicates.col(i).mean();
    result.per_item_bias[i] = mean - original[i];
    corrected[i] = original[i] - result.per_item_bias[i];
  }
  result.corrected = LogStrengths(std::move(corrected));
  std::tie(result.ci_lower, result.ci_upper) = percentile_ci(result, level);
  return result;
}

Assessment replicate_assessment(const Assessment& original,
                                SchedulerKind scheduler,
                                const LogStrengths& lambda, Rng& rng) {
  const Tournament& t = original.tournament;
  if (scheduler == SchedulerKind::kRandom) {
    return simulate_outcomes(t, lambda, rng);
  }
  if (t.rounds.empty()) {
    throw DomainError("swiss bootstrap needs at least one scheduled round");
  }
  return simulate_swiss(t.rounds.front(), static_cast<int>(t.rounds.size()),
                        lambda, rng);
}

BiasCorrectedResult bias_correct(const Assessment& assessment,
                                 const SchedulerSpec& scheduler,
                                 const BootstrapConfig& config) {
  config.validate();
  scheduler.validate();
  const CountData counts = counts_from_assessment(assessment);
  const FitResult base = fit(counts, config.penalty, config.fit);
  const LogStrengths& original = base.lambda;
  const Index n = original.size();

  Matrix replicates(config.m, n);
  std::vector<int> redraws(config.m, 0);
  std::vector<char> ancillary(config.m, 1);
  parallel_for(static_cast<std::size_t>(config.m), config.jobs, [&](std::size_t s) {
    const std::uint64_t stream = derive_seed(config.seed, s);
    for (int attempt = 0; attempt < kAttemptsPerReplicate; ++attempt) {
      Rng rng = Rng::derived(stream, static_cast<std::uint64_t>(attempt));
      const Assessment rep =
          replicate_assessment(assessment, scheduler.kind, original, rng);
      ancillary[s] = KeepsAncillaryPart(assessment, rep, scheduler.kind);
      try {
        const FitResult r = fit(counts_from_assessment(rep), config.penalty,
                                config.fit);
        for (Index i = 0; i < n; ++i) replicates(s, i) = r.lambda[i];
        return;
      } catch (const NumericalError&) {
        ++redraws[s];
      }
    }
    throw NumericalError("bootstrap replicate " + std::to_string(s) +
                         " failed to fit on " +
                         std::to_string(kAttemptsPerReplicate) + " draws");
  });

  BiasCorrectedResult result =
      correct_from_replicates(original, replicates, config.ci_level);
  for (int r : redraws) result.redraws += r;
  result.ancillary_preserved =
      std::all_of(ancillary.begin(), ancillary.end(), [](char c) { return c; });
  return result;
}

}  // namespace cj
