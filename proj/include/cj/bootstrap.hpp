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

#pragma once

// Schedule-aware parametric bootstrap bias correction.
//
// The original assessment is fitted, then m assessments are resimulated from
// the fitted log-strengths while holding fixed the part of the schedule that
// is ancillary: the whole tournament for random scheduling, only the first
// round for Swiss scheduling (later rounds are re-paired on simulated wins).
// Each replicate is refitted with the same penalty and
//
//   corrected_i = 2 original_i - mean_s replicate_{s,i}.
//
// Percentile intervals replace the replicate mean by its (1 +- level)/2
// empirical quantiles: [2 original - q_hi, 2 original - q_lo].

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "cj/fitter.hpp"
#include "cj/scheduling.hpp"

namespace cj {

struct BootstrapConfig {
  int m = 40;
  PenaltySpec penalty = PenaltySpec::with_default(PenaltyKind::kAlpha);
  std::uint64_t seed = 0;
  double ci_level = 0.95;
  FitConfig fit;
  // Worker threads for replicates; results do not depend on it.
  int jobs = 1;

  void validate() const;
};

struct BiasCorrectedResult {
  LogStrengths original;
  LogStrengths corrected;
  std::vector<double> per_item_bias;  // mean replicate - original
  std::vector<double> ci_lower;
  std::vector<double> ci_upper;
  Matrix replicate_estimates;  // m x n
  // Replicates whose fit failed and were redrawn from a fresh stream.
  int redraws = 0;
  // Every replicate kept the ancillary part of the original schedule.
  bool ancillary_preserved = true;
};

// One bootstrap assessment on the original schedule's ancillary part.
Assessment replicate_assessment(const Assessment& original,
                                SchedulerKind scheduler,
                                const LogStrengths& lambda, Rng& rng);

// Throws DomainError for invalid configuration, the fitter's errors for the
// original fit, and NumericalError when a replicate fails three fresh draws.
BiasCorrectedResult bias_correct(const Assessment& assessment,
                                 const SchedulerSpec& scheduler,
                                 const BootstrapConfig& config);

// Bias correction and intervals from already computed replicate estimates.
BiasCorrectedResult correct_from_replicates(const LogStrengths& original,
                                            const Matrix& replicates,
                                            double level);

// (lower, upper) per item; level in (0, 1), at least two replicates.
std::pair<std::vector<double>, std::vector<double>> percentile_ci(
    const BiasCorrectedResult& result, double level);

// Linear interpolation between order statistics at position q (n - 1).
// `sorted` must be ascending and non-empty; q in [0, 1].
double empirical_quantile(std::span<const double> sorted, double q);

}  // namespace cj
