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

// Penalized maximum likelihood for the Bradley-Terry model by Gauss-Seidel
// iteration on the penalized score equations
//
//   w_r + a_r(lambda) = sum_{j != r} m_rj p_rj(lambda).
//
// Each sweep visits items in ascending index order and solves the
// one-dimensional equation for lambda_r exactly (safeguarded Newton, steps
// clamped to +-5 logits) holding the other log-strengths fixed.

#include <vector>

#include "cj/model.hpp"
#include "cj/penalties.hpp"

namespace cj {

struct FitConfig {
  // Convergence threshold on max_r |w_r + a_r - sum_j m_rj p_rj|.
  double tolerance = 1e-8;
  // Gauss-Seidel sweeps (outer re-adjustments for fit_firth).
  int max_iterations = 1000;
  // Fraction of each one-dimensional update applied, in (0, 1].
  double damping = 1.0;

  void validate() const;
};

struct FitResult {
  LogStrengths lambda;  // mean zero
  int iterations = 0;
  double max_score_residual = 0;
  PenaltySpec penalty;
  bool converged = false;
};

class NotConverged : public NumericalError {
 public:
  explicit NotConverged(FitResult partial);
  const FitResult& partial() const { return partial_; }

 private:
  FitResult partial_;
};

// Throws NonFiniteEstimate (kind none with separated data), Disconnected
// (kinds none, epsilon and firth on a disconnected comparison graph),
// NotConverged, and DomainError for invalid input.
//
// The dummy penalty is the only one that is not translation invariant; its
// residual is evaluated at the solution before recentering.
FitResult fit(const CountData& counts, const PenaltySpec& penalty,
              const FitConfig& config = {});

// Firth estimate as a fixed point of "compute leverages at lambda, then fit
// the unpenalized model to the leverage-adjusted counts". An independent
// route to fit(counts, firth).
FitResult fit_firth(const CountData& counts, const FitConfig& config = {});

// w_r + a_r - sum_j m_rj p_rj at lambda. For epsilon the penalty uses the
// observed win ratio, for firth the leverages at lambda.
std::vector<double> penalized_score(const CountData& counts,
                                    const LogStrengths& lambda,
                                    const PenaltySpec& penalty);

// Items (or a group of items) whose record makes the unpenalized estimate
// infinite; empty when the maximum likelihood estimate exists.
std::vector<Index> separated_items(const CountData& counts);

}  // namespace cj
