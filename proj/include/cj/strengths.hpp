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

// Deterministic true log-strength grids for simulation studies: quantiles
// at (k - 0.5) / n of a normal, a two-component normal mixture and a skew
// normal distribution, each with mean 0 and standard deviation close to 2.

#include <string_view>

#include "cj/model.hpp"

namespace cj {

enum class DistributionKind { kNormal, kBimodal, kSkewNormal };

std::string_view to_string(DistributionKind kind);
DistributionKind parse_distribution_kind(std::string_view name);

double normal_cdf(double x);
double normal_quantile(double p);

// Owen's T function
//   T(h, a) = (1 / 2 pi) int_0^a exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx
// by adaptive Gauss-Kronrod quadrature of the defining integral.
double owens_t(double h, double a);

struct SkewNormal {
  double shape = 8.0;
  double scale = 3.274;
  double location = -2.592;

  // Phi(z) - 2 T(z, shape), z = (x - location) / scale
  double cdf(double x) const;
  // Bracketing root search on cdf; |cdf(quantile(u)) - u| <= 1e-10.
  // Throws NumericalError if the root finder fails.
  double quantile(double u) const;
};

// 2 Phi^{-1}((k - 0.5) / n), k = 1..n
LogStrengths normal_strengths(Index n);

// (2 / 3.174) (Phi^{-1}((k - 0.5) / (n/2)) -+ 3) for the lower and upper
// halves. n must be even and >= 4.
LogStrengths bimodal_strengths(Index n);

enum class SkewNormalForm {
  // Quantiles of SkewNormal{8, 3.274, -2.592}: mean ~0, SD ~2.
  kCentered,
  // 2 * quantiles of SkewNormal{8, 3.274, +2.592}, as the formula is often
  // printed; mean ~10.4, SD ~4. Kept for comparison only.
  kLiteral,
};

LogStrengths skew_normal_strengths(Index n,
                                   SkewNormalForm form = SkewNormalForm::kCentered);

LogStrengths make_strengths(DistributionKind kind, Index n);

}  // namespace cj
