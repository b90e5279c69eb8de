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

#include "cj/strengths.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/erf.hpp>
#include <boost/math/tools/roots.hpp>
#include <cmath>
#include <numbers>
#include <string>

namespace cj {
namespace {

void RequireItems(Index n, Index minimum) {
  if (n < minimum) {
    throw DomainError("need at least " + std::to_string(minimum) + " items");
  }
}

}  // namespace

std::string_view to_string(DistributionKind kind) {
  switch (kind) {
    case DistributionKind::kNormal:
      return "normal";
    case DistributionKind::kBimodal:
      return "bimodal";
    case DistributionKind::kSkewNormal:
      return "skew_normal";
  }
  return "unknown";
}

DistributionKind parse_distribution_kind(std::string_view name) {
  if (name == "normal") return DistributionKind::kNormal;
  if (name == "bimodal") return DistributionKind::kBimodal;
  if (name == "skew_normal" || name == "skew-normal") {
    return DistributionKind::kSkewNormal;
  }
  throw DomainError("unknown distribution '" + std::string(name) +
                    "' (expected normal, bimodal or skew_normal)");
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double normal_quantile(double p) {
  if (!(p > 0 && p < 1)) throw DomainError("normal quantile needs p in (0, 1)");
  return -std::numbers::sqrt2 * boost::math::erfc_inv(2.0 * p);
}

double owens_t(double h, double a) {
  if (!std::isfinite(h) || !std::isfinite(a)) {
    throw DomainError("owens_t arguments must be finite");
  }
  if (a == 0) return 0.0;
  const double hh = 0.5 * h * h;
  auto integrand = [hh](double x) {
    const double t = 1.0 + x * x;
    return std::exp(-hh * t) / t;
  };
  double error = 0;
  const double value = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
      integrand, 0.0, std::fabs(a), 30, 1e-14, &error);
  return std::copysign(value, a) / (2.0 * std::numbers::pi);
}

double SkewNormal::cdf(double x) const {
  const double z = (x - location) / scale;
  return normal_cdf(z) - 2.0 * owens_t(z, shape);
}

double SkewNormal::quantile(double u) const {
  if (!(u > 0 && u < 1)) throw DomainError("quantile needs u in (0, 1)");
  auto f = [&](double x) { return cdf(x) - u; };
  double lo = location - scale;
  double hi = location + scale;
  for (int k = 0; f(lo) > 0; ++k) {
    if (k > 200) throw NumericalError("skew normal quantile: no lower bracket");
    lo -= scale * (1 << std::min(k, 20));
  }
  for (int k = 0; f(hi) < 0; ++k) {
    if (k > 200) throw NumericalError("skew normal quantile: no upper bracket");
    hi += scale * (1 << std::min(k, 20));
  }
  std::uintmax_t max_iter = 200;
  const auto tol = [](double a, double b) { return std::fabs(b - a) <= 1e-13; };
  const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, tol, max_iter);
  if (max_iter >= 200) throw NumericalError("skew normal quantile did not converge");
  return 0.5 * (a + b);
}

LogStrengths normal_strengths(Index n) {
  RequireItems(n, 2);
  std::vector<double> v(n);
  for (Index k = 0; k < n; ++k) {
    v[k] = 2.0 * normal_quantile((static_cast<double>(k) + 0.5) / n);
  }
  // Pair up mirrored quantiles so the grid is exactly antisymmetric.
  for (Index k = 0; k < n / 2; ++k) v[n - 1 - k] = -v[k];
  if (n % 2 == 1) v[n / 2] = 0.0;
  return LogStrengths(std::move(v));
}

LogStrengths bimodal_strengths(Index n) {
  RequireItems(n, 4);
  if (n % 2 != 0) throw DomainError("bimodal strengths need an even item count");
  const Index half = n / 2;
  const double scale = 2.0 / 3.174;
  std::vector<double> v(n);
  for (Index k = 0; k < half; ++k) {
    const double q = normal_quantile((static_cast<double>(k) + 0.5) / half);
    v[k] = scale * (q - 3.0);
  }
  for (Index k = 0; k < half; ++k) v[n - 1 - k] = -v[k];
  return LogStrengths(std::move(v));
}

LogStrengths skew_normal_strengths(Index n, SkewNormalForm form) {
  RequireItems(n, 2);
  SkewNormal dist;
  double factor = 1.0;
  if (form == SkewNormalForm::kLiteral) {
    dist.location = 2.592;
    factor = 2.0;
  }
  std::vector<double> v(n);
  for (Index k = 0; k < n; ++k) {
    v[k] = factor * dist.quantile((static_cast<double>(k) + 0.5) / n);
  }
  return LogStrengths(std::move(v));
}

LogStrengths make_strengths(DistributionKind kind, Index n) {
  switch (kind) {
    case DistributionKind::kNormal:
      return normal_strengths(n);
    case DistributionKind::kBimodal:
      return bimodal_strengths(n);
    case DistributionKind::kSkewNormal:
      return skew_normal_strengths(n);
  }
  throw DomainError("unknown distribution");
}

}  // namespace cj
