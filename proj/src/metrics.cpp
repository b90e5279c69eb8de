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

#include "cj/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace cj {
namespace {

void RequireShape(const Matrix& estimates, const LogStrengths& truth) {
  if (estimates.rows() == 0) throw DomainError("no simulations to summarize");
  if (static_cast<std::size_t>(estimates.cols()) != truth.size()) {
    throw DomainError("estimate matrix has " + std::to_string(estimates.cols()) +
                      " items but truth has " + std::to_string(truth.size()));
  }
}

std::vector<double> MidRanks(std::span<const double> v) {
  std::vector<std::size_t> order(v.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
  std::vector<double> rank(v.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t end = k + 1;
    while (end < order.size() && v[order[end]] == v[order[k]]) ++end;
    const double mid = 0.5 * static_cast<double>(k + end - 1) + 1.0;
    for (std::size_t t = k; t < end; ++t) rank[order[t]] = mid;
    k = end;
  }
  return rank;
}

}  // namespace

std::vector<double> bias(const Matrix& estimates, const LogStrengths& truth) {
  RequireShape(estimates, truth);
  std::vector<double> out(truth.size());
  for (Index i = 0; i < truth.size(); ++i) {
    out[i] = estimates.col(i).mean() - truth[i];
  }
  return out;
}

std::vector<double> mean_absolute_error(const Matrix& estimates,
                                        const LogStrengths& truth) {
  RequireShape(estimates, truth);
  std::vector<double> out(truth.size());
  for (Index i = 0; i < truth.size(); ++i) {
    out[i] = (estimates.col(i).array() - truth[i]).abs().mean();
  }
  return out;
}

double sd_of_estimates(std::span<const double> values) {
  if (values.size() < 2) throw DomainError("standard deviation needs n >= 2");
  // Welford; exact zero for constant input.
  double mean = 0.0, ss = 0.0, k = 0.0;
  for (double v : values) {
    k += 1.0;
    const double d = v - mean;
    mean += d / k;
    ss += d * (v - mean);
  }
  return std::sqrt(ss / (k - 1.0));
}

ComparisonFrequency::ComparisonFrequency(Index n_items)
    : n_(n_items), hits_(Matrix::Zero(n_items, n_items)) {}

void ComparisonFrequency::add(const Assessment& assessment) {
  if (assessment.tournament.n_items != n_) {
    throw DomainError("assessment item count differs from the ensemble");
  }
  Matrix seen = Matrix::Zero(n_, n_);
  for (const Round& round : assessment.tournament.rounds) {
    for (const Pair& p : round) {
      seen(p.first, p.second) = 1.0;
      seen(p.second, p.first) = 1.0;
    }
  }
  hits_ += seen;
  ++count_;
}

Matrix ComparisonFrequency::probabilities() const {
  if (count_ == 0) throw DomainError("empty assessment ensemble");
  return hits_ / static_cast<double>(count_);
}

Matrix empirical_comparison_probability(std::span<const Assessment> ensemble) {
  if (ensemble.empty()) throw DomainError("empty assessment ensemble");
  ComparisonFrequency freq(ensemble.front().tournament.n_items);
  for (const Assessment& a : ensemble) freq.add(a);
  return freq.probabilities();
}

Matrix penalty_profile(const LogStrengths& lambda, ProfileKind kind) {
  const Index n = lambda.size();
  Matrix out(n, n);
  std::vector<double> dummy(n);
  for (Index i = 0; i < n; ++i) {
    const double p = bt_probability(lambda[i], 0.0);
    dummy[i] = p * (1.0 - p);
  }
  for (Index i = 0; i < n; ++i) {
    for (Index j = i; j < n; ++j) {
      double v;
      if (kind == ProfileKind::kDummy) {
        v = dummy[i] * dummy[j];
      } else {
        const double p = bt_probability(lambda[i], lambda[j]);
        v = p * (1.0 - p);
      }
      out(i, j) = v;
      out(j, i) = v;
    }
  }
  return out;
}

std::vector<MatrixEntry> upper_triangle(const Matrix& m) {
  if (m.rows() != m.cols()) throw DomainError("matrix must be square");
  const Index n = m.rows();
  std::vector<MatrixEntry> out;
  out.reserve(n * (n - 1) / 2);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) out.push_back({i, j, m(i, j)});
  }
  return out;
}

double pearson_correlation(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.size() < 2) {
    throw DomainError("correlation needs two samples of equal size >= 2");
  }
  const double n = static_cast<double>(a.size());
  const double ma = std::accumulate(a.begin(), a.end(), 0.0) / n;
  const double mb = std::accumulate(b.begin(), b.end(), 0.0) / n;
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    sab += (a[k] - ma) * (b[k] - mb);
    saa += (a[k] - ma) * (a[k] - ma);
    sbb += (b[k] - mb) * (b[k] - mb);
  }
  if (saa == 0 || sbb == 0) return 0.0;
  return sab / std::sqrt(saa * sbb);
}

double spearman_correlation(std::span<const double> a, std::span<const double> b) {
  const auto ra = MidRanks(a);
  const auto rb = MidRanks(b);
  return pearson_correlation(ra, rb);
}

double offdiagonal_correlation(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DomainError("matrices differ in shape");
  }
  std::vector<double> va, vb;
  for (const auto& e : upper_triangle(a)) va.push_back(e.value);
  for (const auto& e : upper_triangle(b)) vb.push_back(e.value);
  return pearson_correlation(va, vb);
}

StudyReport make_study_report(const Matrix& estimates, const LogStrengths& truth,
                              StudyMeta meta) {
  StudyReport report;
  report.true_lambda.assign(truth.values().begin(), truth.values().end());
  report.per_item_bias = bias(estimates, truth);
  report.per_item_mae = mean_absolute_error(estimates, truth);
  report.per_sim_sd.reserve(estimates.rows());
  std::vector<double> row(estimates.cols());
  for (Eigen::Index s = 0; s < estimates.rows(); ++s) {
    for (Eigen::Index i = 0; i < estimates.cols(); ++i) row[i] = estimates(s, i);
    report.per_sim_sd.push_back(sd_of_estimates(row));
  }
  report.meta = std::move(meta);
  return report;
}

}  // namespace cj
