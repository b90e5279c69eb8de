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

#include <span>
#include <string>
#include <vector>

#include "cj/model.hpp"

namespace cj {

// Rows of `estimates` are simulations, columns items.
std::vector<double> bias(const Matrix& estimates, const LogStrengths& truth);
std::vector<double> mean_absolute_error(const Matrix& estimates,
                                        const LogStrengths& truth);

// Sample standard deviation (divisor n - 1).
double sd_of_estimates(std::span<const double> values);
inline double sd_of_estimates(const LogStrengths& lambda) {
  return sd_of_estimates(lambda.values());
}

// Running fraction of assessments in which each pair was compared at least
// once.
class ComparisonFrequency {
 public:
  explicit ComparisonFrequency(Index n_items);
  void add(const Assessment& assessment);
  std::size_t assessments() const { return count_; }
  // Symmetric, zero diagonal. Throws DomainError if nothing was added.
  Matrix probabilities() const;

 private:
  Index n_;
  std::size_t count_ = 0;
  Matrix hits_;
};

Matrix empirical_comparison_probability(std::span<const Assessment> ensemble);

enum class ProfileKind { kDummy, kAlpha };

// (i, j) entry p_i0 p_0i p_j0 p_0j (dummy) or p_ij p_ji (alpha). The profile
// shape does not depend on the penalty constant. Diagonal entries are
// filled by the same formula.
Matrix penalty_profile(const LogStrengths& lambda, ProfileKind kind);

struct MatrixEntry {
  Index i = 0;
  Index j = 0;
  double value = 0;
};

// Entries with i < j in row-major order.
std::vector<MatrixEntry> upper_triangle(const Matrix& m);

// Pearson correlation over the i < j entries of two equal-size matrices.
double offdiagonal_correlation(const Matrix& a, const Matrix& b);

double pearson_correlation(std::span<const double> a, std::span<const double> b);
// Pearson correlation of mid-ranks.
double spearman_correlation(std::span<const double> a, std::span<const double> b);

struct StudyMeta {
  std::string distribution;
  std::string scheduler;
  std::string penalty;
  std::uint64_t seed = 0;
  std::size_t n_sims = 0;
  std::size_t failed_sims = 0;
};

struct StudyReport {
  std::vector<double> true_lambda;
  std::vector<double> per_item_bias;
  std::vector<double> per_item_mae;
  std::vector<double> per_sim_sd;
  StudyMeta meta;
};

// Assembles a report from an N x n matrix of estimates.
StudyReport make_study_report(const Matrix& estimates, const LogStrengths& truth,
                              StudyMeta meta);

}  // namespace cj
