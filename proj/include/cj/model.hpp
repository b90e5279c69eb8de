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

// Bradley-Terry model over pairwise preference counts:
//
//   logit P(i preferred to j) = lambda_i - lambda_j.
//
// Sufficient statistics are the win counts c_ij and comparison counts
// m_ij = c_ij + c_ji. Counts are stored as dense n x n row-major matrices of
// doubles (fractional counts arise from leverage adjustments).

#include <Eigen/Core>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "cj/errors.hpp"

namespace cj {

using Matrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Item log-strengths. Always finite, at least two items.
class LogStrengths {
 public:
  LogStrengths() = default;
  explicit LogStrengths(std::vector<double> values);
  LogStrengths(std::initializer_list<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](Index i) const { return values_[i]; }
  std::span<const double> values() const { return values_; }
  const double* data() const { return values_.data(); }

  double mean() const;
  // Copy shifted so the values have mean zero.
  LogStrengths centered() const;

  friend bool operator==(const LogStrengths&, const LogStrengths&) = default;

 private:
  std::vector<double> values_;
};

struct Pair {
  Index first = 0;
  Index second = 0;
  friend bool operator==(const Pair&, const Pair&) = default;
};

using Round = std::vector<Pair>;

// A schedule of comparisons, without outcomes.
struct Tournament {
  Index n_items = 0;
  std::vector<Round> rounds;

  // Throws DomainError on self-pairs or out-of-range indices.
  void validate() const;
  std::size_t comparison_count() const;
  friend bool operator==(const Tournament&, const Tournament&) = default;
};

// A tournament together with its observed preferences: winners[r][k] is the
// preferred item of tournament.rounds[r][k].
struct Assessment {
  Tournament tournament;
  std::vector<std::vector<Index>> winners;

  void validate() const;
  friend bool operator==(const Assessment&, const Assessment&) = default;
};

class CountData {
 public:
  CountData() = default;
  explicit CountData(Index n_items);

  Index n_items() const { return n_; }

  // Records `weight` preferences of `winner` over `loser`.
  void add(Index winner, Index loser, double weight = 1.0);

  double wins(Index i, Index j) const { return wins_(i, j); }
  double comparisons(Index i, Index j) const { return comparisons_(i, j); }
  // w_r = sum_j c_rj
  double total_wins(Index r) const;
  // m_r = sum_j m_rj
  double total_comparisons(Index r) const;
  double grand_total() const;

  const Matrix& win_matrix() const { return wins_; }
  const Matrix& comparison_matrix() const { return comparisons_; }
  std::span<const double> comparison_row(Index r) const {
    return {comparisons_.row(r).data(), n_};
  }

 private:
  Index n_ = 0;
  Matrix wins_;
  Matrix comparisons_;
};

// e^{a} / (e^{a} + e^{b}), stable for large |a - b|.
double bt_probability(double lambda_i, double lambda_j);

CountData counts_from_assessment(const Assessment& assessment);

double log_likelihood(const CountData& counts, const LogStrengths& lambda);

// Component r: w_r - sum_{j != r} m_rj p_rj.
std::vector<double> score_vector(const CountData& counts,
                                 const LogStrengths& lambda);

// Negative Hessian of the log-likelihood. Rank n - 1 on a connected graph.
Matrix observed_information(const CountData& counts,
                            const LogStrengths& lambda);

// Connected components of the graph with edges {i, j : m_ij > 0}, each sorted,
// ordered by smallest member.
std::vector<std::vector<Index>> connected_components(const CountData& counts);

}  // namespace cj
