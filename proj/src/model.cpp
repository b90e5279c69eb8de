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

#include "cj/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace cj {
namespace {

void RequireFinite(double x, const char* what) {
  if (!std::isfinite(x)) {
    throw DomainError(std::string(what) + " must be finite");
  }
}

void RequireMatchingSize(const CountData& counts, const LogStrengths& lambda) {
  if (lambda.size() != counts.n_items()) {
    throw DomainError("log-strength vector has " +
                      std::to_string(lambda.size()) + " entries but data has " +
                      std::to_string(counts.n_items()) + " items");
  }
}

double LogSigmoid(double d) {
  // log(1 / (1 + e^{-d}))
  return d >= 0 ? -std::log1p(std::exp(-d)) : d - std::log1p(std::exp(d));
}

}  // namespace

LogStrengths::LogStrengths(std::vector<double> values)
    : values_(std::move(values)) {
  if (values_.size() < 2) {
    throw DomainError("log-strengths need at least two items");
  }
  for (double v : values_) RequireFinite(v, "log-strength");
}

LogStrengths::LogStrengths(std::initializer_list<double> values)
    : LogStrengths(std::vector<double>(values)) {}

double LogStrengths::mean() const {
  return std::accumulate(values_.begin(), values_.end(), 0.0) /
         static_cast<double>(values_.size());
}

LogStrengths LogStrengths::centered() const {
  const double mu = mean();
  std::vector<double> out(values_);
  for (double& v : out) v -= mu;
  return LogStrengths(std::move(out));
}

void Tournament::validate() const {
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    for (const Pair& p : rounds[r]) {
      if (p.first >= n_items || p.second >= n_items) {
        throw DomainError("round " + std::to_string(r) +
                          ": item index out of range");
      }
      if (p.first == p.second) {
        throw DomainError("round " + std::to_string(r) +
                          ": item compared with itself");
      }
    }
  }
}

std::size_t Tournament::comparison_count() const {
  std::size_t total = 0;
  for (const Round& r : rounds) total += r.size();
  return total;
}

void Assessment::validate() const {
  tournament.validate();
  if (winners.size() != tournament.rounds.size()) {
    throw DomainError("outcomes do not match the tournament's round count");
  }
  for (std::size_t r = 0; r < winners.size(); ++r) {
    const Round& round = tournament.rounds[r];
    if (winners[r].size() != round.size()) {
      throw DomainError("round " + std::to_string(r) +
                        ": outcome count does not match pair count");
    }
    for (std::size_t k = 0; k < round.size(); ++k) {
      const Index w = winners[r][k];
      if (w != round[k].first && w != round[k].second) {
        throw DomainError("round " + std::to_string(r) +
                          ": winner is not a member of its pair");
      }
    }
  }
}

CountData::CountData(Index n_items)
    : n_(n_items),
      wins_(Matrix::Zero(n_items, n_items)),
      comparisons_(Matrix::Zero(n_items, n_items)) {
  if (n_items == 0) throw DomainError("count data needs at least one item");
}

void CountData::add(Index winner, Index loser, double weight) {
  if (winner >= n_ || loser >= n_) throw DomainError("item index out of range");
  if (winner == loser) throw DomainError("item compared with itself");
  if (!(weight >= 0.0) || !std::isfinite(weight)) {
    throw DomainError("count weight must be finite and non-negative");
  }
  wins_(winner, loser) += weight;
  comparisons_(winner, loser) += weight;
  comparisons_(loser, winner) += weight;
}

double CountData::total_wins(Index r) const { return wins_.row(r).sum(); }

double CountData::total_comparisons(Index r) const {
  return comparisons_.row(r).sum();
}

double CountData::grand_total() const { return wins_.sum(); }

double bt_probability(double lambda_i, double lambda_j) {
  RequireFinite(lambda_i, "lambda_i");
  RequireFinite(lambda_j, "lambda_j");
  const double d = lambda_i - lambda_j;
  if (d >= 0) return 1.0 / (1.0 + std::exp(-d));
  const double e = std::exp(d);
  return e / (1.0 + e);
}

CountData counts_from_assessment(const Assessment& assessment) {
  assessment.validate();
  CountData counts(assessment.tournament.n_items);
  const auto& rounds = assessment.tournament.rounds;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    for (std::size_t k = 0; k < rounds[r].size(); ++k) {
      const Pair& p = rounds[r][k];
      const Index w = assessment.winners[r][k];
      counts.add(w, w == p.first ? p.second : p.first);
    }
  }
  return counts;
}

double log_likelihood(const CountData& counts, const LogStrengths& lambda) {
  RequireMatchingSize(counts, lambda);
  const Index n = counts.n_items();
  double total = 0.0;
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double c = counts.wins(i, j);
      if (c > 0) total += c * LogSigmoid(lambda[i] - lambda[j]);
    }
  }
  return total;
}

std::vector<double> score_vector(const CountData& counts,
                                 const LogStrengths& lambda) {
  RequireMatchingSize(counts, lambda);
  const Index n = counts.n_items();
  std::vector<double> score(n, 0.0);
  // Accumulate per unordered pair so components cancel exactly.
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double m = counts.comparisons(i, j);
      if (m == 0) continue;
      const double excess =
          counts.wins(i, j) - m * bt_probability(lambda[i], lambda[j]);
      score[i] += excess;
      score[j] -= excess;
    }
  }
  return score;
}

Matrix observed_information(const CountData& counts,
                            const LogStrengths& lambda) {
  RequireMatchingSize(counts, lambda);
  const Index n = counts.n_items();
  Matrix info = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double m = counts.comparisons(i, j);
      if (m == 0) continue;
      const double p = bt_probability(lambda[i], lambda[j]);
      const double w = m * p * (1.0 - p);
      info(i, j) -= w;
      info(j, i) -= w;
      info(i, i) += w;
      info(j, j) += w;
    }
  }
  return info;
}

std::vector<std::vector<Index>> connected_components(const CountData& counts) {
  const Index n = counts.n_items();
  std::vector<Index> label(n, n);
  std::vector<std::vector<Index>> components;
  std::vector<Index> stack;
  for (Index start = 0; start < n; ++start) {
    if (label[start] != n) continue;
    const Index id = components.size();
    components.emplace_back();
    stack.push_back(start);
    label[start] = id;
    while (!stack.empty()) {
      const Index u = stack.back();
      stack.pop_back();
      components[id].push_back(u);
      for (Index v = 0; v < n; ++v) {
        if (label[v] == n && counts.comparisons(u, v) > 0) {
          label[v] = id;
          stack.push_back(v);
        }
      }
    }
    std::sort(components[id].begin(), components[id].end());
  }
  return components;
}

}  // namespace cj
