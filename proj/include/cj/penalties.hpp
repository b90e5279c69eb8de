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

// Additive score penalties a_r: the penalized estimating equations are
//
//   w_r + a_r = sum_{j != r} m_rj p_rj   for every item r.

#include <string>
#include <string_view>
#include <vector>

#include "cj/model.hpp"

namespace cj {

enum class PenaltyKind { kNone, kEpsilon, kAlpha, kDummy, kFirth };

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::kNone;
  // epsilon, alpha or c_0; unused for none and firth.
  double constant = 0.0;

  // The kind with its default constant (epsilon 0.3, alpha 0.3, dummy 0.25).
  static PenaltySpec with_default(PenaltyKind kind);
  static double default_constant(PenaltyKind kind);

  void validate() const;
  friend bool operator==(const PenaltySpec&, const PenaltySpec&) = default;
};

std::string_view to_string(PenaltyKind kind);
// Accepts "none", "epsilon", "alpha", "dummy", "firth".
PenaltyKind parse_penalty_kind(std::string_view name);
// e.g. "alpha0.3", "firth"
std::string describe(const PenaltySpec& spec);

// epsilon (1 - 2 w_r / m_r); zero for an item with no comparisons.
double epsilon_penalty(Index r, const CountData& counts,
                       const PenaltySpec& spec);

// w_r + epsilon_penalty(r) - c m_r, with c chosen so that the adjusted wins
// sum to the number of comparisons. The score equations sum to that total,
// so without the shift they have no solution unless the penalties cancel.
// The penalties cancel, and c = 0, whenever all m_r are equal (every item
// compared once a round). Swapping wins and losses negates the adjustment.
std::vector<double> epsilon_adjusted_wins(const CountData& counts,
                                          const PenaltySpec& spec);

// Items with m_r = 0; the score equations leave them undetermined.
std::vector<Index> unconstrained_items(const CountData& counts);

// alpha (1 - 2 mean_{j != r} p_rj)
double alpha_penalty(Index r, const LogStrengths& lambda,
                     const PenaltySpec& spec);

// c_0 (1 - 2 p_r0), where 0 is a dummy item of log-strength zero.
double dummy_penalty(Index r, const LogStrengths& lambda,
                     const PenaltySpec& spec);

// Pairwise leverages h_ij of the binomial paired-comparison design at lambda:
// one row per compared pair (weight m_ij p_ij (1 - p_ij)) and n - 1 columns
// with item 0 as reference. The returned matrix is symmetric with zero
// diagonal and zeros for uncompared pairs; the upper triangle sums to n - 1.
// Throws Disconnected if the comparison graph is not connected.
Matrix pair_leverages(const CountData& counts, const LogStrengths& lambda);

// c*_ij = c_ij + h_ij / 2, m*_ij = m_ij + h_ij.
CountData firth_adjusted_counts(const CountData& counts,
                                const LogStrengths& lambda);
CountData firth_adjusted_counts(const CountData& counts, const Matrix& leverages);

// a_r = (1/2) sum_j h_rj - sum_j p_rj h_rj, the adjusted-data form of the
// Jeffreys-prior score penalty.
double firth_penalty(Index r, const CountData& counts,
                     const LogStrengths& lambda);
// All components at once (one leverage evaluation).
std::vector<double> firth_penalties(const CountData& counts,
                                    const LogStrengths& lambda);
std::vector<double> firth_penalties(const Matrix& leverages,
                                    const LogStrengths& lambda);

// Penalty vector for any kind at lambda. For epsilon this is the effective
// penalty epsilon_adjusted_wins - w. Throws as the individual penalties.
std::vector<double> penalty_vector(const CountData& counts,
                                   const LogStrengths& lambda,
                                   const PenaltySpec& spec);

}  // namespace cj
