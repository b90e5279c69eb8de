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

#include "cj/penalties.hpp"

#include <Eigen/Cholesky>
#include <cmath>
#include <sstream>

#include "cj/kernels.hpp"

namespace cj {

PenaltySpec PenaltySpec::with_default(PenaltyKind kind) {
  return PenaltySpec{kind, default_constant(kind)};
}

double PenaltySpec::default_constant(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::kEpsilon:
    case PenaltyKind::kAlpha:
      return 0.3;
    case PenaltyKind::kDummy:
      return 0.25;
    case PenaltyKind::kNone:
    case PenaltyKind::kFirth:
      return 0.0;
  }
  return 0.0;
}

void PenaltySpec::validate() const {
  if (!std::isfinite(constant) || constant < 0) {
    throw DomainError("penalty constant must be finite and non-negative");
  }
}

std::string_view to_string(PenaltyKind kind) {
  switch (kind) {
    case PenaltyKind::kNone:
      return "none";
    case PenaltyKind::kEpsilon:
      return "epsilon";
    case PenaltyKind::kAlpha:
      return "alpha";
    case PenaltyKind::kDummy:
      return "dummy";
    case PenaltyKind::kFirth:
      return "firth";
  }
  return "unknown";
}

PenaltyKind parse_penalty_kind(std::string_view name) {
  for (PenaltyKind k : {PenaltyKind::kNone, PenaltyKind::kEpsilon,
                        PenaltyKind::kAlpha, PenaltyKind::kDummy,
                        PenaltyKind::kFirth}) {
    if (name == to_string(k)) return k;
  }
  throw DomainError("unknown penalty kind '" + std::string(name) +
                    "' (expected none, epsilon, alpha, dummy or firth)");
}

std::string describe(const PenaltySpec& spec) {
  std::ostringstream out;
  out << to_string(spec.kind);
  if (spec.kind != PenaltyKind::kNone && spec.kind != PenaltyKind::kFirth) {
    out << spec.constant;
  }
  return out.str();
}

double epsilon_penalty(Index r, const CountData& counts,
                       const PenaltySpec& spec) {
  const double m = counts.total_comparisons(r);
  if (m == 0) return 0.0;
  return spec.constant * (1.0 - 2.0 * counts.total_wins(r) / m);
}

std::vector<double> epsilon_adjusted_wins(const CountData& counts,
                                          const PenaltySpec& spec) {
  const Index n = counts.n_items();
  std::vector<double> w(n);
  double excess = 0.0, games = 0.0;
  for (Index r = 0; r < n; ++r) {
    const double a = epsilon_penalty(r, counts, spec);
    w[r] = counts.total_wins(r) + a;
    excess += a;
    games += counts.total_comparisons(r);
  }
  if (excess != 0.0 && games > 0.0) {
    const double shift = excess / games;
    for (Index r = 0; r < n; ++r) w[r] -= shift * counts.total_comparisons(r);
  }
  return w;
}

std::vector<Index> unconstrained_items(const CountData& counts) {
  std::vector<Index> out;
  for (Index r = 0; r < counts.n_items(); ++r) {
    if (counts.total_comparisons(r) == 0) out.push_back(r);
  }
  return out;
}

double alpha_penalty(Index r, const LogStrengths& lambda,
                     const PenaltySpec& spec) {
  const std::size_t n = lambda.size();
  if (r >= n) throw DomainError("item index out of range");
  double sum_p = 0.0;
  for (Index j = 0; j < n; ++j) {
    if (j != r) sum_p += bt_probability(lambda[r], lambda[j]);
  }
  return spec.constant * (1.0 - 2.0 * sum_p / static_cast<double>(n - 1));
}

double dummy_penalty(Index r, const LogStrengths& lambda,
                     const PenaltySpec& spec) {
  if (r >= lambda.size()) throw DomainError("item index out of range");
  return spec.constant * (1.0 - 2.0 * bt_probability(lambda[r], 0.0));
}

Matrix pair_leverages(const CountData& counts, const LogStrengths& lambda) {
  const Index n = counts.n_items();
  if (lambda.size() != n) throw DomainError("log-strength length mismatch");
  auto components = connected_components(counts);
  if (components.size() > 1) throw Disconnected(std::move(components));

  // Information of the reduced design (item 0 as reference) is the observed
  // information with row and column 0 removed.
  const Matrix full = observed_information(counts, lambda);
  const Eigen::MatrixXd reduced = full.bottomRightCorner(n - 1, n - 1);
  Eigen::LLT<Eigen::MatrixXd> llt(reduced);
  if (llt.info() != Eigen::Success) {
    throw NumericalError("information matrix is not positive definite");
  }
  Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(n, n);
  cov.bottomRightCorner(n - 1, n - 1) =
      llt.solve(Eigen::MatrixXd::Identity(n - 1, n - 1));

  // Row for pair (i, j) is e_i - e_j, so its hat diagonal is
  // w_ij (V_ii + V_jj - 2 V_ij).
  Matrix h = Matrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (counts.comparisons(i, j) == 0) continue;
      const double weight = -full(i, j);
      const double q = cov(i, i) + cov(j, j) - 2.0 * cov(i, j);
      h(i, j) = h(j, i) = weight * q;
    }
  }
  return h;
}

CountData firth_adjusted_counts(const CountData& counts,
                                const Matrix& leverages) {
  const Index n = counts.n_items();
  CountData adjusted(n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i == j) continue;
      const double c = counts.wins(i, j) + 0.5 * leverages(i, j);
      if (c > 0) adjusted.add(i, j, c);
    }
  }
  return adjusted;
}

CountData firth_adjusted_counts(const CountData& counts,
                                const LogStrengths& lambda) {
  return firth_adjusted_counts(counts, pair_leverages(counts, lambda));
}

std::vector<double> firth_penalties(const Matrix& leverages,
                                    const LogStrengths& lambda) {
  const Index n = lambda.size();
  std::vector<double> out(n);
  for (Index r = 0; r < n; ++r) {
    const auto m = kernels::row_moments(
        lambda[r], lambda.values(), {leverages.row(r).data(), n});
    // sum_j h_rj - the diagonal is zero so self terms drop out.
    out[r] = 0.5 * leverages.row(r).sum() - m.weighted_p;
  }
  return out;
}

std::vector<double> firth_penalties(const CountData& counts,
                                    const LogStrengths& lambda) {
  return firth_penalties(pair_leverages(counts, lambda), lambda);
}

double firth_penalty(Index r, const CountData& counts,
                     const LogStrengths& lambda) {
  if (r >= counts.n_items()) throw DomainError("item index out of range");
  return firth_penalties(counts, lambda)[r];
}

std::vector<double> penalty_vector(const CountData& counts,
                                   const LogStrengths& lambda,
                                   const PenaltySpec& spec) {
  const Index n = counts.n_items();
  if (lambda.size() != n) throw DomainError("log-strength length mismatch");
  std::vector<double> a(n, 0.0);
  switch (spec.kind) {
    case PenaltyKind::kNone:
      break;
    case PenaltyKind::kEpsilon:
    {
      const auto w = epsilon_adjusted_wins(counts, spec);
      for (Index r = 0; r < n; ++r) a[r] = w[r] - counts.total_wins(r);
      break;
    }
    case PenaltyKind::kAlpha:
      for (Index r = 0; r < n; ++r) a[r] = alpha_penalty(r, lambda, spec);
      break;
    case PenaltyKind::kDummy:
      for (Index r = 0; r < n; ++r) a[r] = dummy_penalty(r, lambda, spec);
      break;
    case PenaltyKind::kFirth:
      a = firth_penalties(counts, lambda);
      break;
  }
  return a;
}

}  // namespace cj
