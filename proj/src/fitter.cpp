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

#include "cj/fitter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "cj/kernels.hpp"

namespace cj {
namespace {

constexpr double kMaxNewtonStep = 5.0;
constexpr int kMaxNewtonIterations = 100;

bool TranslationInvariant(PenaltyKind kind) {
  return kind != PenaltyKind::kDummy;
}

void Recenter(std::vector<double>& x) {
  double mu = 0.0;
  for (double v : x) mu += v;
  mu /= static_cast<double>(x.size());
  for (double& v : x) v -= mu;
}

// Kosaraju over the win digraph (edge i -> j when i was preferred to j).
// Returns the component id of each vertex; ids are in topological order of
// the condensation, so component 0 is a source.
std::vector<Index> StrongComponents(const CountData& counts, Index* count) {
  const Index n = counts.n_items();
  std::vector<Index> order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  std::vector<std::pair<Index, Index>> stack;
  for (Index s = 0; s < n; ++s) {
    if (seen[s]) continue;
    seen[s] = 1;
    stack.push_back({s, 0});
    while (!stack.empty()) {
      auto& [u, next] = stack.back();
      while (next < n && (seen[next] || counts.wins(u, next) <= 0)) ++next;
      if (next < n) {
        const Index v = next++;
        seen[v] = 1;
        stack.push_back({v, 0});
      } else {
        order.push_back(u);
        stack.pop_back();
      }
    }
  }
  const Index unset = std::numeric_limits<Index>::max();
  std::vector<Index> comp(n, unset);
  Index id = 0;
  std::vector<Index> work;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] != unset) continue;
    comp[*it] = id;
    work.push_back(*it);
    while (!work.empty()) {
      const Index u = work.back();
      work.pop_back();
      for (Index v = 0; v < n; ++v) {
        if (comp[v] == unset && counts.wins(v, u) > 0) {
          comp[v] = id;
          work.push_back(v);
        }
      }
    }
    ++id;
  }
  *count = id;
  return comp;
}

class GaussSeidel {
 public:
  GaussSeidel(const CountData& counts, const PenaltySpec& penalty,
              const FitConfig& config)
      : counts_(counts),
        penalty_(penalty),
        config_(config),
        n_(counts.n_items()),
        x_(n_, 0.0),
        target_(n_),
        weights_(counts.comparison_matrix()) {
    // The epsilon adjustment depends only on the data: fold it into w_r.
    if (penalty.kind == PenaltyKind::kEpsilon) {
      target_ = epsilon_adjusted_wins(counts, penalty);
    } else {
      for (Index r = 0; r < n_; ++r) target_[r] = counts.total_wins(r);
    }
    base_target_ = target_;
  }

  FitResult run() {
    double residual = std::numeric_limits<double>::infinity();
    int sweeps = 0;
    for (;; ++sweeps) {
      if (penalty_.kind == PenaltyKind::kFirth) RefreshLeverages();
      residual = MaxResidual();
      if (residual <= config_.tolerance) break;
      if (sweeps == config_.max_iterations) break;
      Sweep();
    }
    FitResult result;
    std::vector<double> reported(x_);
    Recenter(reported);
    result.lambda = LogStrengths(std::move(reported));
    result.iterations = sweeps;
    result.max_score_residual = residual;
    result.penalty = penalty_;
    result.converged = residual <= config_.tolerance;
    if (!result.converged) throw NotConverged(std::move(result));
    return result;
  }

 private:
  // For firth the equations are solved on leverage-adjusted data with the
  // leverages frozen for the duration of a sweep.
  void RefreshLeverages() {
    const Matrix h = pair_leverages(counts_, LogStrengths(x_));
    weights_ = counts_.comparison_matrix() + h;
    for (Index r = 0; r < n_; ++r) {
      target_[r] = base_target_[r] + 0.5 * h.row(r).sum();
    }
  }

  std::span<const double> WeightRow(Index r) const {
    return {weights_.row(r).data(), n_};
  }

  // f(t) for item r with lambda_r = t and its derivative.
  std::pair<double, double> Equation(Index r, double t) const {
    const auto m = kernels::row_moments(t, x_, WeightRow(r));
    double f = target_[r] - m.weighted_p;
    double df = -m.weighted_info;
    if (penalty_.kind == PenaltyKind::kAlpha) {
      // Remove the j = r term: the row includes p(t - x_r).
      const double self_p = bt_probability(t, x_[r]);
      const double sum_p = m.sum_p - self_p;
      const double sum_info = m.sum_info - self_p * (1.0 - self_p);
      const double scale = 2.0 * penalty_.constant / static_cast<double>(n_ - 1);
      f += penalty_.constant - scale * sum_p;
      df -= scale * sum_info;
    } else if (penalty_.kind == PenaltyKind::kDummy) {
      const double p0 = bt_probability(t, 0.0);
      f += penalty_.constant * (1.0 - 2.0 * p0);
      df -= 2.0 * penalty_.constant * p0 * (1.0 - p0);
    }
    return {f, df};
  }

  double SolveItem(Index r) const {
    double t = x_[r];
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (int it = 0; it < kMaxNewtonIterations; ++it) {
      const auto [f, df] = Equation(r, t);
      if (f == 0.0) return t;
      // f is strictly decreasing in t.
      if (f > 0) lo = t; else hi = t;
      if (!(df < 0)) {
        // Flat: no information about this item at t. Move toward the root.
        const double step = f > 0 ? kMaxNewtonStep : -kMaxNewtonStep;
        t = std::isfinite(lo) && std::isfinite(hi) ? 0.5 * (lo + hi) : t + step;
        continue;
      }
      const double step = std::clamp(-f / df, -kMaxNewtonStep, kMaxNewtonStep);
      if (std::fabs(step) <= 1e-15 * (1.0 + std::fabs(t))) return t;
      double next = t + step;
      // A Newton step can only leave the bracket through an end that is
      // already finite.
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      t = next;
    }
    return t;
  }

  void Sweep() {
    for (Index r = 0; r < n_; ++r) {
      const double solved = SolveItem(r);
      x_[r] += config_.damping * (solved - x_[r]);
    }
    if (TranslationInvariant(penalty_.kind)) Recenter(x_);
  }

  double MaxResidual() const {
    double worst = 0.0;
    for (Index r = 0; r < n_; ++r) {
      worst = std::max(worst, std::fabs(Equation(r, x_[r]).first));
    }
    return worst;
  }

  const CountData& counts_;
  PenaltySpec penalty_;
  FitConfig config_;
  Index n_;
  std::vector<double> x_;
  std::vector<double> target_;
  std::vector<double> base_target_;
  Matrix weights_;
};

void CheckFittable(const CountData& counts, const PenaltySpec& penalty) {
  penalty.validate();
  if (counts.n_items() < 2) throw DomainError("need at least two items");
  if (counts.grand_total() <= 0) throw DomainError("data has no comparisons");
  const PenaltyKind k = penalty.kind;
  if (k == PenaltyKind::kNone || k == PenaltyKind::kEpsilon ||
      k == PenaltyKind::kFirth) {
    auto components = connected_components(counts);
    if (components.size() > 1) throw Disconnected(std::move(components));
  }
  if (k == PenaltyKind::kNone) {
    auto items = separated_items(counts);
    if (!items.empty()) throw NonFiniteEstimate(std::move(items));
  }
}

}  // namespace

void FitConfig::validate() const {
  if (!(tolerance > 0)) throw DomainError("fit tolerance must be positive");
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (!(damping > 0 && damping <= 1)) {
    throw DomainError("damping must lie in (0, 1]");
  }
}

NotConverged::NotConverged(FitResult partial)
    : NumericalError("fit did not converge after " +
                     std::to_string(partial.iterations) +
                     " iterations (max score residual " +
                     std::to_string(partial.max_score_residual) + ")"),
      partial_(std::move(partial)) {}

std::vector<Index> separated_items(const CountData& counts) {
  std::vector<Index> out;
  for (Index r = 0; r < counts.n_items(); ++r) {
    const double w = counts.total_wins(r);
    const double m = counts.total_comparisons(r);
    if (w == 0 || w == m) out.push_back(r);
  }
  if (!out.empty()) return out;
  Index n_components = 0;
  const auto comp = StrongComponents(counts, &n_components);
  if (n_components <= 1) return out;
  // Component 0 is a source of the condensation: its members were never
  // beaten by an item outside it.
  for (Index r = 0; r < counts.n_items(); ++r) {
    if (comp[r] == 0) out.push_back(r);
  }
  return out;
}

std::vector<double> penalized_score(const CountData& counts,
                                    const LogStrengths& lambda,
                                    const PenaltySpec& penalty) {
  std::vector<double> s = score_vector(counts, lambda);
  if (penalty.kind == PenaltyKind::kFirth) {
    // Score on adjusted data: w*_r - sum_j m*_rj p_rj = s_r + a_r.
    const auto a = firth_penalties(counts, lambda);
    for (Index r = 0; r < s.size(); ++r) s[r] += a[r];
    return s;
  }
  const auto a = penalty_vector(counts, lambda, penalty);
  for (Index r = 0; r < s.size(); ++r) s[r] += a[r];
  return s;
}

FitResult fit(const CountData& counts, const PenaltySpec& penalty,
              const FitConfig& config) {
  config.validate();
  CheckFittable(counts, penalty);
  return GaussSeidel(counts, penalty, config).run();
}

FitResult fit_firth(const CountData& counts, const FitConfig& config) {
  config.validate();
  const PenaltySpec firth{PenaltyKind::kFirth, 0.0};
  CheckFittable(counts, firth);
  const PenaltySpec none{PenaltyKind::kNone, 0.0};

  const Index n = counts.n_items();
  LogStrengths current(std::vector<double>(n, 0.0));
  FitConfig inner = config;
  inner.tolerance = std::min(config.tolerance, 1e-10);
  double residual = std::numeric_limits<double>::infinity();
  int outer = 0;
  for (; outer < config.max_iterations; ++outer) {
    const CountData adjusted = firth_adjusted_counts(counts, current);
    const FitResult refit = fit(adjusted, none, inner);
    double move = 0.0;
    for (Index i = 0; i < n; ++i) {
      move = std::max(move, std::fabs(refit.lambda[i] - current[i]));
    }
    current = refit.lambda;
    if (move < config.tolerance) {
      const auto s = penalized_score(counts, current, firth);
      residual = 0.0;
      for (double v : s) residual = std::max(residual, std::fabs(v));
      if (residual <= config.tolerance) {
        ++outer;
        break;
      }
    }
  }
  FitResult result;
  result.lambda = current;
  result.iterations = outer;
  if (!std::isfinite(residual)) {
    residual = 0.0;
    for (double v : penalized_score(counts, current, firth)) {
      residual = std::max(residual, std::fabs(v));
    }
  }
  result.max_score_residual = residual;
  result.penalty = firth;
  result.converged = residual <= config.tolerance;
  if (!result.converged) throw NotConverged(std::move(result));
  return result;
}

}  // namespace cj
