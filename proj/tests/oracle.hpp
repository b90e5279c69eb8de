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

// Brute-force penalized-likelihood maximizer used as an independent check on
// the Gauss-Seidel fitter for small n. Objectives are written out directly
// from the likelihood (no score equations), searched on a grid, refined by
// compass search and polished with finite-difference Newton steps.

#include <Eigen/Cholesky>
#include <Eigen/Core>
#include <algorithm>
#include <cmath>
#include <vector>

#include "cj/model.hpp"
#include "cj/penalties.hpp"

namespace cjtest {

inline double log_sigmoid(double x) {
  return x >= 0 ? -std::log1p(std::exp(-x)) : x - std::log1p(std::exp(x));
}

// Pairwise win counts c[i][j] as plain nested vectors.
struct SmallCounts {
  std::size_t n = 0;
  std::vector<std::vector<double>> c;

  explicit SmallCounts(std::size_t n_items)
      : n(n_items), c(n_items, std::vector<double>(n_items, 0.0)) {}
  double m(std::size_t i, std::size_t j) const { return c[i][j] + c[j][i]; }
  double wins(std::size_t r) const {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += c[r][j];
    return s;
  }
  double comparisons(std::size_t r) const {
    double s = 0;
    for (std::size_t j = 0; j < n; ++j) s += m(r, j);
    return s;
  }
  cj::CountData to_counts() const {
    cj::CountData out(n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (c[i][j] > 0) out.add(i, j, c[i][j]);
      }
    }
    return out;
  }
};

// Transformed sufficient statistics of the epsilon adjustment: each w_r
// mapped into [eps, m_r - eps], then scaled to keep the total.
inline std::vector<double> epsilon_wins(const SmallCounts& d, double eps) {
  std::vector<double> w(d.n), a(d.n);
  double sum_a = 0, sum_m = 0;
  for (std::size_t r = 0; r < d.n; ++r) {
    const double mr = d.comparisons(r);
    a[r] = mr > 0 ? eps - 2 * eps * d.wins(r) / mr : 0.0;
    sum_a += a[r];
    sum_m += mr;
  }
  for (std::size_t r = 0; r < d.n; ++r) {
    w[r] = d.wins(r) + a[r] - sum_a * d.comparisons(r) / sum_m;
  }
  return w;
}

inline double objective(const SmallCounts& d, const std::vector<double>& x,
                        const cj::PenaltySpec& spec) {
  const std::size_t n = d.n;
  double f = 0;
  if (spec.kind == cj::PenaltyKind::kEpsilon) {
    const auto w = epsilon_wins(d, spec.constant);
    for (std::size_t r = 0; r < n; ++r) f += w[r] * x[r];
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const double hi = std::max(x[i], x[j]);
        f -= d.m(i, j) *
             (hi + std::log(std::exp(x[i] - hi) + std::exp(x[j] - hi)));
      }
    }
    return f;
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (d.c[i][j] > 0) f += d.c[i][j] * log_sigmoid(x[i] - x[j]);
    }
  }
  switch (spec.kind) {
    case cj::PenaltyKind::kAlpha:
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
          if (i != j) {
            f += spec.constant / static_cast<double>(n - 1) *
                 log_sigmoid(x[i] - x[j]);
          }
        }
      }
      break;
    case cj::PenaltyKind::kDummy:
      for (std::size_t i = 0; i < n; ++i) {
        f += spec.constant * (log_sigmoid(x[i]) + log_sigmoid(-x[i]));
      }
      break;
    case cj::PenaltyKind::kFirth: {
      // Information with the last item as reference.
      Eigen::MatrixXd info = Eigen::MatrixXd::Zero(n - 1, n - 1);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double p = 1.0 / (1.0 + std::exp(x[j] - x[i]));
          const double v = d.m(i, j) * p * (1 - p);
          if (i < n - 1) info(i, i) += v;
          if (j < n - 1) info(j, j) += v;
          if (i < n - 1 && j < n - 1) {
            info(i, j) -= v;
            info(j, i) -= v;
          }
        }
      }
      const Eigen::LLT<Eigen::MatrixXd> llt(info);
      double logdet = 0;
      for (Eigen::Index k = 0; k < info.rows(); ++k) {
        logdet += 2 * std::log(llt.matrixL()(k, k));
      }
      f += 0.5 * logdet;
      break;
    }
    default:
      break;
  }
  return f;
}

// Every proper subset S must have strictly fewer "wins" than the
// comparisons it takes part in and strictly more than its internal ones.
inline bool subset_condition(const SmallCounts& d, const std::vector<double>& w) {
  const std::size_t n = d.n;
  for (unsigned mask = 1; mask + 1 < (1u << n); ++mask) {
    double ws = 0, internal = 0, cross = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!(mask >> i & 1)) continue;
      ws += w[i];
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        if (mask >> j & 1) {
          if (j > i) internal += d.m(i, j);
        } else {
          cross += d.m(i, j);
        }
      }
    }
    if (!(ws > internal + 1e-12 && ws < internal + cross - 1e-12)) return false;
  }
  return true;
}

inline bool connected(const SmallCounts& d) {
  std::vector<char> seen(d.n, 0);
  std::vector<std::size_t> stack = {0};
  seen[0] = 1;
  while (!stack.empty()) {
    const std::size_t u = stack.back();
    stack.pop_back();
    for (std::size_t v = 0; v < d.n; ++v) {
      if (!seen[v] && d.m(u, v) > 0) {
        seen[v] = 1;
        stack.push_back(v);
      }
    }
  }
  return std::all_of(seen.begin(), seen.end(), [](char c) { return c; });
}

// Mean-zero maximizer of `objective`.
inline std::vector<double> brute_force_fit(const SmallCounts& d,
                                           const cj::PenaltySpec& spec) {
  const std::size_t n = d.n;
  // Translation-invariant objectives: last coordinate pinned at zero.
  const bool pinned = spec.kind != cj::PenaltyKind::kDummy;
  const std::size_t k = pinned ? n - 1 : n;
  const auto full = [&](const std::vector<double>& y) {
    std::vector<double> x(n, 0.0);
    for (std::size_t i = 0; i < k; ++i) x[i] = y[i];
    return x;
  };
  const auto f = [&](const std::vector<double>& y) {
    return objective(d, full(y), spec);
  };

  // Grid.
  const double step = k <= 3 ? 0.5 : 1.0;
  const int per_axis = static_cast<int>(std::lround(12.0 / step)) + 1;
  std::vector<double> best(k, 0.0), y(k);
  double best_f = f(best);
  std::vector<int> idx(k, 0);
  for (;;) {
    for (std::size_t i = 0; i < k; ++i) y[i] = -6.0 + step * idx[i];
    const double v = f(y);
    if (v > best_f) {
      best_f = v;
      best = y;
    }
    std::size_t a = 0;
    while (a < k && ++idx[a] == per_axis) idx[a++] = 0;
    if (a == k) break;
  }

  // Compass search.
  for (double h = step / 2; h > 1e-8; h /= 2) {
    bool improved = true;
    while (improved) {
      improved = false;
      for (std::size_t i = 0; i < k; ++i) {
        for (double s : {h, -h}) {
          y = best;
          y[i] += s;
          const double v = f(y);
          if (v > best_f) {
            best_f = v;
            best = y;
            improved = true;
          }
        }
      }
    }
  }

  // Newton polish with finite differences.
  const double hg = 1e-5, hh = 1e-4;
  const auto grad = [&](const std::vector<double>& z) {
    Eigen::VectorXd g(k);
    for (std::size_t i = 0; i < k; ++i) {
      auto a = z, b = z;
      a[i] += hg;
      b[i] -= hg;
      g[i] = (f(a) - f(b)) / (2 * hg);
    }
    return g;
  };
  for (int it = 0; it < 30; ++it) {
    const Eigen::VectorXd g = grad(best);
    Eigen::MatrixXd hess(k, k);
    for (std::size_t i = 0; i < k; ++i) {
      auto a = best, b = best;
      a[i] += hh;
      b[i] -= hh;
      hess.col(i) = (grad(a) - grad(b)) / (2 * hh);
    }
    hess = 0.5 * (hess + hess.transpose()).eval();
    const Eigen::VectorXd delta = (-hess).ldlt().solve(g);
    std::vector<double> next = best;
    for (std::size_t i = 0; i < k; ++i) next[i] += delta[i];
    if (f(next) < best_f - 1e-12) break;
    best = next;
    best_f = std::max(best_f, f(next));
    if (delta.lpNorm<Eigen::Infinity>() < 1e-11) break;
  }

  std::vector<double> x = full(best);
  double mean = 0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(n);
  for (double& v : x) v -= mean;
  return x;
}

}  // namespace cjtest
