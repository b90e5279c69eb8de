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

#include "cj/study.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cj/bootstrap.hpp"
#include "cj/csv.hpp"
#include "cj/io.hpp"
#include "cj/parallel.hpp"

namespace cj {
namespace {

struct SimOutcome {
  std::vector<std::optional<std::vector<double>>> estimate;  // per penalty
  std::vector<std::optional<std::vector<double>>> corrected;
  std::vector<std::vector<char>> covered;
  std::vector<int> redraws;
};

double Median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t h = v.size() / 2;
  return v.size() % 2 ? v[h] : 0.5 * (v[h - 1] + v[h]);
}

double MeanAbs(const std::vector<double>& v) {
  double s = 0;
  for (double x : v) s += std::abs(x);
  return v.empty() ? std::nan("") : s / static_cast<double>(v.size());
}

Matrix Stack(const std::vector<std::vector<double>>& rows, Index n) {
  Matrix m(rows.size(), n);
  for (std::size_t s = 0; s < rows.size(); ++s) {
    for (Index i = 0; i < n; ++i) m(s, i) = rows[s][i];
  }
  return m;
}

std::string Fmt(double v) { return csv::format_double(v); }

}  // namespace

std::uint64_t assessment_seed(std::uint64_t master, DistributionKind distribution,
                              SchedulerKind scheduler, int sim) {
  std::uint64_t s = derive_seed(master, static_cast<std::uint64_t>(distribution) + 1);
  s = derive_seed(s, static_cast<std::uint64_t>(scheduler) + 1);
  return derive_seed(s, static_cast<std::uint64_t>(sim));
}

std::string cell_name(const StudyCell& cell) {
  return std::string(to_string(cell.distribution)) + "_" +
         std::string(to_string(cell.scheduler)) + "_" + describe(cell.penalty);
}

std::vector<StudyCell> run_study(const RunConfig& config,
                                 const ProgressFn& progress) {
  config.validate();
  const std::size_t n_pen = config.penalties.size();
  const Index n = config.n_items;
  std::vector<StudyCell> cells;
  for (DistributionKind dist : config.distributions) {
    const LogStrengths truth = make_strengths(dist, n).centered();
    for (SchedulerKind sched : config.schedulers) {
      const auto start = std::chrono::steady_clock::now();
      const SchedulerSpec spec{sched, config.rounds};
      std::vector<SimOutcome> outcomes(config.n_sims);
      parallel_for(config.n_sims, config.jobs, [&](std::size_t s) {
        const std::uint64_t seed =
            assessment_seed(config.seed, dist, sched, static_cast<int>(s));
        const Assessment assessment = simulate_assessment(truth, spec, seed);
        const CountData counts = counts_from_assessment(assessment);
        SimOutcome& out = outcomes[s];
        out.estimate.resize(n_pen);
        out.corrected.resize(n_pen);
        out.covered.resize(n_pen);
        out.redraws.assign(n_pen, 0);
        for (std::size_t k = 0; k < n_pen; ++k) {
          try {
            if (config.bootstrap_m > 0) {
              BootstrapConfig bc;
              bc.m = config.bootstrap_m;
              bc.penalty = config.penalties[k];
              bc.seed = derive_seed(derive_seed(seed, 0xB0075712ULL), k);
              bc.fit = config.fit;
              const BiasCorrectedResult r = bias_correct(assessment, spec, bc);
              out.estimate[k].emplace(r.original.values().begin(),
                                      r.original.values().end());
              out.corrected[k].emplace(r.corrected.values().begin(),
                                       r.corrected.values().end());
              out.covered[k].resize(n);
              for (Index i = 0; i < n; ++i) {
                out.covered[k][i] =
                    r.ci_lower[i] <= truth[i] && truth[i] <= r.ci_upper[i];
              }
              out.redraws[k] = r.redraws;
            } else {
              const FitResult r = fit(counts, config.penalties[k], config.fit);
              out.estimate[k].emplace(r.lambda.values().begin(),
                                      r.lambda.values().end());
            }
          } catch (const NumericalError&) {
            // Recorded as a failed simulation for this penalty.
          }
        }
      });

      for (std::size_t k = 0; k < n_pen; ++k) {
        StudyCell cell;
        cell.distribution = dist;
        cell.scheduler = sched;
        cell.penalty = config.penalties[k];
        cell.truth = truth;
        std::vector<std::vector<double>> rows, crows;
        std::size_t covered = 0, total = 0;
        for (int s = 0; s < config.n_sims; ++s) {
          const SimOutcome& o = outcomes[s];
          if (!o.estimate[k]) continue;
          cell.sims.push_back(s);
          rows.push_back(*o.estimate[k]);
          if (o.corrected[k]) {
            crows.push_back(*o.corrected[k]);
            for (char c : o.covered[k]) covered += c;
            total += o.covered[k].size();
          }
          cell.redraws += o.redraws[k];
        }
        StudyMeta meta{std::string(to_string(dist)), std::string(to_string(sched)),
                       describe(cell.penalty), config.seed,
                       static_cast<std::size_t>(config.n_sims),
                       config.n_sims - rows.size()};
        if (!rows.empty()) {
          cell.estimates = Stack(rows, n);
          cell.report = make_study_report(cell.estimates, truth, meta);
        } else {
          cell.report.meta = meta;
          cell.report.true_lambda.assign(truth.values().begin(), truth.values().end());
        }
        if (config.bootstrap_m > 0 && !crows.empty()) {
          cell.corrected_estimates = Stack(crows, n);
          cell.corrected = make_study_report(cell.corrected_estimates, truth, meta);
          cell.coverage = static_cast<double>(covered) / static_cast<double>(total);
        }
        cells.push_back(std::move(cell));
      }
      if (progress) {
        const double secs = std::chrono::duration<double>(
                                std::chrono::steady_clock::now() - start)
                                .count();
        std::ostringstream msg;
        msg << to_string(dist) << " / " << to_string(sched) << ": " << config.n_sims
            << " sims x " << n_pen << " penalties in " << secs << " s";
        for (std::size_t k = cells.size() - n_pen; k < cells.size(); ++k) {
          if (cells[k].report.meta.failed_sims > 0) {
            msg << "; " << describe(cells[k].penalty) << " failed on "
                << cells[k].report.meta.failed_sims << " sims";
          }
        }
        progress(msg.str());
      }
    }
  }
  return cells;
}

void write_study_outputs(const std::vector<StudyCell>& cells,
                         const std::string& out_dir) {
  ensure_directory(out_dir);
  const std::filesystem::path dir(out_dir);
  std::ostringstream summary;
  summary << "distribution,scheduler,penalty,n_sims,failed_sims,mean_abs_bias,"
             "median_sd,corrected_mean_abs_bias,corrected_median_sd,coverage\n";
  for (const StudyCell& cell : cells) {
    const std::string name = cell_name(cell);
    const StudyReport& r = cell.report;
    if (!r.per_item_bias.empty()) {
      write_study((dir / ("study_" + name + ".csv")).string(), r);
      write_sd_series((dir / ("sd_" + name + ".csv")).string(), r.per_sim_sd);
    }
    std::vector<std::string> row = {r.meta.distribution, r.meta.scheduler,
                                    r.meta.penalty, std::to_string(r.meta.n_sims),
                                    std::to_string(r.meta.failed_sims),
                                    Fmt(MeanAbs(r.per_item_bias)),
                                    Fmt(Median(r.per_sim_sd))};
    if (cell.corrected) {
      write_study((dir / ("study_" + name + "_corrected.csv")).string(), *cell.corrected);
      write_sd_series((dir / ("sd_" + name + "_corrected.csv")).string(),
                      cell.corrected->per_sim_sd);
      row.push_back(Fmt(MeanAbs(cell.corrected->per_item_bias)));
      row.push_back(Fmt(Median(cell.corrected->per_sim_sd)));
      row.push_back(Fmt(cell.coverage));
    } else {
      row.insert(row.end(), {"", "", ""});
    }
    csv::write_row(summary, row);
  }
  const std::string path = (dir / "summary.csv").string();
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << summary.str();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace cj
