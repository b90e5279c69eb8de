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

// Simulation study runner. For every (distribution, scheduler) pair the same
// simulated assessments are fitted under each configured penalty, so
// penalties are compared on common data. Every assessment is seeded from
// (master seed, distribution, scheduler, simulation index); results do not
// depend on the number of worker threads.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cj/config.hpp"
#include "cj/metrics.hpp"

namespace cj {

struct StudyCell {
  DistributionKind distribution = DistributionKind::kNormal;
  SchedulerKind scheduler = SchedulerKind::kSwiss;
  PenaltySpec penalty;
  // Mean-centred truth; estimates are compared against it.
  LogStrengths truth;
  // One row per successful simulation; sims[k] is the row's index.
  Matrix estimates;
  std::vector<int> sims;
  StudyReport report;

  // With bootstrap_m > 0.
  std::optional<StudyReport> corrected;
  Matrix corrected_estimates;
  // Fraction of (item, sim) pairs whose interval contains the truth.
  double coverage = 0;
  int redraws = 0;
};

std::uint64_t assessment_seed(std::uint64_t master, DistributionKind distribution,
                              SchedulerKind scheduler, int sim);

using ProgressFn = std::function<void(const std::string&)>;

std::vector<StudyCell> run_study(const RunConfig& config,
                                 const ProgressFn& progress = {});

// "<distribution>_<scheduler>_<penalty>", e.g. "normal_swiss_alpha0.3".
std::string cell_name(const StudyCell& cell);

// study_<name>.csv and sd_<name>.csv per cell (plus *_corrected.csv with
// bootstrap), and summary.csv with one row per cell.
void write_study_outputs(const std::vector<StudyCell>& cells,
                         const std::string& out_dir);

}  // namespace cj
