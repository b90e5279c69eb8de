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

// Run configuration for simulation studies, read from one JSON document:
//
//   {
//     "distributions": ["normal", "bimodal", "skew_normal"],
//     "schedulers": ["random", "swiss"],
//     "penalties": ["alpha", {"kind": "dummy", "constant": 0.25}],
//     "n_items": 100, "rounds": 20, "n_sims": 1000,
//     "bootstrap_m": 0, "seed": 1, "out_dir": "out", "jobs": 1,
//     "tolerance": 1e-8, "max_iterations": 1000
//   }
//
// Single values are accepted where lists are expected. Unknown keys are
// rejected so that typos do not silently fall back to defaults.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cj/fitter.hpp"
#include "cj/penalties.hpp"
#include "cj/scheduling.hpp"
#include "cj/strengths.hpp"

namespace cj {

struct RunConfig {
  std::vector<DistributionKind> distributions = {DistributionKind::kNormal};
  std::vector<SchedulerKind> schedulers = {SchedulerKind::kSwiss};
  std::vector<PenaltySpec> penalties = {
      PenaltySpec::with_default(PenaltyKind::kAlpha)};
  Index n_items = 100;
  int rounds = 20;
  int n_sims = 1000;
  // Bootstrap replicates per simulated assessment; 0 disables correction.
  int bootstrap_m = 0;
  std::uint64_t seed = 0;
  // The seed was set explicitly (by the document or a flag) rather than
  // left at its default.
  bool has_seed = false;
  std::string out_dir = ".";
  int jobs = 1;
  FitConfig fit;

  // ValidationError naming the offending field.
  void validate() const;
};

RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string to_json(const RunConfig& config);

// Master seed: explicit value, else the CJ_SEED environment variable, else
// `fallback`. Throws ValidationError for an unparsable CJ_SEED.
std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed,
                           std::uint64_t fallback);

}  // namespace cj
