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

// Tournament schedulers and Bradley-Terry assessment simulation.

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "cj/model.hpp"
#include "cj/rng.hpp"

namespace cj {

enum class SchedulerKind { kRandom, kSwiss };

struct SchedulerSpec {
  SchedulerKind kind = SchedulerKind::kRandom;
  int rounds = 20;

  void validate() const;
};

std::string_view to_string(SchedulerKind kind);
SchedulerKind parse_scheduler_kind(std::string_view name);

// Uniformly random (near-)perfect matching; with odd n one item sits out.
Round random_round(Index n_items, Rng& rng);

// Items ordered by descending win count, uniformly shuffled within ties,
// then paired adjacently. With odd n the lowest-ranked item sits out.
// Rematches are allowed.
Round swiss_round(Index n_items, std::span<const int> win_counts, Rng& rng);

// Every pair exactly once over n - 1 rounds (n rounds with one bye each when
// n is odd), by the circle method.
Tournament round_robin_tournament(Index n_items);

// Draws each scheduled comparison's winner independently:
// `first` wins with probability bt_probability(lambda_first, lambda_second).
std::vector<Index> simulate_round(const Round& round, const LogStrengths& lambda,
                                  Rng& rng);

// Outcomes on a fixed tournament.
Assessment simulate_outcomes(const Tournament& tournament,
                             const LogStrengths& lambda, Rng& rng);

// Swiss assessment of `rounds` rounds starting from a given first round;
// later rounds are paired on the simulated running win counts.
Assessment simulate_swiss(const Round& first_round, int rounds,
                          const LogStrengths& lambda, Rng& rng);

// Full simulated assessment. Swiss round 1 is random. Reproducible from seed.
Assessment simulate_assessment(const LogStrengths& lambda,
                               const SchedulerSpec& spec, std::uint64_t seed);

}  // namespace cj
