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

#include "cj/scheduling.hpp"

#include <algorithm>
#include <numeric>
#include <string>

namespace cj {
namespace {

void RequirePairable(Index n_items) {
  if (n_items < 2) throw DomainError("a round needs at least two items");
}

Round PairAdjacent(const std::vector<Index>& order) {
  Round round;
  round.reserve(order.size() / 2);
  for (std::size_t k = 0; k + 1 < order.size(); k += 2) {
    round.push_back({order[k], order[k + 1]});
  }
  return round;
}

std::vector<Index> Identity(Index n) {
  std::vector<Index> v(n);
  std::iota(v.begin(), v.end(), Index{0});
  return v;
}

}  // namespace

void SchedulerSpec::validate() const {
  if (rounds < 1) throw DomainError("scheduler needs at least one round");
}

std::string_view to_string(SchedulerKind kind) {
  return kind == SchedulerKind::kSwiss ? "swiss" : "random";
}

SchedulerKind parse_scheduler_kind(std::string_view name) {
  if (name == "random") return SchedulerKind::kRandom;
  if (name == "swiss") return SchedulerKind::kSwiss;
  throw DomainError("unknown scheduler '" + std::string(name) +
                    "' (expected random or swiss)");
}

Round random_round(Index n_items, Rng& rng) {
  RequirePairable(n_items);
  std::vector<Index> order = Identity(n_items);
  rng.shuffle(std::span<Index>(order));
  return PairAdjacent(order);
}

Round swiss_round(Index n_items, std::span<const int> win_counts, Rng& rng) {
  RequirePairable(n_items);
  if (win_counts.size() != n_items) {
    throw DomainError("swiss_round: one win count per item is required");
  }
  std::vector<Index> order = Identity(n_items);
  // Shuffle first; the stable sort then leaves each tie group uniformly
  // permuted.
  rng.shuffle(std::span<Index>(order));
  std::stable_sort(order.begin(), order.end(), [&](Index a, Index b) {
    return win_counts[a] > win_counts[b];
  });
  return PairAdjacent(order);
}

Tournament round_robin_tournament(Index n_items) {
  RequirePairable(n_items);
  // Circle method on an even number of slots; a phantom slot marks the bye.
  const Index slots = n_items + (n_items % 2);
  std::vector<Index> ring = Identity(slots);
  Tournament t{n_items, {}};
  for (Index r = 0; r + 1 < slots; ++r) {
    Round round;
    for (Index k = 0; k < slots / 2; ++k) {
      const Index a = ring[k];
      const Index b = ring[slots - 1 - k];
      if (a < n_items && b < n_items) round.push_back({std::min(a, b), std::max(a, b)});
    }
    t.rounds.push_back(std::move(round));
    std::rotate(ring.begin() + 1, ring.end() - 1, ring.end());
  }
  return t;
}

std::vector<Index> simulate_round(const Round& round, const LogStrengths& lambda,
                                  Rng& rng) {
  std::vector<Index> winners;
  winners.reserve(round.size());
  for (const Pair& p : round) {
    const double prob = bt_probability(lambda[p.first], lambda[p.second]);
    winners.push_back(rng.uniform() < prob ? p.first : p.second);
  }
  return winners;
}

Assessment simulate_outcomes(const Tournament& tournament,
                             const LogStrengths& lambda, Rng& rng) {
  if (lambda.size() != tournament.n_items) {
    throw DomainError("log-strengths do not match the tournament's item count");
  }
  tournament.validate();
  Assessment a{tournament, {}};
  a.winners.reserve(tournament.rounds.size());
  for (const Round& round : tournament.rounds) {
    a.winners.push_back(simulate_round(round, lambda, rng));
  }
  return a;
}

Assessment simulate_swiss(const Round& first_round, int rounds,
                          const LogStrengths& lambda, Rng& rng) {
  if (rounds < 1) throw DomainError("scheduler needs at least one round");
  const Index n = lambda.size();
  Assessment a{Tournament{n, {first_round}}, {}};
  a.tournament.validate();
  std::vector<int> wins(n, 0);
  a.winners.push_back(simulate_round(first_round, lambda, rng));
  for (Index w : a.winners.back()) ++wins[w];
  for (int r = 1; r < rounds; ++r) {
    Round round = swiss_round(n, wins, rng);
    a.winners.push_back(simulate_round(round, lambda, rng));
    for (Index w : a.winners.back()) ++wins[w];
    a.tournament.rounds.push_back(std::move(round));
  }
  return a;
}

Assessment simulate_assessment(const LogStrengths& lambda,
                               const SchedulerSpec& spec, std::uint64_t seed) {
  spec.validate();
  const Index n = lambda.size();
  RequirePairable(n);
  Rng rng(seed);
  if (spec.kind == SchedulerKind::kSwiss) {
    Round first = random_round(n, rng);
    return simulate_swiss(first, spec.rounds, lambda, rng);
  }
  Tournament t{n, {}};
  t.rounds.reserve(spec.rounds);
  for (int r = 0; r < spec.rounds; ++r) t.rounds.push_back(random_round(n, rng));
  return simulate_outcomes(t, lambda, rng);
}

}  // namespace cj
