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

#include <doctest.h>

#include <cstdlib>
#include <string>

#include "cj/config.hpp"
#include "tmpdir.hpp"

using namespace cj;

namespace {

std::string FieldOf(const std::string& json) {
  try {
    parse_run_config(json);
  } catch (const ValidationError& e) {
    return e.what();
  }
  return "";
}

// Restores CJ_SEED on scope exit.
class SeedEnv {
 public:
  SeedEnv() {
    if (const char* v = std::getenv("CJ_SEED")) saved_ = v;
  }
  ~SeedEnv() {
    if (saved_.empty()) {
      unsetenv("CJ_SEED");
    } else {
      setenv("CJ_SEED", saved_.c_str(), 1);
    }
  }

 private:
  std::string saved_;
};

}  // namespace

TEST_CASE("defaults") {
  const RunConfig c = parse_run_config("{}");
  CHECK(c.n_items == 100);
  CHECK(c.rounds == 20);
  CHECK(c.n_sims == 1000);
  CHECK(c.bootstrap_m == 0);
  CHECK_FALSE(c.has_seed);
  CHECK(c.penalties.size() == 1);
  CHECK(c.penalties[0].kind == PenaltyKind::kAlpha);
  CHECK(c.penalties[0].constant == 0.3);
}

TEST_CASE("full document") {
  const RunConfig c = parse_run_config(R"({
    "distributions": ["normal", "skew_normal"],
    "scheduler": "random",
    "penalties": ["epsilon", {"kind": "dummy", "constant": 0.5}, {"kind": "firth"}],
    "n_items": 10, "rounds": 4, "n_sims": 2, "bootstrap_m": 5,
    "seed": 18446744073709551615, "out_dir": "out", "jobs": 3,
    "tolerance": 1e-10, "max_iterations": 50
  })");
  CHECK(c.distributions ==
        std::vector<DistributionKind>{DistributionKind::kNormal, DistributionKind::kSkewNormal});
  CHECK(c.schedulers == std::vector<SchedulerKind>{SchedulerKind::kRandom});
  REQUIRE(c.penalties.size() == 3);
  CHECK(c.penalties[0].constant == 0.3);
  CHECK(c.penalties[1].constant == 0.5);
  CHECK(c.penalties[2].kind == PenaltyKind::kFirth);
  CHECK(c.seed == 18446744073709551615ull);
  CHECK(c.has_seed);
  CHECK(c.jobs == 3);
  CHECK(c.fit.tolerance == 1e-10);
  CHECK(c.fit.max_iterations == 50);

  const RunConfig back = parse_run_config(to_json(c));
  CHECK(back.distributions == c.distributions);
  CHECK(back.seed == c.seed);
  CHECK(back.penalties[1].constant == 0.5);
  CHECK(back.out_dir == "out");
  CHECK(back.bootstrap_m == 5);
}

TEST_CASE("errors name the field") {
  CHECK(FieldOf("{\"n_items\": 1}").find("n_items") != std::string::npos);
  CHECK(FieldOf("{\"rounds\": 0}").find("rounds") != std::string::npos);
  CHECK(FieldOf("{\"n_sims\": \"ten\"}").find("n_sims") != std::string::npos);
  CHECK(FieldOf("{\"bootstrap_m\": 1}").find("bootstrap_m") != std::string::npos);
  CHECK(FieldOf("{\"penalties\": [\"alpha\", \"ridge\"]}").find("penalties[1]") != std::string::npos);
  CHECK(FieldOf("{\"penalties\": [{\"kind\": \"alpha\", \"constant\": -1}]}").find("penalties[0]") !=
        std::string::npos);
  CHECK(FieldOf("{\"penalties\": [{\"kind\": \"alpha\", \"c\": 1}]}").find("penalties[0].c") !=
        std::string::npos);
  CHECK(FieldOf("{\"distributions\": []}").find("distributions") != std::string::npos);
  CHECK(FieldOf("{\"nitems\": 10}").find("nitems") != std::string::npos);
  CHECK(FieldOf("{\"distribution\": \"bimodal\", \"n_items\": 9}").find("n_items") != std::string::npos);
  CHECK(FieldOf("{\"seed\": -3}").find("seed") != std::string::npos);
  CHECK(FieldOf("[1]") != "");
  CHECK(FieldOf("{not json") != "");
  CHECK_THROWS_AS(load_run_config("/nonexistent/run.json"), IoError);
}

TEST_CASE("loading from a file") {
  cjtest::TempDir dir;
  cjtest::spit(dir.file("run.json"), "{\"n_items\": 12, \"seed\": 5}");
  const RunConfig c = load_run_config(dir.file("run.json"));
  CHECK(c.n_items == 12);
  CHECK(c.seed == 5);
}

TEST_CASE("seed resolution") {
  SeedEnv guard;
  unsetenv("CJ_SEED");
  CHECK(resolve_seed(std::nullopt, 9) == 9);
  CHECK(resolve_seed(3, 9) == 3);
  setenv("CJ_SEED", "77", 1);
  CHECK(resolve_seed(std::nullopt, 9) == 77);
  CHECK(resolve_seed(3, 9) == 3);
  setenv("CJ_SEED", "seven", 1);
  CHECK_THROWS_AS(resolve_seed(std::nullopt, 9), ValidationError);
}
