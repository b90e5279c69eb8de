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

#include <cmath>
#include <filesystem>
#include <sstream>

#include "cj/io.hpp"
#include "cj/metrics.hpp"
#include "cj/scheduling.hpp"
#include "commands.hpp"
#include "tmpdir.hpp"

using namespace cj;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome Run(std::vector<std::string> args) {
  std::ostringstream out, err;
  Outcome o;
  o.code = cli::run(args, out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::size_t Lines(const std::string& path) {
  const std::string text = cjtest::slurp(path);
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

}  // namespace

TEST_CASE("help and usage errors") {
  const Outcome help = Run({"--help"});
  CHECK(help.code == cli::kOk);
  CHECK(help.out.find("fit") != std::string::npos);
  CHECK(help.out.find("bootstrap") != std::string::npos);
  const Outcome sub = Run({"fit", "--help"});
  CHECK(sub.code == cli::kOk);
  CHECK(sub.out.find("--penalty") != std::string::npos);
  CHECK(Run({}).code == cli::kUsage);
  CHECK(Run({"frobnicate"}).code == cli::kUsage);
  CHECK(Run({"fit"}).code == cli::kUsage);
  CHECK(Run({"fit", "--data", "/nonexistent.csv"}).code == cli::kUsage);
  CHECK(Run({"simulate", "--distribution", "uniform"}).code == cli::kUsage);
  CHECK(Run({"study", "--penalty", "ridge"}).code == cli::kUsage);
}

TEST_CASE("fit on a round robin") {
  cjtest::TempDir dir;
  const Tournament rr = round_robin_tournament(20);
  Rng rng(3);
  std::vector<double> lam(20);
  for (int i = 0; i < 20; ++i) lam[i] = 0.2 * (i - 9.5);
  const Assessment a = simulate_outcomes(rr, LogStrengths(lam), rng);
  write_comparisons(dir.file("rr.csv"), a, index_labels(20));
  const std::string out = dir.file("fit.csv");
  const Outcome o = Run({"fit", "--data", dir.file("rr.csv"), "--penalty", "alpha", "--out", out});
  CHECK(o.code == cli::kOk);
  CHECK(o.err.find("alpha0.3") != std::string::npos);
  const LabeledValues fit = read_fit(out);
  CHECK(fit.values.size() == 20);
  CHECK(Lines(out) == 21);
  double sum = 0;
  for (double v : fit.values) sum += v;
  CHECK(std::fabs(sum) < 1e-10);

  const Outcome c = Run({"fit", "--data", dir.file("rr.csv"), "--penalty", "dummy",
                         "--constant", "0.5", "--out", out});
  CHECK(c.code == cli::kOk);
  CHECK(c.err.find("dummy0.5") != std::string::npos);
}

TEST_CASE("separated data") {
  cjtest::TempDir dir;
  cjtest::spit(dir.file("sep.csv"), "winner,loser\nAlpha,Beta\nAlpha,Beta\n");
  const Outcome none = Run({"fit", "--data", dir.file("sep.csv"), "--penalty", "none",
                            "--out", dir.file("none.csv")});
  CHECK(none.code == cli::kNumericalError);
  CHECK(none.err.find("Alpha") != std::string::npos);
  CHECK(none.err.find("Beta") != std::string::npos);
  CHECK_FALSE(std::filesystem::exists(dir.file("none.csv")));

  const Outcome firth = Run({"fit", "--data", dir.file("sep.csv"), "--penalty", "firth",
                             "--out", dir.file("firth.csv")});
  REQUIRE(firth.code == cli::kOk);
  const LabeledValues v = read_fit(dir.file("firth.csv"));
  // logit((w + 0.5) / (m + 1)) with w = m = 2.
  CHECK(v.values[0] - v.values[1] == doctest::Approx(std::log(2.5 / 0.5)).epsilon(1e-8));
}

TEST_CASE("data errors") {
  cjtest::TempDir dir;
  cjtest::spit(dir.file("self.csv"), "round,winner,loser\n1,A,B\n1,C,C\n");
  const Outcome o = Run({"fit", "--data", dir.file("self.csv")});
  CHECK(o.code == cli::kDataError);
  CHECK(o.err.find("line 3") != std::string::npos);
  cjtest::spit(dir.file("bad.json"), "{\"n_itmes\": 3}");
  const Outcome cfg = Run({"study", "--config", dir.file("bad.json")});
  CHECK(cfg.code == cli::kDataError);
  CHECK(cfg.err.find("n_itmes") != std::string::npos);
}

TEST_CASE("simulate is deterministic") {
  cjtest::TempDir dir;
  const std::vector<std::string> base = {"simulate", "--scheduler", "swiss", "--n-items", "12",
                                         "--rounds", "5", "--seed", "11"};
  auto a = base;
  a.insert(a.end(), {"--out", dir.file("a.csv"), "--truth-out", dir.file("t.csv")});
  auto b = base;
  b.insert(b.end(), {"--out", dir.file("b.csv")});
  REQUIRE(Run(a).code == cli::kOk);
  REQUIRE(Run(b).code == cli::kOk);
  CHECK(cjtest::slurp(dir.file("a.csv")) == cjtest::slurp(dir.file("b.csv")));
  CHECK(Lines(dir.file("a.csv")) == 1 + 5 * 6);
  CHECK(read_fit(dir.file("t.csv")).values.size() == 12);

  auto c = base;
  c.back() = "12";
  c.insert(c.end(), {"--out", dir.file("c.csv")});
  REQUIRE(Run(c).code == cli::kOk);
  CHECK(cjtest::slurp(dir.file("a.csv")) != cjtest::slurp(dir.file("c.csv")));
}

TEST_CASE("study smoke run") {
  cjtest::TempDir dir;
  cjtest::spit(dir.file("run.json"),
               R"({"distribution": "normal", "schedulers": ["random", "swiss"],
                   "penalties": ["alpha", "epsilon"], "n_items": 10, "rounds": 4,
                   "n_sims": 2, "seed": 3})");
  const Outcome a = Run({"study", "--config", dir.file("run.json"), "--out", dir.file("a")});
  REQUIRE(a.code == cli::kOk);
  const Outcome b = Run({"study", "--config", dir.file("run.json"), "--out", dir.file("b"),
                         "--jobs", "2"});
  REQUIRE(b.code == cli::kOk);
  for (const auto& e : std::filesystem::directory_iterator(dir.file("a"))) {
    const std::string name = e.path().filename().string();
    if (name == "config.json") continue;
    CHECK(cjtest::slurp(e.path().string()) == cjtest::slurp(dir.file("b/" + name)));
  }
  CHECK(Lines(dir.file("a/study_normal_swiss_alpha0.3.csv")) == 11);
  CHECK(Lines(dir.file("a/sd_normal_random_epsilon0.3.csv")) == 3);
  CHECK(std::filesystem::exists(dir.file("a/config.json")));
  // The written configuration reproduces the run.
  const Outcome c = Run({"study", "--config", dir.file("a/config.json"), "--out", dir.file("c")});
  REQUIRE(c.code == cli::kOk);
  CHECK(cjtest::slurp(dir.file("a/summary.csv")) == cjtest::slurp(dir.file("c/summary.csv")));

  const Outcome d = Run({"study", "--config", dir.file("run.json"), "--out", dir.file("d"),
                         "--seed", "4"});
  REQUIRE(d.code == cli::kOk);
  CHECK(cjtest::slurp(dir.file("a/summary.csv")) != cjtest::slurp(dir.file("d/summary.csv")));
}

TEST_CASE("bootstrap command") {
  cjtest::TempDir dir;
  const Outcome sim = Run({"bootstrap", "--simulate", "--scheduler", "random", "--n-items", "12",
                           "--rounds", "8", "--m", "2", "--seed", "5", "--out",
                           dir.file("b.csv")});
  REQUIRE(sim.code == cli::kOk);
  CHECK(sim.err.find("warning") != std::string::npos);
  CHECK(sim.err.find("identical") != std::string::npos);
  const BiasCorrectedTable t = read_bias_corrected(dir.file("b.csv"));
  CHECK(t.labels.size() == 12);
  for (std::size_t i = 0; i < 12; ++i) CHECK(t.ci_lower[i] <= t.ci_upper[i]);

  CHECK(Run({"bootstrap", "--simulate", "--m", "5"}).code == cli::kDataError);
  CHECK(Run({"bootstrap", "--simulate", "--scheduler", "adaptive"}).code == cli::kDataError);

  cjtest::spit(dir.file("nr.csv"), "winner,loser\nA,B\nB,C\nC,A\nA,C\n");
  const Outcome swiss = Run({"bootstrap", "--data", dir.file("nr.csv"), "--scheduler", "swiss"});
  CHECK(swiss.code == cli::kDataError);
  CHECK(swiss.err.find("round column") != std::string::npos);
  const Outcome random = Run({"bootstrap", "--data", dir.file("nr.csv"), "--scheduler", "random",
                              "--m", "20", "--out", dir.file("nr_out.csv")});
  CHECK(random.code == cli::kOk);
}

TEST_CASE("profiles command") {
  cjtest::TempDir dir;
  const Outcome o = Run({"profiles", "--n-items", "10", "--n-sims", "50", "--svg", "--out",
                         dir.file("p")});
  REQUIRE(o.code == cli::kOk);
  for (const char* name : {"comparison_probability", "profile_dummy", "profile_alpha"}) {
    CHECK(Lines(dir.file(std::string("p/") + name + ".csv")) == 46);
    const std::string svg = cjtest::slurp(dir.file(std::string("p/") + name + ".svg"));
    CHECK(svg.find("<svg") != std::string::npos);
  }
  const Outcome rr = Run({"profiles", "--n-items", "8", "--n-sims", "3", "--scheduler",
                          "round-robin", "--out", dir.file("rr")});
  REQUIRE(rr.code == cli::kOk);
  const Matrix p = read_matrix(dir.file("rr/comparison_probability.csv"), 8);
  for (const auto& e : upper_triangle(p)) CHECK(e.value == 1.0);
}
