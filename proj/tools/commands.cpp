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

#include "commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include "cj/bootstrap.hpp"
#include "cj/config.hpp"
#include "cj/io.hpp"
#include "cj/metrics.hpp"
#include "cj/parallel.hpp"
#include "cj/study.hpp"
#include "cj/svg.hpp"

namespace cj::cli {
namespace {

constexpr const char* kComparisonFormat =
    "Comparison data: CSV with header containing winner,loser and optionally\n"
    "round (a non-negative integer). Other columns, such as a judge id, are\n"
    "ignored. Labels are arbitrary strings.\n";

constexpr const char* kExitCodes =
    "Exit codes: 0 success, 2 usage error, 3 data or validation error,\n"
    "4 numerical failure (non-finite estimate, disconnected data,\n"
    "non-convergence).\n";

constexpr const char* kSeedNote =
    "Without --seed (or a seed in --config) the CJ_SEED environment variable\n"
    "is used, then 0.\n";

// Flags shared by every subcommand plus the run-configuration fields each
// one may override.
struct Options {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::string out;

  std::vector<std::string> distributions;
  std::vector<std::string> schedulers;
  std::vector<std::string> penalties;
  std::optional<double> constant;
  std::optional<Index> n_items;
  std::optional<int> rounds;
  std::optional<int> n_sims;
  std::optional<int> m;
  std::optional<int> jobs;
  std::optional<double> tolerance;
  std::optional<int> max_iterations;

  std::string data;
  bool simulate = false;
  double level = 0.95;
  bool svg = false;
  std::string truth_out;
};

void AddShared(CLI::App* app, Options& o) {
  app->add_option("--config", o.config_path,
                  "JSON run configuration; flags override its values")
      ->check(CLI::ExistingFile);
  app->add_option("--seed", o.seed, "Master seed (64-bit unsigned)");
}

void AddFitFlags(CLI::App* app, Options& o) {
  app->add_option("--tolerance", o.tolerance,
                  "Convergence threshold on the penalized score (1e-8)");
  app->add_option("--max-iterations", o.max_iterations,
                  "Gauss-Seidel sweep limit (1000)");
}

std::string Join(const std::vector<std::string>& labels,
                 const std::vector<Index>& items) {
  std::string out;
  for (Index i : items) {
    if (!out.empty()) out += ", ";
    out += labels.at(i);
  }
  return out;
}

// Loads --config (or defaults) and applies every flag that was given.
RunConfig Resolve(const Options& o) {
  RunConfig c;
  if (!o.config_path.empty()) c = load_run_config(o.config_path);
  if (!o.distributions.empty()) {
    c.distributions.clear();
    for (const auto& d : o.distributions) {
      c.distributions.push_back(parse_distribution_kind(d));
    }
  }
  if (!o.schedulers.empty()) {
    c.schedulers.clear();
    for (const auto& s : o.schedulers) {
      c.schedulers.push_back(parse_scheduler_kind(s));
    }
  }
  if (!o.penalties.empty()) {
    c.penalties.clear();
    for (const auto& p : o.penalties) {
      c.penalties.push_back(PenaltySpec::with_default(parse_penalty_kind(p)));
    }
  }
  if (o.constant) {
    for (auto& p : c.penalties) p.constant = *o.constant;
  }
  if (o.n_items) c.n_items = *o.n_items;
  if (o.rounds) c.rounds = *o.rounds;
  if (o.n_sims) c.n_sims = *o.n_sims;
  if (o.m) c.bootstrap_m = *o.m;
  if (o.jobs) c.jobs = *o.jobs;
  if (o.tolerance) c.fit.tolerance = *o.tolerance;
  if (o.max_iterations) c.fit.max_iterations = *o.max_iterations;
  std::optional<std::uint64_t> seed = o.seed;
  if (!seed && c.has_seed) seed = c.seed;
  c.seed = resolve_seed(seed, 0);
  c.has_seed = true;
  return c;
}

std::string OutPath(const Options& o, const RunConfig& c,
                    const std::string& file) {
  if (!o.out.empty()) return o.out;
  return (std::filesystem::path(c.out_dir) / file).string();
}

std::string OutDir(const Options& o, const RunConfig& c) {
  return o.out.empty() ? c.out_dir : o.out;
}

int CmdFit(const Options& o, std::ostream& err) {
  if (o.data.empty()) throw ValidationError("--data is required");
  const RunConfig c = Resolve(o);
  const PenaltySpec penalty = c.penalties.front();
  const ComparisonData data = read_comparisons(o.data);
  FitResult result;
  try {
    result = fit(data.counts, penalty, c.fit);
  } catch (const NonFiniteEstimate& e) {
    throw NumericalError(
        "maximum likelihood estimate is not finite: items {" +
        Join(data.labels, e.items()) +
        "} were preferred or dispreferred in all of their comparisons; "
        "use a penalty such as --penalty alpha or --penalty firth");
  } catch (const Disconnected& e) {
    std::string groups;
    for (const auto& comp : e.components()) groups += " {" + Join(data.labels, comp) + "}";
    throw NumericalError("comparison graph is disconnected:" + groups);
  }
  const std::string path = OutPath(o, c, "fit.csv");
  write_fit(path, result, data.labels);
  err << "fit " << describe(penalty) << ": " << data.labels.size() << " items, "
      << data.counts.grand_total() << " comparisons, " << result.iterations
      << " iterations, SD " << sd_of_estimates(result.lambda) << " -> " << path
      << "\n";
  return kOk;
}

int CmdSimulate(const Options& o, std::ostream& err) {
  const RunConfig c = Resolve(o);
  c.validate();
  const DistributionKind dist = c.distributions.front();
  const SchedulerSpec spec{c.schedulers.front(), c.rounds};
  const LogStrengths truth = make_strengths(dist, c.n_items).centered();
  const Assessment a = simulate_assessment(truth, spec, c.seed);
  const auto labels = index_labels(c.n_items);
  const std::string path = OutPath(o, c, "comparisons.csv");
  write_comparisons(path, a, labels);
  if (!o.truth_out.empty()) {
    FitResult t;
    t.lambda = truth;
    write_fit(o.truth_out, t, labels);
  }
  err << "simulated " << to_string(dist) << " / " << to_string(spec.kind) << ", "
      << c.n_items << " items, " << spec.rounds << " rounds, seed " << c.seed
      << " -> " << path << "\n";
  return kOk;
}

int CmdStudy(const Options& o, std::ostream& err) {
  RunConfig c = Resolve(o);
  if (!o.out.empty()) c.out_dir = o.out;
  c.validate();
  err << "study: " << c.distributions.size() * c.schedulers.size()
      << " combinations x " << c.penalties.size() << " penalties, " << c.n_sims
      << " sims, seed " << c.seed << ", " << c.jobs << " jobs\n";
  const auto cells = run_study(c, [&](const std::string& m) { err << m << "\n"; });
  write_study_outputs(cells, c.out_dir);
  std::ofstream cfg((std::filesystem::path(c.out_dir) / "config.json").string());
  cfg << to_json(c);
  err << "outputs in " << c.out_dir << "\n";
  return kOk;
}

int CmdBootstrap(const Options& o, std::ostream& err) {
  if (o.schedulers.empty()) {
    throw ValidationError(
        "--scheduler is required (random or swiss): the bootstrap resimulates "
        "the schedule's non-ancillary part");
  }
  if (o.data.empty() == !o.simulate) {
    throw ValidationError("give exactly one of --data or --simulate");
  }
  for (const auto& s : o.schedulers) {
    if (s == "adaptive" || s == "external" || s == "acj") {
      throw ValidationError(
          "data scheduled by an external adaptive algorithm cannot be "
          "resimulated; supply --scheduler random or swiss only if that is how "
          "the data were scheduled");
    }
  }
  RunConfig c = Resolve(o);
  if (c.bootstrap_m == 0) c.bootstrap_m = 40;
  c.validate();
  const SchedulerKind scheduler = c.schedulers.front();

  Assessment assessment;
  std::vector<std::string> labels;
  std::optional<LogStrengths> truth;
  if (o.simulate) {
    truth = make_strengths(c.distributions.front(), c.n_items).centered();
    assessment = simulate_assessment(*truth, {scheduler, c.rounds}, c.seed);
    labels = index_labels(c.n_items);
  } else {
    ComparisonData data = read_comparisons(o.data);
    if (scheduler == SchedulerKind::kSwiss && !data.has_round_column) {
      throw ValidationError(
          "swiss bootstrap needs a round column to identify the first round");
    }
    assessment = std::move(data.assessment);
    labels = std::move(data.labels);
  }

  BootstrapConfig bc;
  bc.m = c.bootstrap_m;
  bc.penalty = c.penalties.front();
  bc.seed = derive_seed(c.seed, 0xB0075712ULL);
  bc.ci_level = o.level;
  bc.fit = c.fit;
  bc.jobs = c.jobs;
  if (bc.m < 20) {
    err << "warning: m = " << bc.m
        << " replicates gives a noisy bias estimate and coarse intervals\n";
  }
  const BiasCorrectedResult r =
      bias_correct(assessment, {scheduler, c.rounds}, bc);
  if (scheduler == SchedulerKind::kRandom) {
    err << "random scheduling: replicate tournaments are identical to the input"
        << (r.ancillary_preserved ? "" : " (VIOLATED)") << "\n";
  } else {
    err << "swiss scheduling: replicates keep round 1 and re-pair later rounds"
        << "\n";
  }
  if (r.redraws > 0) err << r.redraws << " replicate fits failed and were redrawn\n";
  const std::string path = OutPath(o, c, "bootstrap.csv");
  write_bias_corrected(path, r, labels);
  err << "bootstrap " << describe(bc.penalty) << ", m = " << bc.m << ": SD "
      << sd_of_estimates(r.original) << " -> " << sd_of_estimates(r.corrected);
  if (truth) err << " (truth " << sd_of_estimates(*truth) << ")";
  err << " -> " << path << "\n";
  return kOk;
}

int CmdProfiles(const Options& o, std::ostream& err) {
  const bool round_robin =
      std::find(o.schedulers.begin(), o.schedulers.end(), "round-robin") !=
      o.schedulers.end();
  Options copy = o;
  if (round_robin) copy.schedulers.clear();
  RunConfig c = Resolve(copy);
  c.validate();
  const DistributionKind dist = c.distributions.front();
  const LogStrengths truth = make_strengths(dist, c.n_items).centered();
  const SchedulerSpec spec{c.schedulers.front(), c.rounds};

  Matrix prob;
  if (round_robin) {
    Rng rng(c.seed);
    const Tournament t = round_robin_tournament(c.n_items);
    ComparisonFrequency freq(c.n_items);
    for (int s = 0; s < c.n_sims; ++s) freq.add(simulate_outcomes(t, truth, rng));
    prob = freq.probabilities();
  } else {
    std::vector<Assessment> ensemble(c.n_sims);
    parallel_for(c.n_sims, c.jobs, [&](std::size_t s) {
      ensemble[s] = simulate_assessment(
          truth, spec, assessment_seed(c.seed, dist, spec.kind, static_cast<int>(s)));
    });
    prob = empirical_comparison_probability(ensemble);
  }
  const Matrix dummy = penalty_profile(truth, ProfileKind::kDummy);
  const Matrix alpha = penalty_profile(truth, ProfileKind::kAlpha);

  const std::string dir = OutDir(o, c);
  ensure_directory(dir);
  const std::filesystem::path base(dir);
  write_matrix((base / "comparison_probability.csv").string(), prob);
  write_matrix((base / "profile_dummy.csv").string(), dummy);
  write_matrix((base / "profile_alpha.csv").string(), alpha);
  if (o.svg) {
    write_heatmap((base / "comparison_probability.svg").string(), prob,
                  "P(at least one comparison)");
    write_heatmap((base / "profile_dummy.svg").string(), dummy,
                  "dummy profile p_i0 p_0i p_j0 p_0j");
    write_heatmap((base / "profile_alpha.svg").string(), alpha,
                  "alpha profile p_ij p_ji");
  }
  err << "profiles " << to_string(dist) << " / "
      << (round_robin ? std::string("round-robin") : std::string(to_string(spec.kind)))
      << ", " << c.n_sims << " sims: corr(prob, alpha) "
      << offdiagonal_correlation(prob, alpha) << ", corr(prob, dummy) "
      << offdiagonal_correlation(prob, dummy) << " -> " << dir << "\n";
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Bradley-Terry estimation for comparative judgement data", "cjfit"};
  app.require_subcommand(1, 1);
  app.footer(std::string(kExitCodes));
  Options o;

  const auto penalty_help =
      "Penalty: none, epsilon, alpha, dummy or firth (default alpha)";
  const auto constant_help =
      "Penalty constant (defaults: epsilon 0.3, alpha 0.3, dummy 0.25)";
  const auto penalty_check =
      CLI::IsMember({"none", "epsilon", "alpha", "dummy", "firth"});
  const auto scheduler_check = CLI::IsMember({"random", "swiss"});
  const auto distribution_check =
      CLI::IsMember({"normal", "bimodal", "skew_normal", "skew-normal"});

  CLI::App* fit_cmd = app.add_subcommand("fit", "Fit log-strengths to comparison data");
  AddShared(fit_cmd, o);
  fit_cmd->add_option("--data", o.data, "Comparison CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--penalty", o.penalties, penalty_help)->expected(1)->check(penalty_check);
  fit_cmd->add_option("--constant", o.constant, constant_help);
  fit_cmd->add_option("--out", o.out, "Output CSV (default fit.csv)");
  AddFitFlags(fit_cmd, o);
  fit_cmd->footer(std::string(kComparisonFormat) +
                  "Output: CSV item,lambda with mean-zero log-strengths.\n" +
                  kExitCodes);

  CLI::App* sim_cmd = app.add_subcommand("simulate", "Simulate one assessment");
  AddShared(sim_cmd, o);
  sim_cmd->add_option("--distribution", o.distributions,
                      "True strengths: normal, bimodal or skew_normal")
      ->expected(1)->check(distribution_check);
  sim_cmd->add_option("--scheduler", o.schedulers, "random or swiss")
      ->expected(1)->check(scheduler_check);
  sim_cmd->add_option("--n-items", o.n_items, "Number of items (100)");
  sim_cmd->add_option("--rounds", o.rounds, "Rounds; each item is compared once a round (20)");
  sim_cmd->add_option("--out", o.out, "Output CSV (default comparisons.csv)");
  sim_cmd->add_option("--truth-out", o.truth_out, "Also write true log-strengths (item,lambda)");
  sim_cmd->footer(std::string("Output: CSV round,winner,loser, rounds numbered from 1, items "
                              "labelled 0..n-1 in increasing true strength.\n") +
                  kSeedNote + kExitCodes);

  CLI::App* study_cmd = app.add_subcommand("study", "Run a simulation study");
  AddShared(study_cmd, o);
  study_cmd->add_option("--distribution", o.distributions, "One or more distributions")
      ->check(distribution_check);
  study_cmd->add_option("--scheduler", o.schedulers, "One or more of random, swiss")
      ->check(scheduler_check);
  study_cmd->add_option("--penalty", o.penalties, "One or more penalties")->check(penalty_check);
  study_cmd->add_option("--constant", o.constant, "Constant applied to every listed penalty");
  study_cmd->add_option("--n-items", o.n_items, "Number of items (100)");
  study_cmd->add_option("--rounds", o.rounds, "Rounds per assessment (20)");
  study_cmd->add_option("--n-sims", o.n_sims, "Simulated assessments per combination (1000)");
  study_cmd->add_option("--bootstrap-m", o.m, "Bootstrap replicates per assessment (0 = off)");
  study_cmd->add_option("--jobs", o.jobs, "Worker threads");
  study_cmd->add_option("--out", o.out, "Output directory (default: config out_dir or .)");
  AddFitFlags(study_cmd, o);
  study_cmd->footer(
      std::string("Config: JSON object with keys distributions, schedulers, penalties\n"
                  "(names or {\"kind\", \"constant\"}), n_items, rounds, n_sims, bootstrap_m,\n"
                  "seed, out_dir, jobs, tolerance, max_iterations.\n"
                  "Outputs per combination <distribution>_<scheduler>_<penalty>:\n"
                  "  study_<name>.csv  item,true_lambda,bias,mae\n"
                  "  sd_<name>.csv     sim,sd\n"
                  "  *_corrected.csv   the same for bootstrap-corrected estimates\n"
                  "and summary.csv, config.json. Item labels are indices 0..n-1.\n") +
      kSeedNote + kExitCodes);

  CLI::App* boot_cmd = app.add_subcommand("bootstrap", "Schedule-aware bootstrap bias correction");
  AddShared(boot_cmd, o);
  auto* data_opt = boot_cmd->add_option("--data", o.data, "Comparison CSV")->check(CLI::ExistingFile);
  auto* sim_flag = boot_cmd->add_flag("--simulate", o.simulate,
                                     "Simulate the input assessment instead of reading it");
  data_opt->excludes(sim_flag);
  boot_cmd->add_option("--scheduler", o.schedulers,
                       "How the data were scheduled: random or swiss (required)")
      ->expected(1);
  boot_cmd->add_option("--m", o.m, "Bootstrap replicates (40)");
  boot_cmd->add_option("--penalty", o.penalties, penalty_help)->expected(1)->check(penalty_check);
  boot_cmd->add_option("--constant", o.constant, constant_help);
  boot_cmd->add_option("--level", o.level, "Interval level (0.95)");
  boot_cmd->add_option("--distribution", o.distributions, "With --simulate")
      ->expected(1)->check(distribution_check);
  boot_cmd->add_option("--n-items", o.n_items, "With --simulate");
  boot_cmd->add_option("--rounds", o.rounds, "With --simulate; swiss replicates use the data's rounds");
  boot_cmd->add_option("--jobs", o.jobs, "Worker threads");
  boot_cmd->add_option("--out", o.out, "Output CSV (default bootstrap.csv)");
  AddFitFlags(boot_cmd, o);
  boot_cmd->footer(std::string(kComparisonFormat) +
                   "Swiss data need the round column; round 1 is the smallest round value.\n"
                   "Output: CSV item,lambda_original,lambda_corrected,ci_lower,ci_upper.\n" +
                   kSeedNote + kExitCodes);

  CLI::App* prof_cmd = app.add_subcommand(
      "profiles", "Comparison probabilities and pairwise penalty profiles");
  AddShared(prof_cmd, o);
  prof_cmd->add_option("--distribution", o.distributions, "True strengths")
      ->expected(1)->check(distribution_check);
  prof_cmd->add_option("--scheduler", o.schedulers, "random, swiss or round-robin")
      ->expected(1)->check(CLI::IsMember({"random", "swiss", "round-robin"}));
  prof_cmd->add_option("--n-items", o.n_items, "Number of items (100)");
  prof_cmd->add_option("--rounds", o.rounds, "Rounds per assessment (20)");
  prof_cmd->add_option("--n-sims", o.n_sims, "Simulated assessments (1000)");
  prof_cmd->add_option("--jobs", o.jobs, "Worker threads");
  prof_cmd->add_flag("--svg", o.svg, "Also write grayscale SVG heatmaps");
  prof_cmd->add_option("--out", o.out, "Output directory (default .)");
  prof_cmd->footer(std::string(
                       "Outputs comparison_probability.csv, profile_dummy.csv and\n"
                       "profile_alpha.csv as i,j,value for i < j; profiles are evaluated at the\n"
                       "true strengths. Items are in increasing strength order.\n") +
                   kSeedNote + kExitCodes);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (fit_cmd->parsed()) return CmdFit(o, err);
    if (sim_cmd->parsed()) return CmdSimulate(o, err);
    if (study_cmd->parsed()) return CmdStudy(o, err);
    if (boot_cmd->parsed()) return CmdBootstrap(o, err);
    if (prof_cmd->parsed()) return CmdProfiles(o, err);
  } catch (const NumericalError& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalError;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsage;
}

}  // namespace cj::cli
