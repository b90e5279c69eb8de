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

#include "cj/config.hpp"

#include <cstdlib>
#include <fstream>
#include <json.hpp>
#include <sstream>

namespace cj {
namespace {

using nlohmann::json;

[[noreturn]] void Invalid(const std::string& field, const std::string& what) {
  throw ValidationError("config field '" + field + "': " + what);
}

template <typename T, typename Parse>
std::vector<T> ParseList(const json& value, const std::string& field,
                         Parse parse) {
  std::vector<T> out;
  const auto one = [&](const json& v, const std::string& where) {
    try {
      out.push_back(parse(v, where));
    } catch (const ValidationError&) {
      throw;
    } catch (const std::exception& e) {
      Invalid(where, e.what());
    }
  };
  if (value.is_array()) {
    for (std::size_t k = 0; k < value.size(); ++k) {
      one(value[k], field + "[" + std::to_string(k) + "]");
    }
  } else {
    one(value, field);
  }
  if (out.empty()) Invalid(field, "must not be empty");
  return out;
}

std::string String(const json& v, const std::string& field) {
  if (!v.is_string()) Invalid(field, "expected a string");
  return v.get<std::string>();
}

long long Integer(const json& v, const std::string& field) {
  if (!v.is_number_integer()) Invalid(field, "expected an integer");
  return v.get<long long>();
}

double Number(const json& v, const std::string& field) {
  if (!v.is_number()) Invalid(field, "expected a number");
  return v.get<double>();
}

PenaltySpec ParsePenalty(const json& v, const std::string& field) {
  if (v.is_string()) {
    return PenaltySpec::with_default(parse_penalty_kind(v.get<std::string>()));
  }
  if (!v.is_object() || !v.contains("kind")) {
    Invalid(field, "expected a penalty name or {\"kind\", \"constant\"}");
  }
  for (const auto& [key, _] : v.items()) {
    if (key != "kind" && key != "constant") Invalid(field + "." + key, "unknown key");
  }
  PenaltySpec spec =
      PenaltySpec::with_default(parse_penalty_kind(String(v["kind"], field + ".kind")));
  if (v.contains("constant")) spec.constant = Number(v["constant"], field + ".constant");
  return spec;
}

}  // namespace

void RunConfig::validate() const {
  if (distributions.empty()) Invalid("distributions", "must not be empty");
  if (schedulers.empty()) Invalid("schedulers", "must not be empty");
  if (penalties.empty()) Invalid("penalties", "must not be empty");
  if (n_items < 2) Invalid("n_items", "must be at least 2");
  if (rounds < 1) Invalid("rounds", "must be positive");
  if (n_sims < 1) Invalid("n_sims", "must be positive");
  if (bootstrap_m < 0 || bootstrap_m == 1) {
    Invalid("bootstrap_m", "must be 0 (off) or at least 2");
  }
  if (jobs < 1) Invalid("jobs", "must be positive");
  if (out_dir.empty()) Invalid("out_dir", "must not be empty");
  for (std::size_t k = 0; k < penalties.size(); ++k) {
    try {
      penalties[k].validate();
    } catch (const std::exception& e) {
      Invalid("penalties[" + std::to_string(k) + "]", e.what());
    }
  }
  for (DistributionKind d : distributions) {
    if (d == DistributionKind::kBimodal && (n_items % 2 != 0 || n_items < 4)) {
      Invalid("n_items", "bimodal strengths need an even n_items >= 4");
    }
  }
  try {
    fit.validate();
  } catch (const std::exception& e) {
    Invalid("tolerance/max_iterations", e.what());
  }
}

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("config must be a JSON object");
  RunConfig c;
  for (const auto& [key, v] : doc.items()) {
    if (key == "distributions" || key == "distribution") {
      c.distributions = ParseList<DistributionKind>(v, key, [](const json& x, const std::string& f) {
        return parse_distribution_kind(String(x, f));
      });
    } else if (key == "schedulers" || key == "scheduler") {
      c.schedulers = ParseList<SchedulerKind>(v, key, [](const json& x, const std::string& f) {
        return parse_scheduler_kind(String(x, f));
      });
    } else if (key == "penalties" || key == "penalty") {
      c.penalties = ParseList<PenaltySpec>(v, key, ParsePenalty);
    } else if (key == "n_items") {
      const long long n = Integer(v, key);
      if (n < 2) Invalid(key, "must be at least 2");
      c.n_items = static_cast<Index>(n);
    } else if (key == "rounds") {
      c.rounds = static_cast<int>(Integer(v, key));
    } else if (key == "n_sims") {
      c.n_sims = static_cast<int>(Integer(v, key));
    } else if (key == "bootstrap_m") {
      c.bootstrap_m = static_cast<int>(Integer(v, key));
    } else if (key == "seed") {
      const long long s = Integer(v, key);
      if (s < 0 && !v.is_number_unsigned()) Invalid(key, "must be non-negative");
      c.seed = v.get<std::uint64_t>();
      c.has_seed = true;
    } else if (key == "out_dir") {
      c.out_dir = String(v, key);
    } else if (key == "jobs") {
      c.jobs = static_cast<int>(Integer(v, key));
    } else if (key == "tolerance") {
      c.fit.tolerance = Number(v, key);
    } else if (key == "max_iterations") {
      c.fit.max_iterations = static_cast<int>(Integer(v, key));
    } else {
      Invalid(key, "unknown key");
    }
  }
  c.validate();
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  std::ostringstream text;
  text << in.rdbuf();
  return parse_run_config(text.str());
}

std::string to_json(const RunConfig& c) {
  json doc;
  doc["distributions"] = json::array();
  for (auto d : c.distributions) doc["distributions"].push_back(std::string(to_string(d)));
  doc["schedulers"] = json::array();
  for (auto s : c.schedulers) doc["schedulers"].push_back(std::string(to_string(s)));
  doc["penalties"] = json::array();
  for (const auto& p : c.penalties) {
    doc["penalties"].push_back({{"kind", std::string(to_string(p.kind))},
                                {"constant", p.constant}});
  }
  doc["n_items"] = c.n_items;
  doc["rounds"] = c.rounds;
  doc["n_sims"] = c.n_sims;
  doc["bootstrap_m"] = c.bootstrap_m;
  doc["seed"] = c.seed;
  doc["out_dir"] = c.out_dir;
  doc["jobs"] = c.jobs;
  doc["tolerance"] = c.fit.tolerance;
  doc["max_iterations"] = c.fit.max_iterations;
  return doc.dump(2) + "\n";
}

std::uint64_t resolve_seed(std::optional<std::uint64_t> explicit_seed,
                           std::uint64_t fallback) {
  if (explicit_seed) return *explicit_seed;
  const char* env = std::getenv("CJ_SEED");
  if (env == nullptr || *env == '\0') return fallback;
  char* end = nullptr;
  const unsigned long long v = std::strtoull(env, &end, 10);
  if (*end != '\0' || env[0] == '-') {
    throw ValidationError(std::string("CJ_SEED is not a non-negative integer: ") + env);
  }
  return v;
}

}  // namespace cj
