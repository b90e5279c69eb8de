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

#include "cj/io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

#include "cj/csv.hpp"

namespace cj {
namespace {

using csv::format_double;

std::ifstream OpenIn(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError(path, "cannot open for reading");
  return in;
}

// Writes the whole file at once so a failure never leaves partial output
// mixed with old content.
void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  out << content;
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

struct Table {
  std::vector<std::string> header;
  std::vector<csv::Row> rows;
};

Table ReadTable(const std::string& path,
                const std::vector<std::string>& expected) {
  std::ifstream in = OpenIn(path);
  csv::Reader reader(in);
  Table t;
  csv::Row row;
  if (!reader.next(row)) throw IoError(path, "empty file");
  t.header = row.fields;
  if (t.header != expected) {
    std::string want;
    for (const auto& h : expected) want += (want.empty() ? "" : ",") + h;
    throw IoError(path, "expected header '" + want + "'");
  }
  while (reader.next(row)) {
    if (row.fields.size() == 1 && row.fields[0].empty()) continue;
    if (row.fields.size() != expected.size()) {
      throw IoError(path, "line " + std::to_string(row.line) + ": expected " +
                              std::to_string(expected.size()) + " fields");
    }
    t.rows.push_back(row);
  }
  return t;
}

double Number(const std::string& path, const csv::Row& row, std::size_t col) {
  try {
    return csv::parse_double(row.fields[col]);
  } catch (const std::invalid_argument& e) {
    throw IoError(path, "line " + std::to_string(row.line) + ": " + e.what());
  }
}

long long Integer(const std::string& path, const csv::Row& row,
                  std::size_t col) {
  try {
    return csv::parse_integer(row.fields[col]);
  } catch (const std::invalid_argument& e) {
    throw IoError(path, "line " + std::to_string(row.line) + ": " + e.what());
  }
}

std::string Trim(std::string s) {
  const auto space = [](unsigned char c) { return std::isspace(c) != 0; };
  s.erase(s.begin(), std::find_if_not(s.begin(), s.end(), space));
  s.erase(std::find_if_not(s.rbegin(), s.rend(), space).base(), s.end());
  return s;
}

}  // namespace

ComparisonData read_comparisons(std::istream& in) {
  csv::Reader reader(in);
  csv::Row row;
  if (!reader.next(row)) throw ValidationError("comparison file is empty");
  std::vector<std::string> header;
  for (auto& h : row.fields) header.push_back(Trim(h));
  if (!header.empty() && header[0].rfind("\xEF\xBB\xBF", 0) == 0) {
    header[0].erase(0, 3);
  }
  const auto column = [&](const std::string& name) -> std::ptrdiff_t {
    const auto it = std::find(header.begin(), header.end(), name);
    return it == header.end() ? -1 : it - header.begin();
  };
  const std::ptrdiff_t c_round = column("round");
  const std::ptrdiff_t c_winner = column("winner");
  const std::ptrdiff_t c_loser = column("loser");
  if (c_winner < 0 || c_loser < 0) {
    throw ParseError(row.line, "header must contain 'winner' and 'loser'");
  }
  const std::size_t width = header.size();

  ComparisonData data;
  data.has_round_column = c_round >= 0;
  std::unordered_map<std::string, Index> index;
  struct Record {
    long long round;
    Index winner, loser;
  };
  std::vector<Record> records;
  const auto intern = [&](const std::string& label) {
    auto [it, inserted] = index.emplace(label, data.labels.size());
    if (inserted) data.labels.push_back(label);
    return it->second;
  };
  while (reader.next(row)) {
    if (row.fields.size() == 1 && Trim(row.fields[0]).empty()) continue;
    if (row.fields.size() != width) {
      throw ParseError(row.line, "expected " + std::to_string(width) +
                                     " fields, found " +
                                     std::to_string(row.fields.size()));
    }
    long long round = 0;
    if (c_round >= 0) {
      try {
        round = csv::parse_integer(Trim(row.fields[c_round]));
      } catch (const std::invalid_argument&) {
        throw ParseError(row.line, "round must be a non-negative integer");
      }
      if (round < 0) {
        throw ParseError(row.line, "round must be a non-negative integer");
      }
    }
    const std::string winner = Trim(row.fields[c_winner]);
    const std::string loser = Trim(row.fields[c_loser]);
    if (winner.empty() || loser.empty()) {
      throw ParseError(row.line, "empty item label");
    }
    if (winner == loser) {
      throw ValidationError("item '" + winner + "' compared with itself",
                            row.line);
    }
    const Index w = intern(winner);
    const Index l = intern(loser);
    records.push_back({round, w, l});
  }
  if (records.empty()) throw ValidationError("comparison file has no rows");
  const Index n = data.labels.size();

  data.counts = CountData(n);
  std::map<long long, std::size_t> round_slot;
  for (const Record& r : records) round_slot.emplace(r.round, 0);
  std::size_t slot = 0;
  for (auto& [value, s] : round_slot) s = slot++;
  data.assessment.tournament.n_items = n;
  data.assessment.tournament.rounds.resize(round_slot.size());
  data.assessment.winners.resize(round_slot.size());
  for (const Record& r : records) {
    data.counts.add(r.winner, r.loser);
    const std::size_t k = round_slot[r.round];
    data.assessment.tournament.rounds[k].push_back({r.winner, r.loser});
    data.assessment.winners[k].push_back(r.winner);
  }
  if (n < 2) throw ValidationError("need at least two items");
  return data;
}

ComparisonData read_comparisons(const std::string& path) {
  std::ifstream in = OpenIn(path);
  return read_comparisons(in);
}

void write_comparisons(const std::string& path, const Assessment& assessment,
                       const std::vector<std::string>& labels) {
  assessment.validate();
  if (labels.size() != assessment.tournament.n_items) {
    throw DomainError("label count differs from item count");
  }
  std::ostringstream out;
  out << "round,winner,loser\n";
  const auto& rounds = assessment.tournament.rounds;
  for (std::size_t r = 0; r < rounds.size(); ++r) {
    for (std::size_t k = 0; k < rounds[r].size(); ++k) {
      const Pair& p = rounds[r][k];
      const Index w = assessment.winners[r][k];
      const Index l = w == p.first ? p.second : p.first;
      csv::write_row(out, {std::to_string(r + 1), labels[w], labels[l]});
    }
  }
  WriteFile(path, out.str());
}

std::vector<std::string> index_labels(Index n) {
  std::vector<std::string> out(n);
  for (Index i = 0; i < n; ++i) out[i] = std::to_string(i);
  return out;
}

void write_fit(const std::string& path, const FitResult& result,
               const std::vector<std::string>& labels) {
  if (labels.size() != result.lambda.size()) {
    throw DomainError("label count differs from item count");
  }
  std::ostringstream out;
  out << "item,lambda\n";
  for (Index i = 0; i < labels.size(); ++i) {
    csv::write_row(out, {labels[i], format_double(result.lambda[i])});
  }
  WriteFile(path, out.str());
}

LabeledValues read_fit(const std::string& path) {
  const Table t = ReadTable(path, {"item", "lambda"});
  LabeledValues out;
  for (const auto& row : t.rows) {
    out.labels.push_back(row.fields[0]);
    out.values.push_back(Number(path, row, 1));
  }
  return out;
}

void write_study(const std::string& path, const StudyReport& report) {
  const std::size_t n = report.true_lambda.size();
  if (report.per_item_bias.size() != n || report.per_item_mae.size() != n) {
    throw DomainError("study report vectors differ in length");
  }
  std::ostringstream out;
  out << "item,true_lambda,bias,mae\n";
  for (std::size_t i = 0; i < n; ++i) {
    csv::write_row(out, {std::to_string(i), format_double(report.true_lambda[i]),
                         format_double(report.per_item_bias[i]),
                         format_double(report.per_item_mae[i])});
  }
  WriteFile(path, out.str());
}

StudyReport read_study(const std::string& path) {
  const Table t = ReadTable(path, {"item", "true_lambda", "bias", "mae"});
  StudyReport report;
  for (const auto& row : t.rows) {
    report.true_lambda.push_back(Number(path, row, 1));
    report.per_item_bias.push_back(Number(path, row, 2));
    report.per_item_mae.push_back(Number(path, row, 3));
  }
  return report;
}

void write_sd_series(const std::string& path, const std::vector<double>& sd) {
  std::ostringstream out;
  out << "sim,sd\n";
  for (std::size_t s = 0; s < sd.size(); ++s) {
    csv::write_row(out, {std::to_string(s), format_double(sd[s])});
  }
  WriteFile(path, out.str());
}

std::vector<double> read_sd_series(const std::string& path) {
  const Table t = ReadTable(path, {"sim", "sd"});
  std::vector<double> out;
  for (const auto& row : t.rows) out.push_back(Number(path, row, 1));
  return out;
}

void write_matrix(const std::string& path, const Matrix& matrix) {
  std::ostringstream out;
  out << "i,j,value\n";
  for (const MatrixEntry& e : upper_triangle(matrix)) {
    csv::write_row(out, {std::to_string(e.i), std::to_string(e.j),
                         format_double(e.value)});
  }
  WriteFile(path, out.str());
}

Matrix read_matrix(const std::string& path, Index n) {
  const Table t = ReadTable(path, {"i", "j", "value"});
  Matrix m = Matrix::Zero(n, n);
  for (const auto& row : t.rows) {
    const long long i = Integer(path, row, 0);
    const long long j = Integer(path, row, 1);
    if (i < 0 || j < 0 || i >= static_cast<long long>(n) ||
        j >= static_cast<long long>(n) || i == j) {
      throw IoError(path, "line " + std::to_string(row.line) +
                              ": index out of range");
    }
    m(i, j) = m(j, i) = Number(path, row, 2);
  }
  return m;
}

void write_bias_corrected(const std::string& path,
                          const BiasCorrectedResult& result,
                          const std::vector<std::string>& labels) {
  const Index n = result.original.size();
  if (labels.size() != n) throw DomainError("label count differs from item count");
  std::ostringstream out;
  out << "item,lambda_original,lambda_corrected,ci_lower,ci_upper\n";
  for (Index i = 0; i < n; ++i) {
    csv::write_row(out, {labels[i], format_double(result.original[i]),
                         format_double(result.corrected[i]),
                         format_double(result.ci_lower[i]),
                         format_double(result.ci_upper[i])});
  }
  WriteFile(path, out.str());
}

BiasCorrectedTable read_bias_corrected(const std::string& path) {
  const Table t = ReadTable(path, {"item", "lambda_original", "lambda_corrected",
                                   "ci_lower", "ci_upper"});
  BiasCorrectedTable out;
  for (const auto& row : t.rows) {
    out.labels.push_back(row.fields[0]);
    out.original.push_back(Number(path, row, 1));
    out.corrected.push_back(Number(path, row, 2));
    out.ci_lower.push_back(Number(path, row, 3));
    out.ci_upper.push_back(Number(path, row, 4));
  }
  return out;
}

void ensure_directory(const std::string& path) {
  std::error_code ec;
  std::filesystem::create_directories(path, ec);
  if (ec) throw IoError(path, "cannot create directory: " + ec.message());
}

}  // namespace cj
