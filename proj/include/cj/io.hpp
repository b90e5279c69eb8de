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

// File formats. Every table is a CSV with a header row; floating-point
// values are written with 17 significant digits so that reading a file back
// reproduces the written doubles exactly.
//
//   comparisons   round,winner,loser   (round optional; extra columns ignored)
//   fit           item,lambda
//   study         item,true_lambda,bias,mae
//   sd series     sim,sd
//   matrix        i,j,value            (upper triangle, i < j)
//   bootstrap     item,lambda_original,lambda_corrected,ci_lower,ci_upper

#include <istream>
#include <string>
#include <vector>

#include "cj/bootstrap.hpp"
#include "cj/fitter.hpp"
#include "cj/metrics.hpp"
#include "cj/model.hpp"

namespace cj {

struct ComparisonData {
  // labels[i] is the label of dense index i, in first-appearance order.
  std::vector<std::string> labels;
  CountData counts;
  // Rounds in ascending order of the round value; rows keep file order
  // within a round. Without a round column there is a single round.
  Assessment assessment;
  bool has_round_column = false;
};

// Throws IoError, ParseError (malformed rows, with line number) and
// ValidationError (self-comparisons with line number, empty input, fewer
// than two items).
ComparisonData read_comparisons(const std::string& path);
ComparisonData read_comparisons(std::istream& in);

// Rounds are numbered from 1.
void write_comparisons(const std::string& path, const Assessment& assessment,
                       const std::vector<std::string>& labels);

// Labels "0", "1", ... for synthetic items.
std::vector<std::string> index_labels(Index n);

struct LabeledValues {
  std::vector<std::string> labels;
  std::vector<double> values;
};

void write_fit(const std::string& path, const FitResult& result,
               const std::vector<std::string>& labels);
LabeledValues read_fit(const std::string& path);

void write_study(const std::string& path, const StudyReport& report);
// Reads true_lambda, per_item_bias and per_item_mae; meta and the SD series
// are not part of the file.
StudyReport read_study(const std::string& path);

void write_sd_series(const std::string& path, const std::vector<double>& sd);
std::vector<double> read_sd_series(const std::string& path);

// Only entries with i < j are stored.
void write_matrix(const std::string& path, const Matrix& matrix);
// Symmetric n x n matrix with a zero diagonal.
Matrix read_matrix(const std::string& path, Index n);

void write_bias_corrected(const std::string& path,
                          const BiasCorrectedResult& result,
                          const std::vector<std::string>& labels);

struct BiasCorrectedTable {
  std::vector<std::string> labels;
  std::vector<double> original, corrected, ci_lower, ci_upper;
};
BiasCorrectedTable read_bias_corrected(const std::string& path);

// Creates the directory and any missing parents.
void ensure_directory(const std::string& path);

}  // namespace cj
