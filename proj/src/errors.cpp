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

#include "cj/errors.hpp"

#include <sstream>
#include <utility>

namespace cj {
namespace {

std::string JoinItems(const std::vector<Index>& items) {
  std::ostringstream out;
  for (std::size_t k = 0; k < items.size(); ++k) {
    if (k > 0) out << ", ";
    out << items[k];
  }
  return out.str();
}

std::string DescribeComponents(const std::vector<std::vector<Index>>& comps) {
  std::ostringstream out;
  out << "comparison graph is disconnected (" << comps.size()
      << " components):";
  for (const auto& c : comps) out << " {" << JoinItems(c) << "}";
  return out.str();
}

}  // namespace

IoError::IoError(const std::string& path, const std::string& what)
    : Error(path + ": " + what), path_(path) {}

ParseError::ParseError(std::size_t line, const std::string& what)
    : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

ValidationError::ValidationError(const std::string& what,
                                 std::optional<std::size_t> line)
    : Error(line ? "line " + std::to_string(*line) + ": " + what : what),
      line_(line) {}

NonFiniteEstimate::NonFiniteEstimate(std::vector<Index> items)
    : NumericalError("maximum likelihood estimate is not finite: items {" +
                     JoinItems(items) +
                     "} were preferred or dispreferred in all comparisons"),
      items_(std::move(items)) {}

Disconnected::Disconnected(std::vector<std::vector<Index>> components)
    : NumericalError(DescribeComponents(components)),
      components_(std::move(components)) {}

}  // namespace cj
