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

// Minimal RFC 4180 style CSV: comma separated, double-quoted fields with ""
// escapes, LF or CRLF line endings.

#include <cstddef>
#include <istream>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace cj::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number of the row's first line
  std::vector<std::string> fields;
};

class Reader {
 public:
  explicit Reader(std::istream& in) : in_(in) {}
  // False at end of input. Throws ParseError on an unterminated quote.
  bool next(Row& row);

 private:
  std::istream& in_;
  std::size_t line_ = 0;
};

std::string quote(std::string_view field);
void write_row(std::ostream& out, const std::vector<std::string>& fields);

// %.17g, which round-trips every finite double.
std::string format_double(double value);
// Whole-field conversions; throw std::invalid_argument on anything else.
double parse_double(std::string_view text);
long long parse_integer(std::string_view text);

}  // namespace cj::csv
