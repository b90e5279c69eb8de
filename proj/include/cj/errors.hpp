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

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cj {

using Index = std::size_t;

// Root of the library's exception hierarchy. The CLI maps subclasses onto
// process exit codes: DomainError/ParseError/ValidationError/IoError are data
// problems (3), NumericalError and its subclasses are numerical failures (4).
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad arguments: non-finite inputs, size mismatches, out-of-range indices.
class DomainError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  IoError(const std::string& path, const std::string& what);
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

// Malformed input text. `line` is 1-based and counts the header.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what,
                           std::optional<std::size_t> line = std::nullopt);
  std::optional<std::size_t> line() const { return line_; }

 private:
  std::optional<std::size_t> line_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

// The unpenalized maximum likelihood estimate does not exist: the listed
// items were preferred (or dispreferred) in every comparison they took part
// in, or form a group that was.
class NonFiniteEstimate : public NumericalError {
 public:
  explicit NonFiniteEstimate(std::vector<Index> items);
  const std::vector<Index>& items() const { return items_; }

 private:
  std::vector<Index> items_;
};

// The comparison graph (pairs with at least one comparison) has more than one
// connected component, so relative strengths across components are not
// identified.
class Disconnected : public NumericalError {
 public:
  explicit Disconnected(std::vector<std::vector<Index>> components);
  const std::vector<std::vector<Index>>& components() const {
    return components_;
  }

 private:
  std::vector<std::vector<Index>> components_;
};

}  // namespace cj
