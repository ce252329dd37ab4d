// Copyright 2026 The nfst-overlay Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nfst {

// Numeric values are shared with the C API status codes and the CLI exit
// codes; do not renumber.
enum class ErrorCode : int {
  kOk = 0,
  kUsage = 1,
  kIo = 2,
  kParse = 3,
  kInvalidFst = 4,
  kNotLengthPreserving = 5,
  kEpsilonPresent = 6,
  kCapacityExceeded = 7,
  kAdjacencyUnsatisfiable = 8,
  kVersionMismatch = 9,
  kChecksumMismatch = 10,
  kTruncatedInput = 11,
  kMalformedImage = 12,
  kActivationOverflow = 13,
  kFifoOverflow = 14,
  kNoAcceptingPath = 15,
  kUnusedTramEntry = 16,
  kUnsupportedEpsilonOutput = 17,
  kVerifyFailed = 18,
  kInternal = 19,
};

const char* error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Ruleset syntax/semantic failure with a 1-based source location.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : Error(ErrorCode::kParse, std::to_string(line) + ":" +
                                     std::to_string(column) + ": " + message),
        line_(line),
        column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Raised by the placer; carries every (predecessor edge, successor edge)
// pair that could not be made grid-adjacent.
class AdjacencyError : public Error {
 public:
  using EdgePair = std::pair<std::size_t, std::size_t>;

  AdjacencyError(std::vector<EdgePair> pairs, const std::string& what)
      : Error(ErrorCode::kAdjacencyUnsatisfiable, what),
        pairs_(std::move(pairs)) {}

  const std::vector<EdgePair>& pairs() const noexcept { return pairs_; }

 private:
  std::vector<EdgePair> pairs_;
};

}  // namespace nfst
