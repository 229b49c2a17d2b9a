// Copyright 2026 The roadpred Authors
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

#ifndef ROADPRED_ERRORS_HPP_
#define ROADPRED_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace roadpred
{

/// Malformed input file. Carries the source path and 1-based line number.
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string & path, std::size_t line, const std::string & what)
  : std::runtime_error(path + ":" + std::to_string(line) + ": " + what),
    path_(path),
    line_(line)
  {
  }

  const std::string & path() const { return path_; }
  std::size_t line() const { return line_; }

private:
  std::string path_;
  std::size_t line_;
};

/// No stored sample carries nonzero weight for a query: either nothing lies
/// within the cutoff radius or every weight underflowed to zero.
class NoSimilarDataError : public std::runtime_error
{
public:
  explicit NoSimilarDataError(std::size_t candidate_count)
  : std::runtime_error(
      "no similar data: " + std::to_string(candidate_count) +
      " candidate(s) in radius, all with zero weight"),
    candidate_count_(candidate_count)
  {
  }

  /// Number of entries that were inside the cutoff radius.
  std::size_t candidate_count() const { return candidate_count_; }

private:
  std::size_t candidate_count_;
};

}  // namespace roadpred

#endif  // ROADPRED_ERRORS_HPP_
