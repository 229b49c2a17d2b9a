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

#ifndef ROADPRED_CSV_HPP_
#define ROADPRED_CSV_HPP_

#include <cstddef>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <vector>

namespace roadpred
{

/// One parsed CSV row plus the 1-based line it came from, for error reports.
struct CsvRow
{
  std::size_t line = 0;
  std::vector<std::string> fields;
};

/// Header-indexed comma-separated file. Quoting is not supported; the
/// datasets this library reads never quote fields.
class CsvTable
{
public:
  /// Reads the whole file. Throws ParseError on a missing file, an empty
  /// file, or a row whose field count differs from the header's.
  static CsvTable read(const std::filesystem::path & path);

  const std::filesystem::path & path() const { return path_; }
  const std::vector<std::string> & header() const { return header_; }
  const std::vector<CsvRow> & rows() const { return rows_; }

  bool has_column(const std::string & name) const;

  /// Column index for a header name; throws ParseError if absent.
  std::size_t column(const std::string & name) const;

  const std::string & field(const CsvRow & row, std::size_t col) const;

  /// Parses row[col] as a double or integer; throws ParseError with the
  /// offending line on malformed input.
  double number(const CsvRow & row, std::size_t col) const;
  long long integer(const CsvRow & row, std::size_t col) const;

private:
  std::filesystem::path path_;
  std::vector<std::string> header_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<CsvRow> rows_;
};

/// Splits a single CSV line on commas, trimming surrounding whitespace and a
/// trailing carriage return.
std::vector<std::string> split_csv_line(const std::string & line);

}  // namespace roadpred

#endif  // ROADPRED_CSV_HPP_
