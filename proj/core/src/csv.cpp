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

#include "roadpred/csv.hpp"

#include <charconv>
#include <fstream>

#include "roadpred/errors.hpp"

namespace roadpred
{

std::vector<std::string> split_csv_line(const std::string & line)
{
  std::vector<std::string> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t comma = line.find(',', start);
    std::string field = line.substr(start, comma == std::string::npos ? comma : comma - start);
    const auto first = field.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
      field.clear();
    } else {
      const auto last = field.find_last_not_of(" \t\r");
      field = field.substr(first, last - first + 1);
    }
    fields.push_back(std::move(field));
    if (comma == std::string::npos) {
      break;
    }
    start = comma + 1;
  }
  return fields;
}

CsvTable CsvTable::read(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }

  CsvTable table;
  table.path_ = path;

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      table.header_ = split_csv_line(line);
      for (std::size_t i = 0; i < table.header_.size(); ++i) {
        table.index_.emplace(table.header_[i], i);
      }
      continue;
    }
    if (line.empty() || line == "\r") {
      continue;
    }
    CsvRow row;
    row.line = line_no;
    row.fields = split_csv_line(line);
    if (row.fields.size() != table.header_.size()) {
      throw ParseError(
        path.string(), line_no,
        "expected " + std::to_string(table.header_.size()) + " fields, got " +
          std::to_string(row.fields.size()));
    }
    table.rows_.push_back(std::move(row));
  }

  if (line_no == 0) {
    throw ParseError(path.string(), 0, "file is empty");
  }
  return table;
}

bool CsvTable::has_column(const std::string & name) const
{
  return index_.find(name) != index_.end();
}

std::size_t CsvTable::column(const std::string & name) const
{
  const auto it = index_.find(name);
  if (it == index_.end()) {
    throw ParseError(path_.string(), 1, "missing column '" + name + "'");
  }
  return it->second;
}

const std::string & CsvTable::field(const CsvRow & row, std::size_t col) const
{
  return row.fields.at(col);
}

double CsvTable::number(const CsvRow & row, std::size_t col) const
{
  const std::string & text = field(row, col);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(path_.string(), row.line, "malformed number '" + text + "'");
  }
  return value;
}

long long CsvTable::integer(const CsvRow & row, std::size_t col) const
{
  const std::string & text = field(row, col);
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(path_.string(), row.line, "malformed integer '" + text + "'");
  }
  return value;
}

}  // namespace roadpred
