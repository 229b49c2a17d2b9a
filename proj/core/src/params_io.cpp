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

#include "roadpred/params_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "roadpred/errors.hpp"

namespace roadpred
{

namespace
{

std::string format_double(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

void write_params(const ParamsFile & params, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  if (params.category.has_value()) {
    out << "category " << to_string(*params.category) << '\n';
  }
  if (params.location_id.has_value()) {
    out << "location " << *params.location_id << '\n';
  }
  out << "a " << format_double(params.base.a) << '\n';
  out << "b " << format_double(params.base.b) << '\n';
  out << "c_orient " << format_double(params.base.c_orient) << '\n';
  out << "r " << format_double(params.base.r) << '\n';
  if (params.d.has_value()) {
    out << "d " << format_double(*params.d) << '\n';
  }
  if (params.e.has_value()) {
    out << "e " << format_double(*params.e) << '\n';
  }
}

ParamsFile read_params(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }

  ParamsFile params;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t comment = line.find('#');
    if (comment != std::string::npos) {
      line.erase(comment);
    }
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) {
      continue;
    }

    std::string value;
    if (!(row >> value)) {
      throw ParseError(path.string(), line_no, "key '" + key + "' has no value");
    }

    if (key == "category") {
      params.category = parse_category(value);
      if (!params.category.has_value()) {
        throw ParseError(path.string(), line_no, "unknown category '" + value + "'");
      }
      continue;
    }
    if (key == "location") {
      params.location_id = std::stoi(value);
      continue;
    }

    double number = 0.0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), number);
    if (ec != std::errc() || ptr != value.data() + value.size()) {
      throw ParseError(path.string(), line_no, "malformed number '" + value + "'");
    }
    if (key == "a") {
      params.base.a = number;
    } else if (key == "b") {
      params.base.b = number;
    } else if (key == "c_orient") {
      params.base.c_orient = number;
    } else if (key == "r") {
      params.base.r = number;
    } else if (key == "d") {
      params.d = number;
    } else if (key == "e") {
      params.e = number;
    } else {
      throw ParseError(path.string(), line_no, "unknown key '" + key + "'");
    }
  }
  return params;
}

SimilarityParams reference_params(Category category, int location_id)
{
  SimilarityParams params;
  if (category == Category::vehicle && location_id == 1) {
    params.a = 0.5;
    params.b = 1.0;
    params.c_orient = 50.0;
  } else if (category == Category::vehicle && location_id == 2) {
    params.a = 0.5;
    params.b = 1.0;
    params.c_orient = 200.0;
  } else if (category == Category::bicycle && location_id == 1) {
    params.a = 0.5;
    params.b = 20.0;
    params.c_orient = 50.0;
  } else if (category == Category::bicycle && location_id == 2) {
    params.a = 0.25;
    params.b = 1.0;
    params.c_orient = 100.0;
  } else if (category == Category::pedestrian && location_id == 1) {
    params.a = 0.25;
    params.b = 20.0;
    params.c_orient = 50.0;
  } else if (category == Category::pedestrian && location_id == 2) {
    params.a = 0.1;
    params.b = 50.0;
    params.c_orient = 50.0;
  } else {
    throw std::invalid_argument(
      "no reference parameters for " + std::string(to_string(category)) + " at location " +
      std::to_string(location_id));
  }
  return params;
}

}  // namespace roadpred
