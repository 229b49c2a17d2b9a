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

#include "roadpred/corpus_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "roadpred/csv.hpp"
#include "roadpred/errors.hpp"

namespace roadpred
{

namespace
{

constexpr const char * kHeader = "roadpred-corpus,1";

std::string format_double(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

double parse_double(const std::string & path, std::size_t line, const std::string & text)
{
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(path, line, "malformed number '" + text + "'");
  }
  return value;
}

long long parse_int(const std::string & path, std::size_t line, const std::string & text)
{
  long long value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ParseError(path, line, "malformed integer '" + text + "'");
  }
  return value;
}

}  // namespace

void write_corpus(const Corpus & corpus, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  out << kHeader << '\n';
  for (const auto & [rec, source] : corpus.provenance) {
    out << "provenance," << rec << ',' << source << '\n';
  }
  for (const Trajectory & traj : corpus.trajectories) {
    out << "trajectory," << traj.recording_id << ',' << traj.track_id << ','
        << to_string(traj.category) << ',' << traj.location_id << ','
        << format_double(traj.sample_period) << ',' << traj.states.size() << ','
        << (traj.has_situations() ? 1 : 0) << '\n';
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const RoadUserState & state = traj.states[i];
      out << "state," << format_double(state.position.x()) << ','
          << format_double(state.position.y()) << ',' << format_double(state.speed) << ','
          << format_double(state.orientation.x()) << ',' << format_double(state.orientation.y());
      if (traj.has_situations()) {
        const std::optional<Vec2> & other = traj.other_positions[i];
        if (other.has_value()) {
          out << ',' << format_double(other->x()) << ',' << format_double(other->y());
        } else {
          out << ",,";
        }
      }
      out << '\n';
    }
  }
}

Corpus read_corpus(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  const std::string path_str = path.string();

  std::string line;
  std::size_t line_no = 0;

  if (!std::getline(in, line)) {
    throw ParseError(path_str, 0, "file is empty");
  }
  ++line_no;
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kHeader) {
    throw ParseError(path_str, 1, "not a corpus file (expected '" + std::string(kHeader) + "')");
  }

  Corpus corpus;
  std::set<std::pair<int, int>> seen;
  Trajectory * current = nullptr;
  std::size_t states_expected = 0;
  bool situations = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty() || line == "\r") {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);

    if (fields[0] == "provenance") {
      if (fields.size() != 3) {
        throw ParseError(path_str, line_no, "provenance line needs 3 fields");
      }
      corpus.provenance.emplace(
        static_cast<int>(parse_int(path_str, line_no, fields[1])), fields[2]);
      continue;
    }

    if (fields[0] == "trajectory") {
      if (current != nullptr && current->states.size() != states_expected) {
        throw ParseError(path_str, line_no, "previous trajectory is missing state lines");
      }
      if (fields.size() != 8) {
        throw ParseError(path_str, line_no, "trajectory line needs 8 fields");
      }
      Trajectory traj;
      traj.recording_id = static_cast<int>(parse_int(path_str, line_no, fields[1]));
      traj.track_id = static_cast<int>(parse_int(path_str, line_no, fields[2]));
      const std::optional<Category> category = parse_category(fields[3]);
      if (!category.has_value()) {
        throw ParseError(path_str, line_no, "unknown category '" + fields[3] + "'");
      }
      traj.category = *category;
      traj.location_id = static_cast<int>(parse_int(path_str, line_no, fields[4]));
      traj.sample_period = parse_double(path_str, line_no, fields[5]);
      states_expected = static_cast<std::size_t>(parse_int(path_str, line_no, fields[6]));
      situations = parse_int(path_str, line_no, fields[7]) != 0;
      if (!seen.emplace(traj.recording_id, traj.track_id).second) {
        throw ParseError(
          path_str, line_no,
          "duplicate trajectory key (" + fields[1] + ", " + fields[2] + ")");
      }
      corpus.trajectories.push_back(std::move(traj));
      current = &corpus.trajectories.back();
      current->states.reserve(states_expected);
      if (situations) {
        current->other_positions.reserve(states_expected);
      }
      continue;
    }

    if (fields[0] == "state") {
      if (current == nullptr) {
        throw ParseError(path_str, line_no, "state line before any trajectory line");
      }
      if (current->states.size() >= states_expected) {
        throw ParseError(path_str, line_no, "more state lines than declared");
      }
      const std::size_t expected_fields = situations ? 8 : 6;
      if (fields.size() != expected_fields) {
        throw ParseError(
          path_str, line_no,
          "state line needs " + std::to_string(expected_fields) + " fields");
      }
      RoadUserState state;
      state.position = {
        parse_double(path_str, line_no, fields[1]), parse_double(path_str, line_no, fields[2])};
      state.speed = parse_double(path_str, line_no, fields[3]);
      state.orientation = {
        parse_double(path_str, line_no, fields[4]), parse_double(path_str, line_no, fields[5])};
      current->states.push_back(state);
      if (situations) {
        if (fields[6].empty() != fields[7].empty()) {
          throw ParseError(path_str, line_no, "other-position fields must both be set or empty");
        }
        if (fields[6].empty()) {
          current->other_positions.emplace_back(std::nullopt);
        } else {
          current->other_positions.emplace_back(Vec2{
            parse_double(path_str, line_no, fields[6]),
            parse_double(path_str, line_no, fields[7])});
        }
      }
      continue;
    }

    throw ParseError(path_str, line_no, "unknown line tag '" + fields[0] + "'");
  }

  if (current != nullptr && current->states.size() != states_expected) {
    throw ParseError(path_str, line_no, "last trajectory is missing state lines");
  }
  return corpus;
}

}  // namespace roadpred
