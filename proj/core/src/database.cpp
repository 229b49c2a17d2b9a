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

#include "roadpred/database.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>

#include "roadpred/csv.hpp"
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

std::size_t DisplacementDatabase::horizon_slot(int horizon_steps) const
{
  const auto it = std::lower_bound(horizons.begin(), horizons.end(), horizon_steps);
  if (it == horizons.end() || *it != horizon_steps) {
    throw std::invalid_argument(
      "database holds no horizon of " + std::to_string(horizon_steps) + " steps");
  }
  return static_cast<std::size_t>(it - horizons.begin());
}

DisplacementDatabase build_database(
  const Corpus & corpus, const std::vector<int> & horizons, int warmup_offset)
{
  if (horizons.empty()) {
    throw std::invalid_argument("at least one horizon is required");
  }
  if (warmup_offset < 0) {
    throw std::invalid_argument("warmup offset must be non-negative");
  }

  DisplacementDatabase db;
  db.horizons = horizons;
  std::sort(db.horizons.begin(), db.horizons.end());
  db.horizons.erase(std::unique(db.horizons.begin(), db.horizons.end()), db.horizons.end());
  if (db.horizons.front() < 1) {
    throw std::invalid_argument("horizons must be positive");
  }
  db.warmup_offset = warmup_offset;
  db.displacements.resize(db.horizons.size());

  const int max_horizon = db.horizons.back();
  const std::size_t i_min = first_query_index(warmup_offset);

  const bool situations = !corpus.trajectories.empty() &&
    std::all_of(corpus.trajectories.begin(), corpus.trajectories.end(),
      [](const Trajectory & t) { return t.has_situations(); });

  for (std::size_t n = 0; n < corpus.trajectories.size(); ++n) {
    const Trajectory & traj = corpus.trajectories[n];
    if (db.size() == 0 && !traj.states.empty()) {
      db.sample_period = traj.sample_period;
    }
    if (traj.states.size() < i_min + static_cast<std::size_t>(max_horizon) + 1) {
      continue;
    }
    const std::size_t i_max = traj.states.size() - 1 - static_cast<std::size_t>(max_horizon);
    for (std::size_t i = i_min; i <= i_max; ++i) {
      db.states.push_back(traj.states[i]);
      db.sources.push_back(
        {static_cast<std::uint32_t>(n), static_cast<std::uint32_t>(i)});
      if (situations) {
        db.other_positions.push_back(traj.other_positions[i]);
      }
      for (std::size_t h = 0; h < db.horizons.size(); ++h) {
        const std::size_t future = i + static_cast<std::size_t>(db.horizons[h]);
        db.displacements[h].push_back(
          traj.states[future].position - traj.states[i].position);
      }
    }
  }

  if (db.states.empty()) {
    throw std::invalid_argument("corpus admits no database entries");
  }

  std::vector<Vec2> points;
  points.reserve(db.states.size());
  for (const RoadUserState & state : db.states) {
    points.push_back(state.position);
  }
  db.index = BallTree(std::move(points));
  return db;
}

Prediction predict(
  const DisplacementDatabase & db, const SimilarityParams & params, const RoadUserState & R,
  int horizon_steps)
{
  const std::size_t slot = db.horizon_slot(horizon_steps);
  const std::vector<Vec2> & displacements = db.displacements[slot];
  const std::vector<std::size_t> candidates = db.index.query_radius(R.position, params.r);

  Vec2 weighted_sum{0.0, 0.0};
  double total_weight = 0.0;
  std::size_t support = 0;
  for (const std::size_t i : candidates) {
    const double w = similarity(params, R, db.states[i]);
    if (w < kMinWeight) {
      continue;
    }
    weighted_sum += w * displacements[i];
    total_weight += w;
    ++support;
  }
  if (support == 0) {
    throw NoSimilarDataError(candidates.size());
  }

  Prediction prediction;
  prediction.horizon_steps = horizon_steps;
  prediction.displacement = weighted_sum / total_weight;
  prediction.position = R.position + prediction.displacement;
  prediction.total_weight = total_weight;
  prediction.support_count = support;
  return prediction;
}

double weighted_sse_objective(
  const DisplacementDatabase & db, const SimilarityParams & params, const RoadUserState & R,
  int horizon_steps, const Vec2 & d)
{
  const std::size_t slot = db.horizon_slot(horizon_steps);
  const std::vector<Vec2> & displacements = db.displacements[slot];

  double objective = 0.0;
  for (const std::size_t i : db.index.query_radius(R.position, params.r)) {
    const double w = similarity(params, R, db.states[i]);
    if (w < kMinWeight) {
      continue;
    }
    objective += w * (d - displacements[i]).squaredNorm();
  }
  return objective;
}

Prediction constant_velocity_predict(const RoadUserState & R, int horizon_steps,
  double sample_period)
{
  if (horizon_steps < 1) {
    throw std::invalid_argument("horizon must be at least one step");
  }
  if (!(sample_period > 0.0)) {
    throw std::invalid_argument("sample period must be positive");
  }

  Prediction prediction;
  prediction.horizon_steps = horizon_steps;
  prediction.displacement =
    R.speed * R.orientation * static_cast<double>(horizon_steps) * sample_period;
  prediction.position = R.position + prediction.displacement;
  prediction.total_weight = 1.0;
  prediction.support_count = 1;
  return prediction;
}

Prediction interaction_predict(
  const DisplacementDatabase & db, const InteractionParams & params,
  const TrafficSituationState & T, int horizon_steps)
{
  if (!db.has_situations()) {
    throw std::invalid_argument("database was built without situation annotations");
  }
  const std::size_t slot = db.horizon_slot(horizon_steps);
  const std::vector<Vec2> & displacements = db.displacements[slot];
  const std::vector<std::size_t> candidates =
    db.index.query_radius(T.target.position, params.base.r);

  Vec2 weighted_sum{0.0, 0.0};
  double total_weight = 0.0;
  std::size_t support = 0;
  for (const std::size_t i : candidates) {
    const TrafficSituationState stored{db.states[i], db.other_positions[i]};
    const double w = interaction_similarity(params, T, stored);
    if (w < kMinWeight) {
      continue;
    }
    weighted_sum += w * displacements[i];
    total_weight += w;
    ++support;
  }
  if (support == 0) {
    throw NoSimilarDataError(candidates.size());
  }

  Prediction prediction;
  prediction.horizon_steps = horizon_steps;
  prediction.displacement = weighted_sum / total_weight;
  prediction.position = T.target.position + prediction.displacement;
  prediction.total_weight = total_weight;
  prediction.support_count = support;
  return prediction;
}

void write_database(const DisplacementDatabase & db, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  out << "roadpred-db,1\n";
  out << "meta," << db.warmup_offset << ',' << format_double(db.sample_period) << ','
      << (db.has_situations() ? 1 : 0) << '\n';
  out << "horizons";
  for (const int h : db.horizons) {
    out << ',' << h;
  }
  out << '\n';

  for (std::size_t i = 0; i < db.size(); ++i) {
    const RoadUserState & state = db.states[i];
    out << "entry," << format_double(state.position.x()) << ','
        << format_double(state.position.y()) << ',' << format_double(state.speed) << ','
        << format_double(state.orientation.x()) << ',' << format_double(state.orientation.y())
        << ',' << db.sources[i].trajectory_index << ',' << db.sources[i].time_index;
    if (db.has_situations()) {
      if (db.other_positions[i].has_value()) {
        out << ',' << format_double(db.other_positions[i]->x()) << ','
            << format_double(db.other_positions[i]->y());
      } else {
        out << ",,";
      }
    }
    for (std::size_t h = 0; h < db.horizons.size(); ++h) {
      out << ',' << format_double(db.displacements[h][i].x()) << ','
          << format_double(db.displacements[h][i].y());
    }
    out << '\n';
  }
}

DisplacementDatabase read_database(const std::filesystem::path & path)
{
  std::ifstream in(path);
  if (!in) {
    throw ParseError(path.string(), 0, "cannot open file");
  }
  const std::string path_str = path.string();

  std::string line;
  std::size_t line_no = 0;
  DisplacementDatabase db;
  bool situations = false;
  bool have_meta = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const std::vector<std::string> fields = split_csv_line(line);

    if (line_no == 1) {
      if (line != "roadpred-db,1") {
        throw ParseError(path_str, 1, "not a database file (expected 'roadpred-db,1')");
      }
      continue;
    }
    if (fields[0] == "meta") {
      if (fields.size() != 4) {
        throw ParseError(path_str, line_no, "meta line needs 4 fields");
      }
      db.warmup_offset = static_cast<int>(parse_int(path_str, line_no, fields[1]));
      db.sample_period = parse_double(path_str, line_no, fields[2]);
      situations = parse_int(path_str, line_no, fields[3]) != 0;
      have_meta = true;
      continue;
    }
    if (fields[0] == "horizons") {
      for (std::size_t i = 1; i < fields.size(); ++i) {
        db.horizons.push_back(static_cast<int>(parse_int(path_str, line_no, fields[i])));
      }
      if (db.horizons.empty() || !std::is_sorted(db.horizons.begin(), db.horizons.end())) {
        throw ParseError(path_str, line_no, "horizons must be a sorted non-empty list");
      }
      db.displacements.resize(db.horizons.size());
      continue;
    }
    if (fields[0] == "entry") {
      if (!have_meta || db.horizons.empty()) {
        throw ParseError(path_str, line_no, "entry line before meta/horizons lines");
      }
      const std::size_t expected = 8 + (situations ? 2 : 0) + 2 * db.horizons.size();
      if (fields.size() != expected) {
        throw ParseError(
          path_str, line_no, "entry line needs " + std::to_string(expected) + " fields");
      }
      RoadUserState state;
      state.position = {
        parse_double(path_str, line_no, fields[1]), parse_double(path_str, line_no, fields[2])};
      state.speed = parse_double(path_str, line_no, fields[3]);
      state.orientation = {
        parse_double(path_str, line_no, fields[4]), parse_double(path_str, line_no, fields[5])};
      db.states.push_back(state);
      db.sources.push_back(
        {static_cast<std::uint32_t>(parse_int(path_str, line_no, fields[6])),
         static_cast<std::uint32_t>(parse_int(path_str, line_no, fields[7]))});
      std::size_t next = 8;
      if (situations) {
        if (fields[8].empty() != fields[9].empty()) {
          throw ParseError(path_str, line_no, "other-position fields must both be set or empty");
        }
        if (fields[8].empty()) {
          db.other_positions.emplace_back(std::nullopt);
        } else {
          db.other_positions.emplace_back(Vec2{
            parse_double(path_str, line_no, fields[8]),
            parse_double(path_str, line_no, fields[9])});
        }
        next = 10;
      }
      for (std::size_t h = 0; h < db.horizons.size(); ++h) {
        db.displacements[h].emplace_back(
          parse_double(path_str, line_no, fields[next + 2 * h]),
          parse_double(path_str, line_no, fields[next + 2 * h + 1]));
      }
      continue;
    }
    throw ParseError(path_str, line_no, "unknown line tag '" + fields[0] + "'");
  }

  if (db.states.empty()) {
    throw ParseError(path_str, line_no, "database holds no entries");
  }

  std::vector<Vec2> points;
  points.reserve(db.states.size());
  for (const RoadUserState & state : db.states) {
    points.push_back(state.position);
  }
  db.index = BallTree(std::move(points));
  return db;
}

}  // namespace roadpred
