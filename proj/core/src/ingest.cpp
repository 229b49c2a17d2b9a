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

#include "roadpred/ingest.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <utility>
#include <vector>

#include "roadpred/csv.hpp"
#include "roadpred/errors.hpp"

namespace roadpred
{

namespace
{

struct FrameRow
{
  long long frame;
  Vec2 position;
  Vec2 velocity;
  std::size_t line;
};

struct RecordingInfo
{
  int location_id = 0;
  double frame_rate = 25.0;
};

std::string format_double(double value)
{
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.17g", value);
  return buffer;
}

}  // namespace

Corpus ingest(
  const std::filesystem::path & tracks, const std::filesystem::path & tracks_meta,
  const std::optional<std::filesystem::path> & recording_meta, const ColumnMap & columns,
  IngestReport * report)
{
  IngestReport local_report;
  IngestReport & rep = report != nullptr ? *report : local_report;

  // Track metadata: (recording, track) -> category. Files covering a single
  // recording may omit the recording column; those keys use recording -1 and
  // match any recording.
  const CsvTable meta = CsvTable::read(tracks_meta);
  const bool meta_has_recording = meta.has_column(columns.recording_id);
  const std::size_t meta_rec_col = meta_has_recording ? meta.column(columns.recording_id) : 0;
  const std::size_t meta_track_col = meta.column(columns.meta_track_id);
  const std::size_t meta_class_col = meta.column(columns.meta_class);

  std::map<std::pair<long long, long long>, std::optional<Category>> categories;
  for (const CsvRow & row : meta.rows()) {
    const long long rec = meta_has_recording ? meta.integer(row, meta_rec_col) : -1;
    const long long track = meta.integer(row, meta_track_col);
    const std::string & label = meta.field(row, meta_class_col);
    const auto [it, inserted] = categories.emplace(std::make_pair(rec, track), std::nullopt);
    if (!inserted) {
      throw ParseError(
        tracks_meta.string(), row.line,
        "duplicate track id " + std::to_string(track) + " in metadata");
    }
    it->second = parse_category(label);
    if (!it->second.has_value()) {
      ++rep.unknown_categories[label];
    }
  }

  std::map<long long, RecordingInfo> recordings;
  if (recording_meta.has_value()) {
    const CsvTable rec_meta = CsvTable::read(*recording_meta);
    const std::size_t rec_col = rec_meta.column(columns.rec_meta_recording_id);
    const std::size_t loc_col = rec_meta.column(columns.rec_meta_location_id);
    const std::size_t rate_col = rec_meta.column(columns.rec_meta_frame_rate);
    for (const CsvRow & row : rec_meta.rows()) {
      RecordingInfo info;
      info.location_id = static_cast<int>(rec_meta.integer(row, loc_col));
      info.frame_rate = rec_meta.number(row, rate_col);
      if (!(info.frame_rate > 0.0)) {
        throw ParseError(recording_meta->string(), row.line, "frame rate must be positive");
      }
      recordings[rec_meta.integer(row, rec_col)] = info;
    }
  }

  const CsvTable data = CsvTable::read(tracks);
  const std::size_t rec_col = data.column(columns.recording_id);
  const std::size_t track_col = data.column(columns.track_id);
  const std::size_t frame_col = data.column(columns.frame);
  const std::size_t x_col = data.column(columns.x);
  const std::size_t y_col = data.column(columns.y);
  const std::size_t vx_col = data.column(columns.vx);
  const std::size_t vy_col = data.column(columns.vy);

  std::map<std::pair<long long, long long>, std::vector<FrameRow>> grouped;
  for (const CsvRow & row : data.rows()) {
    FrameRow frame;
    frame.frame = data.integer(row, frame_col);
    frame.position = {data.number(row, x_col), data.number(row, y_col)};
    frame.velocity = {data.number(row, vx_col), data.number(row, vy_col)};
    frame.line = row.line;
    grouped[{data.integer(row, rec_col), data.integer(row, track_col)}].push_back(frame);
  }

  Corpus corpus;
  for (auto & [key, frames] : grouped) {
    const auto [rec, track] = key;

    auto category_it = categories.find({rec, track});
    if (category_it == categories.end()) {
      category_it = categories.find({-1, track});
    }
    if (category_it == categories.end()) {
      throw ParseError(
        tracks_meta.string(), 0,
        "track " + std::to_string(track) + " of recording " + std::to_string(rec) +
          " has no metadata entry");
    }
    if (!category_it->second.has_value()) {
      ++rep.tracks_skipped;
      continue;
    }

    std::sort(frames.begin(), frames.end(), [](const FrameRow & a, const FrameRow & b) {
      return a.frame < b.frame;
    });
    for (std::size_t i = 1; i < frames.size(); ++i) {
      if (frames[i].frame == frames[i - 1].frame) {
        throw ParseError(
          tracks.string(), frames[i].line,
          "duplicate frame " + std::to_string(frames[i].frame) + " for track " +
            std::to_string(track));
      }
      if (frames[i].frame != frames[i - 1].frame + 1) {
        throw ParseError(
          tracks.string(), frames[i].line,
          "non-consecutive frames for track " + std::to_string(track));
      }
    }

    RecordingInfo info;
    if (const auto it = recordings.find(rec); it != recordings.end()) {
      info = it->second;
    }

    Trajectory traj;
    traj.recording_id = static_cast<int>(rec);
    traj.track_id = static_cast<int>(track);
    traj.category = *category_it->second;
    traj.location_id = info.location_id;
    traj.sample_period = 1.0 / info.frame_rate;
    traj.states.reserve(frames.size());
    traj.velocities.reserve(frames.size());
    for (const FrameRow & frame : frames) {
      RoadUserState state;
      state.position = frame.position;
      state.speed = frame.velocity.norm();
      traj.states.push_back(state);
      traj.velocities.push_back(frame.velocity);
    }
    corpus.trajectories.push_back(std::move(traj));
    ++rep.tracks_read;
    corpus.provenance.emplace(static_cast<int>(rec), tracks.string());
  }

  return corpus;
}

void write_tracks(
  const Corpus & corpus, const std::filesystem::path & tracks,
  const std::filesystem::path & tracks_meta, const std::filesystem::path & recording_meta)
{
  std::ofstream data(tracks);
  std::ofstream meta(tracks_meta);
  std::ofstream rec_meta(recording_meta);
  if (!data || !meta || !rec_meta) {
    throw std::runtime_error("cannot open track output files in " + tracks.parent_path().string());
  }

  data << "recordingId,trackId,frame,xCenter,yCenter,xVelocity,yVelocity\n";
  meta << "recordingId,trackId,class\n";
  rec_meta << "recordingId,locationId,frameRate\n";

  std::map<int, std::pair<int, double>> recording_rows;  // id -> (location, rate)
  for (const Trajectory & traj : corpus.trajectories) {
    meta << traj.recording_id << ',' << traj.track_id << ',' << to_string(traj.category) << '\n';
    for (std::size_t i = 0; i < traj.states.size(); ++i) {
      const Vec2 velocity = i < traj.velocities.size() ? traj.velocities[i] : Vec2{0.0, 0.0};
      data << traj.recording_id << ',' << traj.track_id << ',' << i << ','
           << format_double(traj.states[i].position.x()) << ','
           << format_double(traj.states[i].position.y()) << ','
           << format_double(velocity.x()) << ',' << format_double(velocity.y()) << '\n';
    }

    double rate = 1.0 / traj.sample_period;
    if (std::abs(rate - std::round(rate)) < 1e-6) {
      rate = std::round(rate);
    }
    recording_rows[traj.recording_id] = {traj.location_id, rate};
  }

  for (const auto & [rec, info] : recording_rows) {
    rec_meta << rec << ',' << info.first << ',' << format_double(info.second) << '\n';
  }
}

}  // namespace roadpred
