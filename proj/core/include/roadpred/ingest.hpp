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

#ifndef ROADPRED_INGEST_HPP_
#define ROADPRED_INGEST_HPP_

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "roadpred/types.hpp"

namespace roadpred
{

/// Column names of the per-frame track file and its companion metadata
/// file. Defaults match the naming used by public drone recording datasets.
struct ColumnMap
{
  std::string recording_id = "recordingId";
  std::string track_id = "trackId";
  std::string frame = "frame";
  std::string x = "xCenter";
  std::string y = "yCenter";
  std::string vx = "xVelocity";
  std::string vy = "yVelocity";

  std::string meta_track_id = "trackId";
  std::string meta_class = "class";

  std::string rec_meta_recording_id = "recordingId";
  std::string rec_meta_location_id = "locationId";
  std::string rec_meta_frame_rate = "frameRate";
};

/// What ingest skipped and why.
struct IngestReport
{
  std::size_t tracks_read = 0;
  std::size_t tracks_skipped = 0;
  std::map<std::string, std::size_t> unknown_categories;  // label -> count
};

/// Reads one recording's per-frame file plus its track metadata into a
/// Corpus at the native frame rate. Speed is the velocity norm; orientation
/// stays zero until derive_orientations runs. Tracks with an unknown
/// category label are skipped and tallied in the report.
///
/// recording_meta, when given, supplies the location id and frame rate per
/// recording; without it the location id is 0 and the frame rate 25 Hz.
/// Frames within a track must be consecutive. A (recording, track) pair
/// that already exists in the output is an error.
Corpus ingest(
  const std::filesystem::path & tracks, const std::filesystem::path & tracks_meta,
  const std::optional<std::filesystem::path> & recording_meta = std::nullopt,
  const ColumnMap & columns = {}, IngestReport * report = nullptr);

/// Writes a native-rate corpus back out in the same three-file layout that
/// ingest reads (tracks, track metadata, recording metadata). The scenario
/// generators use this to produce pipeline-ready raw input.
void write_tracks(
  const Corpus & corpus, const std::filesystem::path & tracks,
  const std::filesystem::path & tracks_meta, const std::filesystem::path & recording_meta);

}  // namespace roadpred

#endif  // ROADPRED_INGEST_HPP_
