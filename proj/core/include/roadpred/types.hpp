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

#ifndef ROADPRED_TYPES_HPP_
#define ROADPRED_TYPES_HPP_

#include <Eigen/Core>

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace roadpred
{

using Vec2 = Eigen::Vector2d;

/// Road user class. truck_bus only appears in freshly ingested data; the
/// preprocessing pipeline merges it into vehicle.
enum class Category { vehicle, bicycle, pedestrian, truck_bus };

std::string_view to_string(Category category);

/// Maps a class label to a Category. Accepts both the labels used in drone
/// recording metadata ("car", "truck_bus", ...) and the names this library
/// writes. Unknown labels yield nullopt.
std::optional<Category> parse_category(std::string_view label);

/// Instantaneous state of one road user: planar position in meters,
/// non-negative speed in m/s, and a unit heading vector.
struct RoadUserState
{
  Vec2 position{0.0, 0.0};
  double speed{0.0};
  Vec2 orientation{0.0, 0.0};  // unit norm once derived; zero before that
};

/// Uniformly sampled state sequence of a single tracked road user.
struct Trajectory
{
  int recording_id{0};
  int track_id{0};
  Category category{Category::vehicle};
  int location_id{0};
  double sample_period{0.0};  // seconds between consecutive states
  std::vector<RoadUserState> states;

  /// Raw per-sample velocities, kept from ingest until orientations are
  /// derived. Empty for trajectories read back from a processed corpus.
  std::vector<Vec2> velocities;

  /// Optional per-sample position of one other road user in the same scene
  /// (the traffic-situation extension). Empty when the trajectory carries no
  /// situation annotation; a present entry of nullopt means "no other road
  /// user at this instant".
  std::vector<std::optional<Vec2>> other_positions;

  bool has_situations() const { return !other_positions.empty(); }

  std::size_t size() const { return states.size(); }

  /// Elapsed time from first to last sample, (n - 1) * sample_period.
  double duration() const
  {
    return states.empty() ? 0.0 : static_cast<double>(states.size() - 1) * sample_period;
  }
};

/// A collection of trajectories plus the source file of every recording.
/// (recording_id, track_id) pairs are unique within a corpus.
struct Corpus
{
  std::vector<Trajectory> trajectories;
  std::map<int, std::string> provenance;

  std::size_t size() const { return trajectories.size(); }
  bool empty() const { return trajectories.empty(); }
};

inline double kmh_to_mps(double kmh) { return kmh / 3.6; }
inline double mps_to_kmh(double mps) { return mps * 3.6; }

}  // namespace roadpred

#endif  // ROADPRED_TYPES_HPP_
