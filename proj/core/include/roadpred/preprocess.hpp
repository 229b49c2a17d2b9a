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

#ifndef ROADPRED_PREPROCESS_HPP_
#define ROADPRED_PREPROCESS_HPP_

#include <array>
#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "roadpred/types.hpp"

namespace roadpred
{

/// Trajectories shorter than this many seconds cannot support a full
/// prediction query (2.8 s of warmup plus a 4.8 s horizon) and are dropped.
inline constexpr double kMinTrajectoryDuration = 2.8 + 4.8;

/// Per-sample speeds above these bounds are tracking outliers for the
/// respective categories.
inline constexpr double kMaxPedestrianSpeedKmh = 15.0;
inline constexpr double kMaxBicycleSpeedKmh = 35.0;

/// A trajectory whose 95th-percentile speed is below this is stationary
/// (e.g. a parked vehicle) and carries no motion to learn from.
inline constexpr double kStationarySpeedKmh = 0.36;
inline constexpr double kStationarySpeedPercentile = 95.0;

/// Keeps every factor-th sample starting from the first and scales the
/// sample period accordingly. Velocities and situation annotations are
/// subsampled along with the states. Throws std::invalid_argument for
/// factor < 1.
Trajectory downsample(const Trajectory & traj, int factor);

/// Unit orientation per sample: the normalized velocity where it is
/// nonzero, otherwise the most recent preceding nonzero one; leading zeros
/// take the first subsequent nonzero one. Throws std::invalid_argument when
/// the sequence is empty or all-zero (a stationary track, dropped upstream).
std::vector<Vec2> derive_orientations(const std::vector<Vec2> & velocities);

/// Applies derive_orientations to the trajectory's stored velocities,
/// writing the result into its states.
void derive_orientations(Trajectory & traj);

/// Per-rule and per-(location, category) drop counts from filter_corpus.
struct FilterReport
{
  enum Rule { too_short = 0, speed_outlier = 1, stationary = 2 };

  std::size_t merged_truck_bus = 0;
  std::size_t dropped_too_short = 0;
  std::size_t dropped_speed_outlier = 0;
  std::size_t dropped_stationary = 0;
  std::map<std::pair<int, Category>, std::array<std::size_t, 3>> drops;

  std::size_t total_dropped() const
  {
    return dropped_too_short + dropped_speed_outlier + dropped_stationary;
  }

  std::string summary() const;
};

/// Cleans a downsampled, orientation-complete corpus, in order: merges
/// truck_bus into vehicle; drops trajectories shorter than
/// kMinTrajectoryDuration; drops pedestrian/bicycle trajectories with any
/// sample above their speed bound; drops trajectories whose 95th-percentile
/// speed is below kStationarySpeedKmh. The rules are independent
/// predicates, so the order only affects which rule gets credited in the
/// report, and a second application changes nothing.
std::pair<Corpus, FilterReport> filter_corpus(const Corpus & corpus);

}  // namespace roadpred

#endif  // ROADPRED_PREPROCESS_HPP_
