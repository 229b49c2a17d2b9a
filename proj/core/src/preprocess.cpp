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

#include "roadpred/preprocess.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "roadpred/percentile.hpp"

namespace roadpred
{

Trajectory downsample(const Trajectory & traj, int factor)
{
  if (factor < 1) {
    throw std::invalid_argument("downsample factor must be at least 1");
  }
  if (factor == 1) {
    return traj;
  }

  Trajectory out;
  out.recording_id = traj.recording_id;
  out.track_id = traj.track_id;
  out.category = traj.category;
  out.location_id = traj.location_id;
  out.sample_period = traj.sample_period * factor;
  for (std::size_t i = 0; i < traj.states.size(); i += static_cast<std::size_t>(factor)) {
    out.states.push_back(traj.states[i]);
    if (i < traj.velocities.size()) {
      out.velocities.push_back(traj.velocities[i]);
    }
    if (i < traj.other_positions.size()) {
      out.other_positions.push_back(traj.other_positions[i]);
    }
  }
  return out;
}

std::vector<Vec2> derive_orientations(const std::vector<Vec2> & velocities)
{
  if (velocities.empty()) {
    throw std::invalid_argument("cannot derive orientations from an empty velocity sequence");
  }

  std::vector<Vec2> orientations(velocities.size(), Vec2{0.0, 0.0});
  Vec2 last{0.0, 0.0};
  bool seen_nonzero = false;
  for (std::size_t i = 0; i < velocities.size(); ++i) {
    const double norm = velocities[i].norm();
    if (norm > 0.0) {
      last = velocities[i] / norm;
      seen_nonzero = true;
    }
    orientations[i] = last;
  }
  if (!seen_nonzero) {
    throw std::invalid_argument("all velocities are zero; orientation is undefined");
  }

  // Leading zero-velocity samples take the first orientation that exists.
  for (std::size_t i = 0; i < orientations.size() && orientations[i].isZero(0.0); ++i) {
    std::size_t j = i;
    while (orientations[j].isZero(0.0)) {
      ++j;
    }
    orientations[i] = orientations[j];
  }
  return orientations;
}

void derive_orientations(Trajectory & traj)
{
  if (traj.velocities.size() != traj.states.size()) {
    throw std::invalid_argument("trajectory velocities do not match its states");
  }
  const std::vector<Vec2> orientations = derive_orientations(traj.velocities);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    traj.states[i].orientation = orientations[i];
  }
}

std::string FilterReport::summary() const
{
  std::ostringstream out;
  out << "merged truck_bus into vehicle: " << merged_truck_bus << '\n';
  out << "dropped (too short / speed outlier / stationary): " << dropped_too_short << " / "
      << dropped_speed_outlier << " / " << dropped_stationary << '\n';
  for (const auto & [cell, counts] : drops) {
    out << "  location " << cell.first << ' ' << to_string(cell.second) << ": " << counts[0]
        << " / " << counts[1] << " / " << counts[2] << '\n';
  }
  return out.str();
}

std::pair<Corpus, FilterReport> filter_corpus(const Corpus & corpus)
{
  Corpus kept;
  kept.provenance = corpus.provenance;
  FilterReport report;

  for (const Trajectory & original : corpus.trajectories) {
    Trajectory traj = original;
    if (traj.category == Category::truck_bus) {
      traj.category = Category::vehicle;
      ++report.merged_truck_bus;
    }

    const auto drop = [&](FilterReport::Rule rule) {
      ++report.drops[{traj.location_id, traj.category}][rule];
      switch (rule) {
        case FilterReport::too_short:
          ++report.dropped_too_short;
          break;
        case FilterReport::speed_outlier:
          ++report.dropped_speed_outlier;
          break;
        case FilterReport::stationary:
          ++report.dropped_stationary;
          break;
      }
    };

    if (traj.duration() < kMinTrajectoryDuration) {
      drop(FilterReport::too_short);
      continue;
    }

    double speed_cap_kmh = 0.0;
    if (traj.category == Category::pedestrian) {
      speed_cap_kmh = kMaxPedestrianSpeedKmh;
    } else if (traj.category == Category::bicycle) {
      speed_cap_kmh = kMaxBicycleSpeedKmh;
    }
    if (speed_cap_kmh > 0.0) {
      const bool outlier = std::any_of(
        traj.states.begin(), traj.states.end(),
        [&](const RoadUserState & s) { return mps_to_kmh(s.speed) > speed_cap_kmh; });
      if (outlier) {
        drop(FilterReport::speed_outlier);
        continue;
      }
    }

    std::vector<double> speeds;
    speeds.reserve(traj.states.size());
    for (const RoadUserState & s : traj.states) {
      speeds.push_back(s.speed);
    }
    if (
      mps_to_kmh(percentile(std::move(speeds), kStationarySpeedPercentile)) <
      kStationarySpeedKmh) {
      drop(FilterReport::stationary);
      continue;
    }

    kept.trajectories.push_back(std::move(traj));
  }

  return {std::move(kept), std::move(report)};
}

}  // namespace roadpred
