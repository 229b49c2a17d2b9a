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

#include "roadpred/split.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace roadpred
{

namespace
{
// 2^24 subsets per location is the practical enumeration bound; drone
// datasets have an order of magnitude fewer recordings per location.
constexpr std::size_t kMaxRecordingsPerLocation = 24;
}  // namespace

SplitResult split_by_recordings(const Corpus & corpus, double target_fraction)
{
  if (!(target_fraction > 0.0 && target_fraction < 1.0)) {
    throw std::invalid_argument("target fraction must lie strictly between 0 and 1");
  }

  // location -> recording -> per-category trajectory counts
  std::map<int, std::map<int, std::map<Category, std::size_t>>> cells;
  std::map<int, int> location_of_recording;
  for (const Trajectory & traj : corpus.trajectories) {
    const auto [it, inserted] =
      location_of_recording.emplace(traj.recording_id, traj.location_id);
    if (!inserted && it->second != traj.location_id) {
      throw std::invalid_argument(
        "recording " + std::to_string(traj.recording_id) + " spans multiple locations");
    }
    ++cells[traj.location_id][traj.recording_id][traj.category];
  }

  SplitResult result;
  for (const auto & [location, recordings] : cells) {
    if (recordings.size() < 2) {
      throw std::invalid_argument(
        "location " + std::to_string(location) +
        " has a single recording; recording-level splitting is impossible");
    }
    if (recordings.size() > kMaxRecordingsPerLocation) {
      throw std::invalid_argument(
        "location " + std::to_string(location) + " has " + std::to_string(recordings.size()) +
        " recordings; exhaustive splitting is infeasible");
    }

    std::vector<int> ids;
    ids.reserve(recordings.size());
    std::map<Category, std::size_t> totals;
    for (const auto & [rec, counts] : recordings) {
      ids.push_back(rec);
      for (const auto & [category, count] : counts) {
        totals[category] += count;
      }
    }

    double best_objective = 0.0;
    std::vector<int> best_train;
    bool have_best = false;

    const std::uint32_t full = (1u << ids.size()) - 1u;
    for (std::uint32_t mask = 1; mask < full; ++mask) {
      std::map<Category, std::size_t> train_counts;
      std::vector<int> train_ids;
      for (std::size_t i = 0; i < ids.size(); ++i) {
        if ((mask >> i) & 1u) {
          train_ids.push_back(ids[i]);
          for (const auto & [category, count] : recordings.at(ids[i])) {
            train_counts[category] += count;
          }
        }
      }

      double objective = 0.0;
      for (const auto & [category, total] : totals) {
        const double fraction =
          static_cast<double>(train_counts[category]) / static_cast<double>(total);
        const double gap = fraction - target_fraction;
        objective += gap * gap;
      }

      // ids is sorted, so train_ids is sorted; ties resolve to the
      // lexicographically smallest train set.
      if (!have_best || objective < best_objective ||
          (objective == best_objective && train_ids < best_train)) {
        best_objective = objective;
        best_train = std::move(train_ids);
        have_best = true;
      }
    }

    result.deviation += best_objective;
    result.train_recordings.insert(best_train.begin(), best_train.end());
  }

  for (const auto & [rec, location] : location_of_recording) {
    (void)location;
    if (result.train_recordings.count(rec) == 0) {
      result.test_recordings.insert(rec);
    }
  }

  for (const Trajectory & traj : corpus.trajectories) {
    Corpus & side =
      result.train_recordings.count(traj.recording_id) != 0 ? result.train : result.test;
    side.trajectories.push_back(traj);
  }
  for (const auto & [rec, source] : corpus.provenance) {
    Corpus & side = result.train_recordings.count(rec) != 0 ? result.train : result.test;
    side.provenance.emplace(rec, source);
  }

  return result;
}

}  // namespace roadpred
