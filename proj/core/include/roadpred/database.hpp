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

#ifndef ROADPRED_DATABASE_HPP_
#define ROADPRED_DATABASE_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <vector>

#include "roadpred/ball_tree.hpp"
#include "roadpred/similarity.hpp"
#include "roadpred/types.hpp"

namespace roadpred
{

/// Warmup samples are excluded from querying so that predictions from this
/// model and from models that consume an observation history start at the
/// same instant. 7 samples at 0.4 s are 2.8 s of history.
inline constexpr int kDefaultWarmupOffset = 7;

/// Weights at or below this are treated as zero; predictions never divide
/// by a sum of pure underflow artifacts.
inline constexpr double kMinWeight = 1e-300;

/// Where a database entry came from: sample time_index of trajectory
/// trajectory_index in the source corpus.
struct EntrySource
{
  std::uint32_t trajectory_index = 0;
  std::uint32_t time_index = 0;
};

/// Every stored state with its observed displacements, indexed for
/// fixed-radius lookup by position.
///
/// A trajectory of T samples contributes one entry per sample index i with
/// max(0, warmup_offset - 1) <= i <= T - 1 - max(horizon): late enough to
/// have warmup_offset samples of history behind it (counting itself) and
/// early enough that every requested horizon is observed.
struct DisplacementDatabase
{
  std::vector<RoadUserState> states;
  std::vector<EntrySource> sources;

  /// Per-sample partner positions; empty unless the corpus carried
  /// situation annotations on every trajectory.
  std::vector<std::optional<Vec2>> other_positions;

  std::vector<int> horizons;                     // sorted, in samples
  std::vector<std::vector<Vec2>> displacements;  // [horizon slot][entry]

  int warmup_offset = kDefaultWarmupOffset;
  double sample_period = 0.0;

  BallTree index;

  std::size_t size() const { return states.size(); }
  bool has_situations() const { return !other_positions.empty(); }

  /// Position of horizon H in `horizons`; throws std::invalid_argument if
  /// the database was not built for H.
  std::size_t horizon_slot(int horizon_steps) const;
};

/// First admissible 0-based sample index under a warmup of `warmup_offset`
/// samples.
inline std::size_t first_query_index(int warmup_offset)
{
  return warmup_offset > 0 ? static_cast<std::size_t>(warmup_offset - 1) : 0;
}

/// Builds the database over every admissible sample of every trajectory.
/// Trajectories too short to admit any entry contribute none; a corpus
/// yielding no entries at all is an error. Situation annotations are
/// carried into the database only when every trajectory has them.
DisplacementDatabase build_database(
  const Corpus & corpus, const std::vector<int> & horizons,
  int warmup_offset = kDefaultWarmupOffset);

/// A predicted displacement and position for one horizon, with the weight
/// mass and entry count behind it as a support diagnostic.
struct Prediction
{
  int horizon_steps = 0;
  Vec2 displacement{0.0, 0.0};
  Vec2 position{0.0, 0.0};
  double total_weight = 0.0;
  std::size_t support_count = 0;
};

/// Similarity-weighted average of the stored H-step displacements of all
/// entries within params.r of the query position. Throws NoSimilarDataError
/// (carrying the in-radius candidate count) when no entry has nonzero
/// weight.
Prediction predict(
  const DisplacementDatabase & db, const SimilarityParams & params, const RoadUserState & R,
  int horizon_steps);

/// The weighted sum of squared errors that predict() minimizes over d:
/// sum over in-radius entries of similarity * ||d - stored displacement||^2.
/// Kept as an independently evaluable objective so the closed-form solution
/// can be checked against a numeric minimizer.
double weighted_sse_objective(
  const DisplacementDatabase & db, const SimilarityParams & params, const RoadUserState & R,
  int horizon_steps, const Vec2 & d);

/// Baseline: the road user keeps its current velocity, so the predicted
/// position is p + s * o * H * sample_period.
Prediction constant_velocity_predict(const RoadUserState & R, int horizon_steps,
  double sample_period);

/// Weighted average with traffic-situation weights: entries are comparable
/// to the query only when both have, or both lack, an interaction partner.
/// Requires a database built with situation annotations.
Prediction interaction_predict(
  const DisplacementDatabase & db, const InteractionParams & params,
  const TrafficSituationState & T, int horizon_steps);

/// Serializes the entry table as versioned text; the spatial index is
/// rebuilt on load rather than stored.
void write_database(const DisplacementDatabase & db, const std::filesystem::path & path);
DisplacementDatabase read_database(const std::filesystem::path & path);

}  // namespace roadpred

#endif  // ROADPRED_DATABASE_HPP_
