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

#ifndef ROADPRED_EVALUATION_HPP_
#define ROADPRED_EVALUATION_HPP_

#include <cstdint>
#include <filesystem>
#include <string_view>
#include <utility>
#include <vector>

#include "roadpred/database.hpp"
#include "roadpred/similarity.hpp"
#include "roadpred/types.hpp"

namespace roadpred
{

enum class ModelKind { weighted_average, constant_velocity, interaction };

std::string_view to_string(ModelKind kind);

/// Which predictor to score and with what parameters.
struct ModelConfig
{
  ModelKind kind = ModelKind::weighted_average;
  SimilarityParams params;
  double d = 0.0;  // partner-position weight, interaction model only

  /// On NoSimilarData, score the constant-velocity prediction instead of
  /// flagging the query.
  bool fallback_to_cv = false;
};

/// One prediction scored against the observed future position.
struct ErrorRecord
{
  ModelKind model = ModelKind::weighted_average;
  Category category = Category::vehicle;
  int location_id = 0;
  std::uint32_t trajectory_index = 0;
  std::uint32_t time_index = 0;
  int horizon_steps = 0;
  double horizon_seconds = 0.0;
  Vec2 query_position{0.0, 0.0};
  double error = 0.0;  // meters; unset when no_similar_data and no fallback
  bool no_similar_data = false;
  bool used_fallback = false;

  /// Flagged queries without a fallback prediction carry no usable error.
  bool has_error() const { return !no_similar_data || used_fallback; }
};

/// Scores the model on every admissible (trajectory, sample, horizon) query
/// of the test corpus: samples past the database's warmup offset whose
/// H-step future is observed. The error is the distance between predicted
/// and observed position. Horizons must all be present in the database.
std::vector<ErrorRecord> evaluate(
  const DisplacementDatabase & db, const ModelConfig & model, const Corpus & test,
  const std::vector<int> & horizons);

/// Distribution summary of the errors of one (model, category, location,
/// horizon) group.
struct HorizonStats
{
  double horizon_seconds = 0.0;
  std::size_t count = 0;
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double mean = 0.0;
  double max = 0.0;
};

struct StatsKey
{
  ModelKind model;
  Category category;
  int location_id;
  int horizon_steps;

  auto operator<=>(const StatsKey &) const = default;
};

/// Per-group error statistics with interpolated quartiles. Flagged records
/// without fallback are excluded; empty groups are omitted.
std::vector<std::pair<StatsKey, HorizonStats>> horizon_stats(
  const std::vector<ErrorRecord> & records);

struct AdeFdeKey
{
  ModelKind model;
  int location_id;

  auto operator<=>(const AdeFdeKey &) const = default;
};

struct AdeFde
{
  double ade = 0.0;  // mean of the per-horizon mean errors
  double fde = 0.0;  // mean error at the final horizon
};

/// Displacement-error summary per (model, location) with categories pooled.
/// ADE averages the per-horizon mean errors over required_horizons (their
/// unweighted mean, so long trajectories do not dominate short ones); FDE
/// is the mean error at the largest required horizon. Throws
/// std::invalid_argument naming any required horizon a group lacks.
std::vector<std::pair<AdeFdeKey, AdeFde>> ade_fde(
  const std::vector<ErrorRecord> & records,
  const std::vector<int> & required_horizons = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12});

/// Flat per-position export of one horizon's errors, for external plotting.
struct ErrorMapRow
{
  double x = 0.0;
  double y = 0.0;
  double error = 0.0;
  ModelKind model = ModelKind::weighted_average;
  Category category = Category::vehicle;
};

std::vector<ErrorMapRow> error_map(const std::vector<ErrorRecord> & records, int horizon_steps);

/// CSV writers for the records and stats tables, and a plain-text report
/// with one row per location and "ADE / FDE" cells per model.
void write_records(const std::vector<ErrorRecord> & records, const std::filesystem::path & path);
void write_stats(
  const std::vector<std::pair<StatsKey, HorizonStats>> & stats,
  const std::filesystem::path & path);
void write_ade_fde_report(
  const std::vector<std::pair<AdeFdeKey, AdeFde>> & results, const std::filesystem::path & path);

}  // namespace roadpred

#endif  // ROADPRED_EVALUATION_HPP_
