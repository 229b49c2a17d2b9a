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

#include "roadpred/evaluation.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

#include "roadpred/errors.hpp"
#include "roadpred/percentile.hpp"

namespace roadpred
{

std::string_view to_string(ModelKind kind)
{
  switch (kind) {
    case ModelKind::weighted_average:
      return "wam";
    case ModelKind::constant_velocity:
      return "constant_velocity";
    case ModelKind::interaction:
      return "interaction";
  }
  return "unknown";
}

std::vector<ErrorRecord> evaluate(
  const DisplacementDatabase & db, const ModelConfig & model, const Corpus & test,
  const std::vector<int> & horizons)
{
  for (const int h : horizons) {
    db.horizon_slot(h);  // throws for horizons the database lacks
  }
  if (model.kind == ModelKind::interaction && !db.has_situations()) {
    throw std::invalid_argument("interaction model needs a database with situation annotations");
  }

  const std::size_t i_min = first_query_index(db.warmup_offset);
  std::vector<ErrorRecord> records;

  for (std::size_t n = 0; n < test.trajectories.size(); ++n) {
    const Trajectory & traj = test.trajectories[n];
    for (const int h : horizons) {
      const auto steps = static_cast<std::size_t>(h);
      if (traj.states.size() < i_min + steps + 1) {
        continue;
      }
      const std::size_t i_max = traj.states.size() - 1 - steps;
      for (std::size_t i = i_min; i <= i_max; ++i) {
        const RoadUserState & query = traj.states[i];
        const Vec2 truth = traj.states[i + steps].position;

        ErrorRecord record;
        record.model = model.kind;
        record.category = traj.category;
        record.location_id = traj.location_id;
        record.trajectory_index = static_cast<std::uint32_t>(n);
        record.time_index = static_cast<std::uint32_t>(i);
        record.horizon_steps = h;
        record.horizon_seconds = static_cast<double>(h) * traj.sample_period;
        record.query_position = query.position;

        try {
          Prediction prediction;
          switch (model.kind) {
            case ModelKind::weighted_average:
              prediction = predict(db, model.params, query, h);
              break;
            case ModelKind::constant_velocity:
              prediction = constant_velocity_predict(query, h, traj.sample_period);
              break;
            case ModelKind::interaction: {
              TrafficSituationState situation;
              situation.target = query;
              if (i < traj.other_positions.size()) {
                situation.other_position = traj.other_positions[i];
              }
              InteractionParams params;
              params.base = model.params;
              params.d = model.d;
              prediction = interaction_predict(db, params, situation, h);
              break;
            }
          }
          record.error = (truth - prediction.position).norm();
        } catch (const NoSimilarDataError &) {
          record.no_similar_data = true;
          if (model.fallback_to_cv) {
            const Prediction fallback =
              constant_velocity_predict(query, h, traj.sample_period);
            record.error = (truth - fallback.position).norm();
            record.used_fallback = true;
          }
        }
        records.push_back(record);
      }
    }
  }
  return records;
}

std::vector<std::pair<StatsKey, HorizonStats>> horizon_stats(
  const std::vector<ErrorRecord> & records)
{
  std::map<StatsKey, std::vector<double>> groups;
  std::map<StatsKey, double> horizon_seconds;
  for (const ErrorRecord & record : records) {
    if (!record.has_error()) {
      continue;
    }
    const StatsKey key{record.model, record.category, record.location_id, record.horizon_steps};
    groups[key].push_back(record.error);
    horizon_seconds[key] = record.horizon_seconds;
  }

  std::vector<std::pair<StatsKey, HorizonStats>> out;
  out.reserve(groups.size());
  for (auto & [key, errors] : groups) {
    HorizonStats stats;
    stats.horizon_seconds = horizon_seconds[key];
    stats.count = errors.size();
    stats.q1 = percentile(errors, 25.0);
    stats.median = percentile(errors, 50.0);
    stats.q3 = percentile(errors, 75.0);
    stats.max = *std::max_element(errors.begin(), errors.end());
    double sum = 0.0;
    for (const double e : errors) {
      sum += e;
    }
    stats.mean = sum / static_cast<double>(errors.size());
    out.emplace_back(key, stats);
  }
  return out;
}

std::vector<std::pair<AdeFdeKey, AdeFde>> ade_fde(
  const std::vector<ErrorRecord> & records, const std::vector<int> & required_horizons)
{
  if (required_horizons.empty()) {
    throw std::invalid_argument("at least one horizon is required");
  }
  const int final_horizon =
    *std::max_element(required_horizons.begin(), required_horizons.end());

  // (group, horizon) -> (error sum, count); categories pool into the group.
  std::map<AdeFdeKey, std::map<int, std::pair<double, std::size_t>>> groups;
  for (const ErrorRecord & record : records) {
    if (!record.has_error()) {
      continue;
    }
    auto & cell = groups[{record.model, record.location_id}][record.horizon_steps];
    cell.first += record.error;
    ++cell.second;
  }

  std::vector<std::pair<AdeFdeKey, AdeFde>> out;
  for (const auto & [key, horizons] : groups) {
    std::string missing;
    for (const int h : required_horizons) {
      if (horizons.find(h) == horizons.end()) {
        missing += (missing.empty() ? "" : ", ") + std::to_string(h);
      }
    }
    if (!missing.empty()) {
      throw std::invalid_argument(
        std::string(to_string(key.model)) + " at location " + std::to_string(key.location_id) +
        " lacks horizons: " + missing);
    }

    AdeFde result;
    for (const int h : required_horizons) {
      const auto & [sum, count] = horizons.at(h);
      result.ade += sum / static_cast<double>(count);
    }
    result.ade /= static_cast<double>(required_horizons.size());
    const auto & [final_sum, final_count] = horizons.at(final_horizon);
    result.fde = final_sum / static_cast<double>(final_count);
    out.emplace_back(key, result);
  }
  return out;
}

std::vector<ErrorMapRow> error_map(const std::vector<ErrorRecord> & records, int horizon_steps)
{
  std::vector<ErrorMapRow> rows;
  for (const ErrorRecord & record : records) {
    if (record.horizon_steps != horizon_steps || !record.has_error()) {
      continue;
    }
    rows.push_back(
      {record.query_position.x(), record.query_position.y(), record.error, record.model,
       record.category});
  }
  return rows;
}

void write_records(const std::vector<ErrorRecord> & records, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "model,category,location_id,trajectory,time_index,horizon_steps,horizon_seconds,"
         "x,y,error,no_similar_data,used_fallback\n";
  char buffer[256];
  for (const ErrorRecord & r : records) {
    std::snprintf(
      buffer, sizeof(buffer), "%s,%s,%d,%u,%u,%d,%.17g,%.17g,%.17g,",
      std::string(to_string(r.model)).c_str(), std::string(to_string(r.category)).c_str(),
      r.location_id, r.trajectory_index, r.time_index, r.horizon_steps, r.horizon_seconds,
      r.query_position.x(), r.query_position.y());
    out << buffer;
    if (r.has_error()) {
      std::snprintf(buffer, sizeof(buffer), "%.17g", r.error);
      out << buffer;
    }
    out << ',' << (r.no_similar_data ? 1 : 0) << ',' << (r.used_fallback ? 1 : 0) << '\n';
  }
}

void write_stats(
  const std::vector<std::pair<StatsKey, HorizonStats>> & stats,
  const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "model,category,location_id,horizon_steps,horizon_seconds,count,median,q1,q3,mean,max\n";
  char buffer[256];
  for (const auto & [key, s] : stats) {
    std::snprintf(
      buffer, sizeof(buffer), "%s,%s,%d,%d,%.17g,%zu,%.17g,%.17g,%.17g,%.17g,%.17g\n",
      std::string(to_string(key.model)).c_str(), std::string(to_string(key.category)).c_str(),
      key.location_id, key.horizon_steps, s.horizon_seconds, s.count, s.median, s.q1, s.q3,
      s.mean, s.max);
    out << buffer;
  }
}

void write_ade_fde_report(
  const std::vector<std::pair<AdeFdeKey, AdeFde>> & results, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }

  std::set<ModelKind> models;
  std::set<int> locations;
  std::map<std::pair<int, ModelKind>, AdeFde> table;
  for (const auto & [key, value] : results) {
    models.insert(key.model);
    locations.insert(key.location_id);
    table[{key.location_id, key.model}] = value;
  }

  out << "ADE / FDE in meters, categories pooled\n\n";
  out << "location";
  for (const ModelKind model : models) {
    out << '\t' << to_string(model);
  }
  out << '\n';
  char buffer[64];
  for (const int location : locations) {
    out << location;
    for (const ModelKind model : models) {
      const auto it = table.find({location, model});
      if (it == table.end()) {
        out << "\t-";
      } else {
        std::snprintf(buffer, sizeof(buffer), "\t%.2f / %.2f", it->second.ade, it->second.fde);
        out << buffer;
      }
    }
    out << '\n';
  }
}

}  // namespace roadpred
