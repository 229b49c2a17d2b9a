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

#include "roadpred/training.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "roadpred/errors.hpp"
#include "roadpred/parallel.hpp"

namespace roadpred
{

std::size_t entry_count(const Trajectory & traj, int horizon_steps, int warmup_offset)
{
  const std::size_t i_min = first_query_index(warmup_offset);
  const std::size_t needed = i_min + static_cast<std::size_t>(horizon_steps) + 1;
  return traj.states.size() < needed
           ? 0
           : traj.states.size() - i_min - static_cast<std::size_t>(horizon_steps);
}

FoldAssignment partition_folds(
  const Corpus & corpus, int folds, std::uint64_t seed, int horizon_steps, int warmup_offset)
{
  if (folds < 1) {
    throw std::invalid_argument("fold count must be positive");
  }
  if (corpus.trajectories.size() < static_cast<std::size_t>(folds)) {
    throw std::invalid_argument(
      "cannot make " + std::to_string(folds) + " folds from " +
      std::to_string(corpus.trajectories.size()) + " trajectories");
  }

  std::vector<std::size_t> counts(corpus.trajectories.size());
  for (std::size_t n = 0; n < corpus.trajectories.size(); ++n) {
    counts[n] = entry_count(corpus.trajectories[n], horizon_steps, warmup_offset);
  }

  std::vector<std::size_t> order(corpus.trajectories.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::mt19937_64 rng(seed);
  std::shuffle(order.begin(), order.end(), rng);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return counts[a] > counts[b];
  });

  FoldAssignment assignment;
  assignment.folds = folds;
  assignment.fold_of.assign(corpus.trajectories.size(), 0);
  assignment.fold_sizes.assign(static_cast<std::size_t>(folds), 0);
  assignment.horizon_steps = horizon_steps;
  assignment.warmup_offset = warmup_offset;

  for (const std::size_t n : order) {
    std::size_t smallest = 0;
    for (std::size_t k = 1; k < assignment.fold_sizes.size(); ++k) {
      if (assignment.fold_sizes[k] < assignment.fold_sizes[smallest]) {
        smallest = k;
      }
    }
    assignment.fold_of[n] = static_cast<int>(smallest) + 1;
    assignment.fold_sizes[smallest] += counts[n];
  }
  return assignment;
}

namespace
{

Corpus training_side(const Corpus & corpus, const FoldAssignment & assignment, int k)
{
  Corpus train;
  for (std::size_t n = 0; n < corpus.trajectories.size(); ++n) {
    if (assignment.fold_of[n] != k) {
      train.trajectories.push_back(corpus.trajectories[n]);
    }
  }
  return train;
}

void check_fold_index(const FoldAssignment & assignment, int k)
{
  if (k < 1 || k > assignment.folds) {
    throw std::invalid_argument("fold index " + std::to_string(k) + " is out of range");
  }
}

}  // namespace

double fold_score(
  const Corpus & corpus, const FoldAssignment & assignment, int k,
  const SimilarityParams & params, int horizon_steps)
{
  check_fold_index(assignment, k);
  if (assignment.fold_of.size() != corpus.trajectories.size()) {
    throw std::invalid_argument("fold assignment does not match the corpus");
  }

  const DisplacementDatabase db =
    build_database(training_side(corpus, assignment, k), {horizon_steps}, assignment.warmup_offset);

  const std::size_t i_min = first_query_index(assignment.warmup_offset);
  double sum = 0.0;
  std::size_t count = 0;
  for (std::size_t n = 0; n < corpus.trajectories.size(); ++n) {
    if (assignment.fold_of[n] != k) {
      continue;
    }
    const Trajectory & traj = corpus.trajectories[n];
    if (traj.states.size() < i_min + static_cast<std::size_t>(horizon_steps) + 1) {
      continue;
    }
    const std::size_t i_max = traj.states.size() - 1 - static_cast<std::size_t>(horizon_steps);
    for (std::size_t i = i_min; i <= i_max; ++i) {
      const Vec2 truth =
        traj.states[i + static_cast<std::size_t>(horizon_steps)].position -
        traj.states[i].position;
      double se = 0.0;
      try {
        const Prediction p = predict(db, params, traj.states[i], horizon_steps);
        se = (truth - p.displacement).squaredNorm();
      } catch (const NoSimilarDataError &) {
        se = truth.squaredNorm();
      }
      sum += se;
      ++count;
    }
  }
  if (count == 0) {
    throw std::invalid_argument("fold " + std::to_string(k) + " holds no entries");
  }
  return sum / static_cast<double>(count);
}

std::vector<double> default_a_grid() { return {0.05, 0.1, 0.25, 0.5, 1.0, 2.0}; }
std::vector<double> default_b_grid() { return {0.5, 1.0, 5.0, 20.0, 50.0, 100.0}; }
std::vector<double> default_c_orient_grid() { return {10.0, 25.0, 50.0, 100.0, 200.0, 400.0}; }

namespace
{

/// One fold's precomputed evaluation data: held-out truths and, per held-out
/// entry, the in-radius training candidates. Feature triples (squared gaps
/// in position, speed, orientation angle) and candidate displacements are
/// materialized when they fit the cache budget, else recomputed per grid
/// point from the stored candidate indices.
struct FoldEval
{
  DisplacementDatabase db;
  std::vector<RoadUserState> queries;
  std::vector<Vec2> truths;
  std::vector<std::size_t> cand_offsets;   // queries.size() + 1
  std::vector<std::uint32_t> cand_index;   // into db entries
  std::vector<double> features;            // 3 per candidate when cached
  std::vector<Vec2> cand_disp;             // per candidate when cached
  bool cached = false;
};

void fill_features(
  const RoadUserState & query, const RoadUserState & stored, double * out)
{
  out[0] = (query.position - stored.position).squaredNorm();
  const double ds = query.speed - stored.speed;
  out[1] = ds * ds;
  const double theta = orientation_angle(query.orientation, stored.orientation);
  out[2] = theta * theta;
}

double eval_cv_loss(const std::vector<FoldEval> & folds, double a, double b, double c)
{
  double cv = 0.0;
  for (const FoldEval & fe : folds) {
    const std::vector<Vec2> & displacements = fe.db.displacements.front();
    double sum = 0.0;
    for (std::size_t e = 0; e < fe.truths.size(); ++e) {
      Vec2 acc{0.0, 0.0};
      double total_weight = 0.0;
      for (std::size_t ci = fe.cand_offsets[e]; ci < fe.cand_offsets[e + 1]; ++ci) {
        double feat[3];
        const double * f;
        if (fe.cached) {
          f = &fe.features[3 * ci];
        } else {
          fill_features(fe.queries[e], fe.db.states[fe.cand_index[ci]], feat);
          f = feat;
        }
        const double w = std::exp(-(a * f[0] + b * f[1] + c * f[2]));
        if (w < kMinWeight) {
          continue;
        }
        acc += w * (fe.cached ? fe.cand_disp[ci] : displacements[fe.cand_index[ci]]);
        total_weight += w;
      }
      if (total_weight == 0.0) {
        sum += fe.truths[e].squaredNorm();
      } else {
        const Vec2 d = acc / total_weight;
        sum += (fe.truths[e] - d).squaredNorm();
      }
    }
    cv += sum / static_cast<double>(fe.truths.size());
  }
  return cv / static_cast<double>(folds.size());
}

std::vector<double> resolve_grid(
  const std::vector<double> & given, std::vector<double> (*fallback)())
{
  std::vector<double> grid = given.empty() ? fallback() : given;
  for (const double v : grid) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("grid values must be finite and non-negative");
    }
  }
  return grid;
}

std::vector<double> refine_grid(double center, std::size_t size)
{
  if (center == 0.0) {
    return {0.0};
  }
  std::vector<double> grid;
  grid.reserve(size);
  for (std::size_t j = 0; j < size; ++j) {
    grid.push_back(std::ldexp(center, static_cast<int>(j) - static_cast<int>(size / 2)));
  }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

}  // namespace

GridSearchResult grid_search(const Corpus & corpus, const GridSearchConfig & config)
{
  if (config.folds < 2) {
    throw std::invalid_argument("cross-validation needs at least 2 folds");
  }
  if (config.refinement_rounds < 0) {
    throw std::invalid_argument("refinement rounds must be non-negative");
  }
  std::vector<double> a_grid = resolve_grid(config.a_grid, default_a_grid);
  std::vector<double> b_grid = resolve_grid(config.b_grid, default_b_grid);
  std::vector<double> c_grid = resolve_grid(config.c_orient_grid, default_c_orient_grid);
  const std::size_t a_size = a_grid.size();
  const std::size_t b_size = b_grid.size();
  const std::size_t c_size = c_grid.size();

  const FoldAssignment assignment = partition_folds(
    corpus, config.folds, config.seed, config.horizon_steps, config.warmup_offset);

  // Candidate sets depend only on the cutoff radius, so all per-fold search
  // structures are shared across every grid point.
  std::vector<FoldEval> folds(static_cast<std::size_t>(config.folds));
  const std::size_t i_min = first_query_index(config.warmup_offset);
  std::size_t total_candidates = 0;
  for (int k = 1; k <= config.folds; ++k) {
    FoldEval & fe = folds[static_cast<std::size_t>(k - 1)];
    fe.db = build_database(
      training_side(corpus, assignment, k), {config.horizon_steps}, config.warmup_offset);
    fe.cand_offsets.push_back(0);

    std::vector<std::size_t> candidates;
    for (std::size_t n = 0; n < corpus.trajectories.size(); ++n) {
      if (assignment.fold_of[n] != k) {
        continue;
      }
      const Trajectory & traj = corpus.trajectories[n];
      const std::size_t steps = static_cast<std::size_t>(config.horizon_steps);
      if (traj.states.size() < i_min + steps + 1) {
        continue;
      }
      const std::size_t i_max = traj.states.size() - 1 - steps;
      for (std::size_t i = i_min; i <= i_max; ++i) {
        fe.queries.push_back(traj.states[i]);
        fe.truths.push_back(traj.states[i + steps].position - traj.states[i].position);
        fe.db.index.query_radius(traj.states[i].position, config.r, candidates);
        for (const std::size_t c : candidates) {
          fe.cand_index.push_back(static_cast<std::uint32_t>(c));
        }
        fe.cand_offsets.push_back(fe.cand_index.size());
      }
    }
    if (fe.truths.empty()) {
      throw std::invalid_argument("fold " + std::to_string(k) + " holds no entries");
    }
    total_candidates += fe.cand_index.size();
  }

  const std::size_t cache_bytes =
    total_candidates * (3 * sizeof(double) + sizeof(Vec2));
  if (cache_bytes <= config.max_cache_bytes) {
    for (FoldEval & fe : folds) {
      fe.features.resize(3 * fe.cand_index.size());
      fe.cand_disp.resize(fe.cand_index.size());
      const std::vector<Vec2> & displacements = fe.db.displacements.front();
      parallel_for_chunks(
        fe.truths.size(),
        [&](std::size_t begin, std::size_t end) {
          for (std::size_t e = begin; e < end; ++e) {
            for (std::size_t ci = fe.cand_offsets[e]; ci < fe.cand_offsets[e + 1]; ++ci) {
              fill_features(
                fe.queries[e], fe.db.states[fe.cand_index[ci]], &fe.features[3 * ci]);
              fe.cand_disp[ci] = displacements[fe.cand_index[ci]];
            }
          }
        },
        config.threads);
      fe.cached = true;
    }
  }

  GridSearchResult result;
  result.refinement_rounds = config.refinement_rounds;
  std::set<std::tuple<double, double, double>> evaluated;
  bool have_best = false;

  for (int round = 0; round <= config.refinement_rounds; ++round) {
    std::vector<SimilarityParams> points;
    for (const double a : a_grid) {
      for (const double b : b_grid) {
        for (const double c : c_grid) {
          if (evaluated.emplace(a, b, c).second) {
            SimilarityParams p;
            p.a = a;
            p.b = b;
            p.c_orient = c;
            p.r = config.r;
            points.push_back(p);
          }
        }
      }
    }

    std::vector<double> losses(points.size());
    parallel_for_chunks(
      points.size(),
      [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
          losses[i] = eval_cv_loss(folds, points[i].a, points[i].b, points[i].c_orient);
        }
      },
      config.threads);

    for (std::size_t i = 0; i < points.size(); ++i) {
      result.trace.push_back({points[i], losses[i], round});
      const auto key = std::make_tuple(points[i].a, points[i].b, points[i].c_orient);
      const auto best_key = std::make_tuple(result.best.a, result.best.b, result.best.c_orient);
      if (
        !have_best || losses[i] < result.cv_loss ||
        (losses[i] == result.cv_loss && key < best_key)) {
        result.best = points[i];
        result.cv_loss = losses[i];
        have_best = true;
      }
    }

    if (round < config.refinement_rounds) {
      a_grid = refine_grid(result.best.a, a_size);
      b_grid = refine_grid(result.best.b, b_size);
      c_grid = refine_grid(result.best.c_orient, c_size);
    }
  }

  return result;
}

void write_trace(const std::vector<TraceEntry> & trace, const std::filesystem::path & path)
{
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << "a,b,c_orient,cv_loss,round\n";
  char buffer[128];
  for (const TraceEntry & entry : trace) {
    std::snprintf(
      buffer, sizeof(buffer), "%.17g,%.17g,%.17g,%.17g,%d\n", entry.params.a, entry.params.b,
      entry.params.c_orient, entry.cv_loss, entry.round);
    out << buffer;
  }
}

}  // namespace roadpred
