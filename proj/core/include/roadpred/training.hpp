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

#ifndef ROADPRED_TRAINING_HPP_
#define ROADPRED_TRAINING_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roadpred/database.hpp"
#include "roadpred/similarity.hpp"
#include "roadpred/types.hpp"

namespace roadpred
{

/// Number of database entries a trajectory contributes for one horizon.
std::size_t entry_count(const Trajectory & traj, int horizon_steps, int warmup_offset);

/// Which cross-validation fold each trajectory belongs to. All entries of a
/// trajectory share its fold, so no fold's data causally depends on another
/// fold's (road users sampled moments apart stay together).
struct FoldAssignment
{
  int folds = 0;
  std::vector<int> fold_of;              // trajectory index -> fold in {1..folds}
  std::vector<std::size_t> fold_sizes;   // entry count per fold, index k-1

  // Entry-count context the sizes were computed under.
  int horizon_steps = 0;
  int warmup_offset = 0;
};

/// Greedy balanced partition: trajectories in descending entry count order
/// (a seeded shuffle breaks equal-count ties) each go to the currently
/// smallest fold. Throws std::invalid_argument when the corpus has fewer
/// trajectories than folds.
FoldAssignment partition_folds(
  const Corpus & corpus, int folds, std::uint64_t seed, int horizon_steps = 12,
  int warmup_offset = kDefaultWarmupOffset);

/// Mean squared displacement error over fold k's entries when predicting
/// each from a database built over all other folds. Queries with no similar
/// data score as a zero-displacement prediction; skipping them would reward
/// kernels that abstain. Throws std::invalid_argument for an empty fold.
double fold_score(
  const Corpus & corpus, const FoldAssignment & assignment, int k,
  const SimilarityParams & params, int horizon_steps);

/// Coarse grids bracketing the kernel weights that urban road-user data
/// tends to select.
std::vector<double> default_a_grid();         // position weight
std::vector<double> default_b_grid();         // speed weight
std::vector<double> default_c_orient_grid();  // orientation weight

struct GridSearchConfig
{
  int folds = 5;
  std::uint64_t seed = 0;

  // Empty grids fall back to the defaults above.
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  std::vector<double> c_orient_grid;

  /// Extra rounds re-gridding geometrically (factor-of-2 steps, same grid
  /// sizes) around the incumbent best.
  int refinement_rounds = 0;

  int horizon_steps = 12;
  int warmup_offset = kDefaultWarmupOffset;
  double r = 15.0;

  /// Budget for precomputed per-candidate features; past it, features are
  /// recomputed on the fly per grid point.
  std::size_t max_cache_bytes = std::size_t{512} << 20;

  unsigned threads = 0;  // 0 = hardware concurrency
};

struct TraceEntry
{
  SimilarityParams params;
  double cv_loss = 0.0;  // m^2
  int round = 0;         // 0 = initial grid
};

struct GridSearchResult
{
  SimilarityParams best;
  double cv_loss = 0.0;
  std::vector<TraceEntry> trace;  // in evaluation order
  int refinement_rounds = 0;
};

/// Minimizes the K-fold cross-validation loss (mean of the fold scores)
/// over the Cartesian parameter grid, then over each refinement grid.
/// Ties go to the lexicographically smallest (a, b, c_orient), which
/// prefers smoother kernels. Deterministic for a fixed corpus and config.
GridSearchResult grid_search(const Corpus & corpus, const GridSearchConfig & config = {});

/// Writes the search trace as CSV (a, b, c_orient, cv_loss, round), one row
/// per evaluated grid point in evaluation order.
void write_trace(const std::vector<TraceEntry> & trace, const std::filesystem::path & path);

}  // namespace roadpred

#endif  // ROADPRED_TRAINING_HPP_
