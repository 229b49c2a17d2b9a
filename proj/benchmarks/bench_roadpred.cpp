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

// Microbenchmarks for the hot paths: spatial index construction and lookup
// (against a linear scan for scale), the similarity kernel, single
// predictions on a realistic corpus, and one cross-validated grid search.

#include <cmath>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "roadpred/ball_tree.hpp"
#include "roadpred/database.hpp"
#include "roadpred/scenarios.hpp"
#include "roadpred/similarity.hpp"
#include "roadpred/training.hpp"
#include "roadpred/types.hpp"

namespace
{

using namespace roadpred;

std::vector<Vec2> random_points(std::size_t n, std::uint64_t seed)
{
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::vector<Vec2> points;
  points.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    points.emplace_back(coord(rng), coord(rng));
  }
  return points;
}

RoadUserState random_state(std::mt19937_64 & rng)
{
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::uniform_real_distribution<double> speed(0.0, 15.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);
  const double phi = angle(rng);
  return {Vec2(coord(rng), coord(rng)), speed(rng), Vec2(std::cos(phi), std::sin(phi))};
}

void BM_BallTreeBuild(benchmark::State & state)
{
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    BallTree tree(points);
    benchmark::DoNotOptimize(tree);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallTreeBuild)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_BallTreeQueryRadius(benchmark::State & state)
{
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 2);
  const BallTree tree(points);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::vector<std::size_t> hits;
  for (auto _ : state) {
    tree.query_radius(Vec2(coord(rng), coord(rng)), 15.0, hits);
    benchmark::DoNotOptimize(hits);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallTreeQueryRadius)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

// A radius far below the point spacing scale; the result set stays tiny, so
// this isolates the tree's pruning instead of the output copy.
void BM_BallTreeQueryRadiusSparse(benchmark::State & state)
{
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 2);
  const BallTree tree(points);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::vector<std::size_t> hits;
  for (auto _ : state) {
    tree.query_radius(Vec2(coord(rng), coord(rng)), 2.0, hits);
    benchmark::DoNotOptimize(hits);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_BallTreeQueryRadiusSparse)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_LinearScanRadius(benchmark::State & state)
{
  const auto points = random_points(static_cast<std::size_t>(state.range(0)), 2);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> coord(-100.0, 100.0);
  std::vector<std::size_t> hits;
  for (auto _ : state) {
    const Vec2 query(coord(rng), coord(rng));
    hits.clear();
    for (std::size_t i = 0; i < points.size(); ++i) {
      if ((points[i] - query).squaredNorm() <= 15.0 * 15.0) {
        hits.push_back(i);
      }
    }
    benchmark::DoNotOptimize(hits);
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_LinearScanRadius)->RangeMultiplier(4)->Range(1024, 65536)->Complexity();

void BM_SimilarityKernel(benchmark::State & state)
{
  const SimilarityParams params{0.5, 1.0, 50.0, 15.0};
  std::mt19937_64 rng(4);
  std::vector<RoadUserState> states;
  for (int i = 0; i < 1024; ++i) {
    states.push_back(random_state(rng));
  }
  std::size_t i = 0;
  for (auto _ : state) {
    const double sigma = similarity(params, states[i % 1024], states[(i + 1) % 1024]);
    benchmark::DoNotOptimize(sigma);
    ++i;
  }
}
BENCHMARK(BM_SimilarityKernel);

void BM_PredictCurvedRoad(benchmark::State & state)
{
  const Corpus corpus = make_scenario("curved_road", 11, 0.12).processed;
  const DisplacementDatabase db = build_database(corpus, {12});
  const SimilarityParams params{0.1, 5.0, 50.0, 15.0};
  std::size_t i = 0;
  for (auto _ : state) {
    const Prediction pred = predict(db, params, db.states[i % db.size()], 12);
    benchmark::DoNotOptimize(pred);
    ++i;
  }
}
BENCHMARK(BM_PredictCurvedRoad);

void BM_BuildDatabaseCurvedRoad(benchmark::State & state)
{
  const Corpus corpus = make_scenario("curved_road", 11, 0.12).processed;
  for (auto _ : state) {
    const DisplacementDatabase db = build_database(corpus, {1, 12});
    benchmark::DoNotOptimize(db);
  }
  state.SetLabel(std::to_string(corpus.size()) + " trajectories");
}
BENCHMARK(BM_BuildDatabaseCurvedRoad)->Unit(benchmark::kMillisecond);

void BM_GridSearchBifurcation(benchmark::State & state)
{
  const Corpus corpus = make_scenario("bifurcation", 11, 0.1).processed;
  GridSearchConfig config;
  config.folds = 3;
  config.seed = 1;
  for (auto _ : state) {
    const GridSearchResult result = grid_search(corpus, config);
    benchmark::DoNotOptimize(result);
  }
  state.SetLabel("216 grid points, 3 folds");
}
BENCHMARK(BM_GridSearchBifurcation)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
