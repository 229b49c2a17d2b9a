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

// Command-line front end: preprocess, split, fit, build-db, predict,
// evaluate, hmin, synth. Exit codes: 0 success, 1 usage error, 2 I/O or
// file-format error, 3 domain error (invalid values, no similar data).

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "roadpred/braking.hpp"
#include "roadpred/corpus_io.hpp"
#include "roadpred/database.hpp"
#include "roadpred/errors.hpp"
#include "roadpred/evaluation.hpp"
#include "roadpred/ingest.hpp"
#include "roadpred/params_io.hpp"
#include "roadpred/preprocess.hpp"
#include "roadpred/scenarios.hpp"
#include "roadpred/split.hpp"
#include "roadpred/training.hpp"
#include "roadpred/types.hpp"

namespace fs = std::filesystem;
using namespace roadpred;

namespace
{

/// Bad flag combinations detected after CLI11 parsing; maps to exit 1.
struct UsageError : std::runtime_error
{
  using std::runtime_error::runtime_error;
};

/// Reproducibility echo: the fully resolved configuration of the parsed
/// subcommand, written next to the command's primary output.
void write_config_echo(const CLI::App & cmd, const fs::path & beside)
{
  const fs::path path = beside.string() + ".config";
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write " + path.string());
  }
  out << "# roadpred " << cmd.get_name() << ", resolved configuration\n"
      << "[" << cmd.get_name() << "]\n";
  // Unset options serialize as `key=""`, which would not parse back as
  // numbers or lists; comment them out so every echo reloads via --config.
  std::istringstream lines(cmd.config_to_str(true, true));
  for (std::string line; std::getline(lines, line);) {
    if (line.size() >= 3 && line.ends_with("=\"\"")) out << "# unset: ";
    out << line << "\n";
  }
}

/// The similarity kernel was tuned against 2.8 s of reserved history; a
/// warmup window off by more than one sample deviates from that setup.
void warn_warmup(int warmup_offset, double sample_period)
{
  const double history = warmup_offset * sample_period;
  if (std::abs(history - 2.8) > sample_period + 1e-9) {
    std::cerr << "warning: warmup offset " << warmup_offset << " reserves " << history
              << " s of history at a " << sample_period
              << " s sample period; the reference setup reserves 2.8 s\n";
  }
}

double corpus_sample_period(const Corpus & corpus)
{
  return corpus.empty() ? 0.0 : corpus.trajectories.front().sample_period;
}

/// Kernel weights: defaults, overridden by a parameter file, overridden in
/// turn by any explicitly given flag (command line or config file).
struct ResolvedParams
{
  SimilarityParams base;
  double d = 0.0;
};

ResolvedParams resolve_params(
  const CLI::App & cmd, const std::string & params_path, const SimilarityParams & flags,
  double d_flag)
{
  ResolvedParams out;
  if (!params_path.empty()) {
    const ParamsFile stored = read_params(params_path);
    out.base = stored.base;
    out.d = stored.d.value_or(0.0);
  }
  if (cmd.count("--a") > 0) out.base.a = flags.a;
  if (cmd.count("--b") > 0) out.base.b = flags.b;
  if (cmd.count("--c-orient") > 0) out.base.c_orient = flags.c_orient;
  if (cmd.count("--radius") > 0) out.base.r = flags.r;
  if (cmd.count("--d") > 0) out.d = d_flag;
  return out;
}

const std::map<std::string, ModelKind> kModelNames{
  {"wam", ModelKind::weighted_average},
  {"constant_velocity", ModelKind::constant_velocity},
  {"interaction", ModelKind::interaction}};

// ---------------------------------------------------------------------------
// preprocess

struct PreprocessArgs
{
  std::string tracks;
  std::string tracks_meta;
  std::string recording_meta;
  int factor = 10;
  std::vector<int> drop_locations;
  std::string output;
};

int run_preprocess(const CLI::App & cmd, const PreprocessArgs & args)
{
  IngestReport ingest_report;
  std::optional<fs::path> rec_meta;
  if (!args.recording_meta.empty()) rec_meta = args.recording_meta;
  Corpus corpus = ingest(args.tracks, args.tracks_meta, rec_meta, {}, &ingest_report);
  std::cout << "ingested " << corpus.size() << " of " << ingest_report.tracks_read
            << " tracks";
  if (ingest_report.tracks_skipped > 0) {
    std::cout << " (" << ingest_report.tracks_skipped << " skipped:";
    for (const auto & [label, count] : ingest_report.unknown_categories) {
      std::cout << " " << label << " x" << count;
    }
    std::cout << ")";
  }
  std::cout << "\n";

  if (!args.drop_locations.empty()) {
    const std::set<int> drop(args.drop_locations.begin(), args.drop_locations.end());
    const std::size_t before = corpus.size();
    std::erase_if(corpus.trajectories,
                  [&](const Trajectory & traj) { return drop.contains(traj.location_id); });
    std::cout << "dropped " << (before - corpus.size()) << " trajectories at excluded locations\n";
  }

  std::size_t no_heading = 0;
  Corpus processed;
  processed.provenance = corpus.provenance;
  for (Trajectory & traj : corpus.trajectories) {
    Trajectory down = downsample(traj, args.factor);
    try {
      derive_orientations(down);
    } catch (const std::invalid_argument &) {
      ++no_heading;  // never moved at all; the stationary rule would drop it anyway
      continue;
    }
    processed.trajectories.push_back(std::move(down));
  }
  if (no_heading > 0) {
    std::cout << "dropped " << no_heading << " trajectories with no usable heading\n";
  }

  const auto [filtered, report] = filter_corpus(processed);
  std::cout << report.summary();
  write_corpus(filtered, args.output);
  write_config_echo(cmd, args.output);
  std::cout << "wrote " << filtered.size() << " trajectories to " << args.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// split

struct SplitArgs
{
  std::string input;
  double train_fraction = 0.7;
  std::string train_output;
  std::string test_output;
};

int run_split(const CLI::App & cmd, const SplitArgs & args)
{
  const Corpus corpus = read_corpus(args.input);
  const SplitResult result = split_by_recordings(corpus, args.train_fraction);
  write_corpus(result.train, args.train_output);
  write_corpus(result.test, args.test_output);
  write_config_echo(cmd, args.train_output);

  const auto print_side = [](const char * name, const Corpus & side, const std::set<int> & recs) {
    std::cout << name << ": " << side.size() << " trajectories, recordings";
    for (int rec : recs) std::cout << " " << rec;
    std::cout << "\n";
  };
  print_side("train", result.train, result.train_recordings);
  print_side("test", result.test, result.test_recordings);
  std::printf("split deviation %.6g\n", result.deviation);
  return 0;
}

// ---------------------------------------------------------------------------
// fit

struct FitArgs
{
  std::string input;
  int folds = 5;
  std::uint64_t seed = 0;
  std::vector<double> a_grid;
  std::vector<double> b_grid;
  std::vector<double> c_orient_grid;
  int refinement_rounds = 0;
  int horizon = 12;
  int warmup = kDefaultWarmupOffset;
  double radius = 15.0;
  std::size_t max_cache_mb = 512;
  unsigned threads = 0;
  std::string params_output;
  std::string trace_output;
  std::string category;
  int location = 0;
};

int run_fit(const CLI::App & cmd, const FitArgs & args)
{
  const Corpus corpus = read_corpus(args.input);
  warn_warmup(args.warmup, corpus_sample_period(corpus));

  GridSearchConfig config;
  config.folds = args.folds;
  config.seed = args.seed;
  config.a_grid = args.a_grid;
  config.b_grid = args.b_grid;
  config.c_orient_grid = args.c_orient_grid;
  config.refinement_rounds = args.refinement_rounds;
  config.horizon_steps = args.horizon;
  config.warmup_offset = args.warmup;
  config.r = args.radius;
  config.max_cache_bytes = args.max_cache_mb << 20;
  config.threads = args.threads;

  const GridSearchResult result = grid_search(corpus, config);

  ParamsFile params;
  params.base = result.best;
  if (cmd.count("--category") > 0) {
    const std::optional<Category> category = parse_category(args.category);
    if (!category) {
      throw std::invalid_argument("unknown category label '" + args.category + "'");
    }
    params.category = *category;
  }
  if (cmd.count("--location") > 0) params.location_id = args.location;
  write_params(params, args.params_output);
  if (!args.trace_output.empty()) {
    write_trace(result.trace, args.trace_output);
  }
  write_config_echo(cmd, args.params_output);

  std::printf("best a=%.6g b=%.6g c_orient=%.6g r=%.6g\n", result.best.a, result.best.b,
              result.best.c_orient, result.best.r);
  std::printf("cv loss %.6g over %zu grid points (%d refinement rounds)\n", result.cv_loss,
              result.trace.size(), result.refinement_rounds);
  std::cout << "wrote parameters to " << args.params_output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// build-db

struct BuildDbArgs
{
  std::string input;
  std::vector<int> horizons;
  int warmup = kDefaultWarmupOffset;
  std::string output;
};

int run_build_db(const CLI::App & cmd, const BuildDbArgs & args)
{
  const Corpus corpus = read_corpus(args.input);
  warn_warmup(args.warmup, corpus_sample_period(corpus));

  std::vector<int> horizons = args.horizons;
  if (horizons.empty()) {
    for (int h = 1; h <= 12; ++h) horizons.push_back(h);
  }
  const DisplacementDatabase db = build_database(corpus, horizons, args.warmup);
  write_database(db, args.output);
  write_config_echo(cmd, args.output);

  std::cout << "database: " << db.size() << " entries, horizons";
  for (int h : db.horizons) std::cout << " " << h;
  std::cout << ", warmup " << db.warmup_offset << ", sample period " << db.sample_period
            << " s";
  if (db.has_situations()) std::cout << ", with situation annotations";
  std::cout << "\nwrote " << args.output << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// predict

struct PredictArgs
{
  std::string db;
  std::string params;
  SimilarityParams flags;
  double d = 0.0;
  std::string model = "wam";
  double x = 0.0;
  double y = 0.0;
  double speed = 0.0;
  double heading_deg = 0.0;
  double other_x = 0.0;
  double other_y = 0.0;
  int horizon = 0;
  bool fallback_to_cv = false;
};

void print_prediction(const Prediction & pred, double sample_period)
{
  std::printf("horizon %d steps (%.17g s)\n", pred.horizon_steps,
              pred.horizon_steps * sample_period);
  std::printf("position %.17g %.17g\n", pred.position.x(), pred.position.y());
  std::printf("displacement %.17g %.17g\n", pred.displacement.x(), pred.displacement.y());
  std::printf("support %zu\n", pred.support_count);
  std::printf("total_weight %.17g\n", pred.total_weight);
}

int run_predict(const CLI::App & cmd, const PredictArgs & args)
{
  const DisplacementDatabase db = read_database(args.db);
  const ResolvedParams params = resolve_params(cmd, args.params, args.flags, args.d);

  RoadUserState state;
  state.position = Vec2(args.x, args.y);
  state.speed = args.speed;
  const double heading = args.heading_deg * std::numbers::pi / 180.0;
  state.orientation = Vec2(std::cos(heading), std::sin(heading));

  const bool has_other_x = cmd.count("--other-x") > 0;
  const bool has_other_y = cmd.count("--other-y") > 0;
  if (has_other_x != has_other_y) {
    throw UsageError("--other-x and --other-y must be given together");
  }

  std::cout << "model " << args.model << "\n";
  try {
    Prediction pred;
    switch (kModelNames.at(args.model)) {
      case ModelKind::weighted_average:
        pred = predict(db, params.base, state, args.horizon);
        break;
      case ModelKind::constant_velocity:
        pred = constant_velocity_predict(state, args.horizon, db.sample_period);
        break;
      case ModelKind::interaction: {
        TrafficSituationState situation;
        situation.target = state;
        if (has_other_x) situation.other_position = Vec2(args.other_x, args.other_y);
        pred = interaction_predict(db, {params.base, params.d, 0.0}, situation, args.horizon);
        break;
      }
    }
    print_prediction(pred, db.sample_period);
  } catch (const NoSimilarDataError & error) {
    if (!args.fallback_to_cv) throw;
    std::cout << "fallback constant_velocity (" << error.what() << ")\n";
    print_prediction(constant_velocity_predict(state, args.horizon, db.sample_period),
                     db.sample_period);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs
{
  std::string db;
  std::string test;
  std::vector<std::string> models;
  std::string params;
  SimilarityParams flags;
  double d = 0.0;
  bool fallback_to_cv = false;
  std::vector<int> horizons;
  std::vector<int> required_horizons;
  std::string records_output;
  std::string stats_output;
  std::string report_output;
};

int run_evaluate(const CLI::App & cmd, const EvaluateArgs & args)
{
  const DisplacementDatabase db = read_database(args.db);
  const Corpus test = read_corpus(args.test);
  const ResolvedParams params = resolve_params(cmd, args.params, args.flags, args.d);

  std::vector<ModelKind> models;
  if (args.models.empty()) {
    models = {ModelKind::weighted_average, ModelKind::constant_velocity};
  } else {
    for (const std::string & name : args.models) models.push_back(kModelNames.at(name));
  }
  const std::vector<int> horizons = args.horizons.empty() ? db.horizons : args.horizons;
  const std::vector<int> required =
    args.required_horizons.empty() ? horizons : args.required_horizons;

  std::vector<ErrorRecord> records;
  for (ModelKind kind : models) {
    ModelConfig model;
    model.kind = kind;
    model.params = params.base;
    model.d = params.d;
    model.fallback_to_cv = args.fallback_to_cv;
    const std::vector<ErrorRecord> scored = evaluate(db, model, test, horizons);
    const std::size_t flagged =
      std::count_if(scored.begin(), scored.end(),
                    [](const ErrorRecord & r) { return !r.has_error(); });
    std::cout << to_string(kind) << ": " << scored.size() << " queries";
    if (flagged > 0) std::cout << ", " << flagged << " without similar data";
    std::cout << "\n";
    records.insert(records.end(), scored.begin(), scored.end());
  }

  const fs::path echo_beside = !args.records_output.empty()  ? fs::path(args.records_output)
                               : !args.stats_output.empty()  ? fs::path(args.stats_output)
                               : !args.report_output.empty() ? fs::path(args.report_output)
                                                             : fs::path();
  if (!args.records_output.empty()) write_records(records, args.records_output);
  if (!args.stats_output.empty()) write_stats(horizon_stats(records), args.stats_output);
  if (!echo_beside.empty()) write_config_echo(cmd, echo_beside);

  const auto summary = ade_fde(records, required);
  if (!args.report_output.empty()) write_ade_fde_report(summary, args.report_output);

  std::cout << "ADE / FDE in meters, categories pooled:\n";
  for (const auto & [key, value] : summary) {
    std::printf("  %s location %d: %.3f / %.3f\n", std::string(to_string(key.model)).c_str(),
                key.location_id, value.ade, value.fde);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// hmin

struct HminArgs
{
  double speed_kmh = 0.0;
  double mu = 0.0;
  double g = 9.81;
};

int run_hmin(const HminArgs & args)
{
  BrakingQuery query;
  query.v0 = kmh_to_mps(args.speed_kmh);
  query.mu = args.mu;
  query.g = args.g;
  std::printf("%.2f\n", min_horizon(query));
  return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs
{
  std::string scenario;
  std::uint64_t seed = 0;
  double noise = 0.0;
  int replicas = 1;
  std::string processed;
  std::string raw_dir;
};

int run_synth(const CLI::App & cmd, const SynthArgs & args)
{
  if (args.processed.empty() && args.raw_dir.empty()) {
    throw UsageError("give --processed and/or --raw-dir to receive output");
  }
  const ScenarioBundle bundle = make_scenario(args.scenario, args.seed, args.noise, args.replicas);
  if (!args.processed.empty()) {
    write_corpus(bundle.processed, args.processed);
    write_config_echo(cmd, args.processed);
    std::cout << "wrote " << bundle.processed.size() << " processed trajectories to "
              << args.processed << "\n";
  }
  if (!args.raw_dir.empty()) {
    fs::create_directories(args.raw_dir);
    const fs::path dir = args.raw_dir;
    write_tracks(bundle.raw, dir / "tracks.csv", dir / "tracksMeta.csv",
                 dir / "recordingMeta.csv");
    if (args.processed.empty()) write_config_echo(cmd, dir / "synth");
    std::cout << "wrote " << bundle.raw.size() << " raw tracks to " << dir.string() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char ** argv)
{
  CLI::App app{"Road-user trajectory prediction toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "roadpred 0.1.0");
  app.fallthrough();
  app.set_config("--config", "",
                 "Configuration file with one [subcommand] section per command; "
                 "explicit flags win");

  // preprocess
  PreprocessArgs pre_args;
  CLI::App * pre = app.add_subcommand(
    "preprocess", "Ingest drone recordings, downsample, derive headings, filter");
  pre->add_option("--tracks", pre_args.tracks, "Per-frame track CSV")->required();
  pre->add_option("--tracks-meta", pre_args.tracks_meta, "Track metadata CSV")->required();
  pre->add_option("--recording-meta", pre_args.recording_meta,
                  "Recording metadata CSV (location ids and frame rates)");
  pre->add_option("--factor", pre_args.factor,
    "Downsampling factor (25 Hz -> 2.5 Hz at 10)")->capture_default_str();
  pre->add_option("--drop-location", pre_args.drop_locations,
                  "Location id to discard before filtering; repeatable");
  pre->add_option("--output", pre_args.output, "Filtered corpus file to write")->required();

  // split
  SplitArgs split_args;
  CLI::App * split = app.add_subcommand("split", "Split a corpus into train and test by recording");
  split->add_option("--input", split_args.input, "Corpus file")->required();
  split->add_option("--train-fraction", split_args.train_fraction,
                    "Target share of trajectories in the training side")->capture_default_str();
  split->add_option("--train-output", split_args.train_output, "Training corpus to write")
    ->required();
  split->add_option("--test-output", split_args.test_output, "Test corpus to write")->required();

  // fit
  FitArgs fit_args;
  CLI::App * fit =
    app.add_subcommand("fit", "Grid-search kernel weights by trajectory-grouped cross-validation");
  fit->add_option("--input", fit_args.input, "Training corpus file")->required();
  fit->add_option("--folds", fit_args.folds, "Cross-validation folds")->capture_default_str();
  fit->add_option("--seed", fit_args.seed, "Fold-shuffle seed")->capture_default_str();
  fit->add_option("--a", fit_args.a_grid, "Position-weight grid values (default grid if omitted)");
  fit->add_option("--b", fit_args.b_grid, "Speed-weight grid values (default grid if omitted)");
  fit->add_option("--c-orient", fit_args.c_orient_grid,
                  "Orientation-weight grid values (default grid if omitted)");
  fit->add_option("--refinement-rounds", fit_args.refinement_rounds,
                  "Extra geometric re-gridding rounds around the incumbent")->capture_default_str();
  fit->add_option("--horizon", fit_args.horizon,
    "Training horizon in samples")->capture_default_str();
  fit->add_option("--warmup", fit_args.warmup,
    "Warmup samples excluded from querying")->capture_default_str();
  fit->add_option("--radius", fit_args.radius,
    "Similarity cutoff radius in meters")->capture_default_str();
  fit->add_option("--max-cache-mb", fit_args.max_cache_mb,
                  "Feature-cache budget in MiB; 0 recomputes on the fly")->capture_default_str();
  fit->add_option("--threads", fit_args.threads,
    "Worker threads; 0 = hardware concurrency")->capture_default_str();
  fit->add_option("--params-output", fit_args.params_output, "Parameter file to write")
    ->required();
  fit->add_option("--trace-output", fit_args.trace_output, "Search-trace CSV to write");
  fit->add_option("--category", fit_args.category, "Category tag recorded in the parameter file");
  fit->add_option("--location", fit_args.location,
                  "Location-id tag recorded in the parameter file");

  // build-db
  BuildDbArgs db_args;
  CLI::App * build_db = app.add_subcommand("build-db", "Build a displacement database");
  build_db->add_option("--input", db_args.input, "Corpus file")->required();
  build_db->add_option("--horizons", db_args.horizons,
                       "Horizons in samples (default 1..12); repeatable");
  build_db->add_option("--warmup", db_args.warmup,
    "Warmup samples excluded from querying")->capture_default_str();
  build_db->add_option("--output", db_args.output, "Database file to write")->required();

  // predict
  PredictArgs predict_args;
  CLI::App * predict = app.add_subcommand("predict", "Predict one query state from flags");
  predict->add_option("--db", predict_args.db, "Database file")->required();
  predict->add_option("--params", predict_args.params, "Parameter file from fit");
  predict->add_option("--a", predict_args.flags.a, "Position weight; overrides the parameter file");
  predict->add_option("--b", predict_args.flags.b, "Speed weight; overrides the parameter file");
  predict->add_option("--c-orient", predict_args.flags.c_orient,
    "Orientation weight; overrides the parameter file");
  predict->add_option("--radius", predict_args.flags.r,
    "Similarity cutoff radius in meters; overrides the parameter file");
  predict->add_option("--d", predict_args.d,
    "Partner-position weight (interaction model); overrides the parameter file");
  predict->add_option("--model", predict_args.model, "Predictor to run")
    ->check(CLI::IsMember({"wam", "constant_velocity", "interaction"}))
    ->capture_default_str();
  predict->add_option("--x", predict_args.x, "Query position x in meters")->required();
  predict->add_option("--y", predict_args.y, "Query position y in meters")->required();
  predict->add_option("--speed", predict_args.speed, "Query speed in m/s")->required();
  predict->add_option("--heading-deg", predict_args.heading_deg,
                      "Query heading in degrees, counterclockwise from +x")->capture_default_str();
  predict->add_option("--other-x", predict_args.other_x,
                      "Interaction partner position x in meters");
  predict->add_option("--other-y", predict_args.other_y,
                      "Interaction partner position y in meters");
  predict->add_option("--horizon", predict_args.horizon, "Prediction horizon in samples")
    ->required();
  predict->add_flag("--fallback-to-cv", predict_args.fallback_to_cv,
                    "Fall back to constant velocity when no similar data exists");

  // evaluate
  EvaluateArgs eval_args;
  CLI::App * evaluate = app.add_subcommand("evaluate", "Score models on a test corpus");
  evaluate->add_option("--db", eval_args.db, "Database file built from the training corpus")
    ->required();
  evaluate->add_option("--test", eval_args.test, "Test corpus file")->required();
  evaluate->add_option("--model", eval_args.models,
                       "Models to score (default: wam and constant_velocity); repeatable")
    ->check(CLI::IsMember({"wam", "constant_velocity", "interaction"}));
  evaluate->add_option("--params", eval_args.params, "Parameter file from fit");
  evaluate->add_option("--a", eval_args.flags.a, "Position weight; overrides the parameter file");
  evaluate->add_option("--b", eval_args.flags.b, "Speed weight; overrides the parameter file");
  evaluate->add_option("--c-orient", eval_args.flags.c_orient,
    "Orientation weight; overrides the parameter file");
  evaluate->add_option("--radius", eval_args.flags.r,
    "Similarity cutoff radius in meters; overrides the parameter file");
  evaluate->add_option("--d", eval_args.d,
    "Partner-position weight (interaction model); overrides the parameter file");
  evaluate->add_flag("--fallback-to-cv", eval_args.fallback_to_cv,
                     "Score the constant-velocity prediction when no similar data exists");
  evaluate->add_option("--horizons", eval_args.horizons,
                       "Horizons to score in samples (default: all database horizons)");
  evaluate->add_option("--required-horizons", eval_args.required_horizons,
                       "Horizons entering ADE/FDE (default: the scored horizons)");
  evaluate->add_option("--records-output", eval_args.records_output,
                       "Per-query error records CSV to write");
  evaluate->add_option("--stats-output", eval_args.stats_output,
                       "Per-horizon statistics CSV to write");
  evaluate->add_option("--report-output", eval_args.report_output,
                       "ADE/FDE report table to write");

  // hmin
  HminArgs hmin_args;
  CLI::App * hmin =
    app.add_subcommand("hmin", "Minimum prediction horizon covering an emergency stop");
  hmin->add_option("--speed-kmh", hmin_args.speed_kmh, "Initial speed in km/h")->required();
  hmin->add_option("--mu", hmin_args.mu, "Friction coefficient")->required();
  hmin->add_option("--g", hmin_args.g,
    "Gravitational acceleration in m/s^2")->capture_default_str();

  // synth
  SynthArgs synth_args;
  CLI::App * synth = app.add_subcommand("synth", "Generate a synthetic scenario corpus");
  synth
    ->add_option("scenario", synth_args.scenario,
                 "One of: bifurcation, stop_yield, curved_road, constant_velocity")
    ->required();
  synth->add_option("--seed", synth_args.seed, "Generator seed")->capture_default_str();
  synth->add_option("--noise", synth_args.noise, "Position noise, standard deviation in meters")
    ->capture_default_str();
  synth->add_option("--replicas", synth_args.replicas,
                    "Independent repetitions (stop_yield only)")->capture_default_str();
  synth->add_option("--processed", synth_args.processed, "Pipeline-ready corpus file to write");
  synth->add_option("--raw-dir", synth_args.raw_dir,
                    "Directory for native-rate tracks.csv, tracksMeta.csv, recordingMeta.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success & help) {
    return app.exit(help);
  } catch (const CLI::ParseError & error) {
    app.exit(error);
    return 1;
  }

  try {
    if (pre->parsed()) return run_preprocess(*pre, pre_args);
    if (split->parsed()) return run_split(*split, split_args);
    if (fit->parsed()) return run_fit(*fit, fit_args);
    if (build_db->parsed()) return run_build_db(*build_db, db_args);
    if (predict->parsed()) return run_predict(*predict, predict_args);
    if (evaluate->parsed()) return run_evaluate(*evaluate, eval_args);
    if (hmin->parsed()) return run_hmin(hmin_args);
    if (synth->parsed()) return run_synth(*synth, synth_args);
  } catch (const UsageError & error) {
    std::cerr << "error: " << error.what() << "\n";
    return 1;
  } catch (const roadpred::ParseError & error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  } catch (const NoSimilarDataError & error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const std::invalid_argument & error) {
    std::cerr << "error: " << error.what() << "\n";
    return 3;
  } catch (const std::exception & error) {
    std::cerr << "error: " << error.what() << "\n";
    return 2;
  }
  return 0;
}
