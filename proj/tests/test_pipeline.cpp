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

#include <gtest/gtest.h>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "roadpred/corpus_io.hpp"
#include "roadpred/csv.hpp"
#include "roadpred/errors.hpp"
#include "roadpred/ingest.hpp"
#include "roadpred/percentile.hpp"
#include "roadpred/preprocess.hpp"
#include "roadpred/split.hpp"
#include "roadpred/types.hpp"

namespace roadpred
{
namespace
{

namespace fs = std::filesystem;

class TempDir : public ::testing::Test
{
protected:
  void SetUp() override
  {
    dir_ = fs::temp_directory_path() /
           ("roadpred_test_" +
            std::to_string(std::hash<std::string>{}(
              ::testing::UnitTest::GetInstance()->current_test_info()->name())));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  void TearDown() override { fs::remove_all(dir_); }

  fs::path file(const std::string & name, const std::string & content) const
  {
    const fs::path path = dir_ / name;
    std::ofstream out(path);
    out << content;
    return path;
  }

  fs::path path(const std::string & name) const { return dir_ / name; }

  fs::path dir_;
};

Trajectory make_trajectory(
  int recording, int track, Category category, int location, double sample_period,
  const std::vector<RoadUserState> & states)
{
  Trajectory traj;
  traj.recording_id = recording;
  traj.track_id = track;
  traj.category = category;
  traj.location_id = location;
  traj.sample_period = sample_period;
  traj.states = states;
  return traj;
}

// A filter-proof trajectory: 20 samples at 0.4 s (7.6 s), cruising speed.
Trajectory plain_trajectory(int recording, int track, Category category, int location,
                            double speed_mps = 2.0)
{
  std::vector<RoadUserState> states;
  for (int i = 0; i < 20; ++i) {
    states.push_back({Vec2(speed_mps * 0.4 * i, 0.0), speed_mps, Vec2(1.0, 0.0)});
  }
  return make_trajectory(recording, track, category, location, 0.4, states);
}

TEST(SplitCsvLine, TrimsWhitespaceAndCarriageReturn)
{
  EXPECT_EQ(split_csv_line(" a , b ,c\r"), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_EQ(split_csv_line("x"), (std::vector<std::string>{"x"}));
  EXPECT_EQ(split_csv_line("x,,y"), (std::vector<std::string>{"x", "", "y"}));
}

using CsvTableTest = TempDir;

TEST_F(CsvTableTest, MissingFileThrows)
{
  EXPECT_THROW(CsvTable::read(path("absent.csv")), ParseError);
}

TEST_F(CsvTableTest, EmptyFileThrows)
{
  EXPECT_THROW(CsvTable::read(file("empty.csv", "")), ParseError);
}

TEST_F(CsvTableTest, FieldCountMismatchReportsLine)
{
  const auto csv = file("bad.csv", "a,b\n1,2\n3\n");
  try {
    CsvTable::read(csv);
    FAIL() << "expected ParseError";
  } catch (const ParseError & err) {
    EXPECT_EQ(err.line(), 3u);
  }
}

TEST_F(CsvTableTest, NumberParseErrorReportsLine)
{
  const auto csv = file("nan.csv", "a,b\n1,2\nx,4\n");
  const CsvTable table = CsvTable::read(csv);
  try {
    table.number(table.rows()[1], 0);
    FAIL() << "expected ParseError";
  } catch (const ParseError & err) {
    EXPECT_EQ(err.line(), 3u);
  }
}

TEST_F(CsvTableTest, ColumnLookup)
{
  const CsvTable table = CsvTable::read(file("ok.csv", "a,b\n1,2\n"));
  EXPECT_TRUE(table.has_column("b"));
  EXPECT_FALSE(table.has_column("z"));
  EXPECT_EQ(table.column("b"), 1u);
  EXPECT_THROW(table.column("z"), ParseError);
  EXPECT_EQ(table.integer(table.rows()[0], 1), 2);
}

TEST(Percentile, LinearInterpolation)
{
  const std::vector<double> values{1.0, 2.0, 3.0, 4.0};
  EXPECT_DOUBLE_EQ(percentile(values, 25.0), 1.75);
  EXPECT_DOUBLE_EQ(percentile(values, 75.0), 3.25);
  EXPECT_DOUBLE_EQ(percentile(values, 50.0), 2.5);
  EXPECT_DOUBLE_EQ(percentile(values, 0.0), 1.0);
  EXPECT_DOUBLE_EQ(percentile(values, 100.0), 4.0);
}

TEST(Percentile, UnsortedInputAndSingleValue)
{
  EXPECT_DOUBLE_EQ(percentile({4.0, 1.0, 3.0, 2.0}, 25.0), 1.75);
  EXPECT_DOUBLE_EQ(percentile({7.0}, 95.0), 7.0);
}

TEST(Percentile, RejectsBadInput)
{
  EXPECT_THROW(percentile({}, 50.0), std::invalid_argument);
  EXPECT_THROW(percentile({1.0}, -1.0), std::invalid_argument);
  EXPECT_THROW(percentile({1.0}, 101.0), std::invalid_argument);
}

using IngestTest = TempDir;

constexpr const char * kTracksHeader =
  "recordingId,trackId,frame,xCenter,yCenter,xVelocity,yVelocity\n";

TEST_F(IngestTest, ReadsStatesAndComputesSpeed)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,7,0,10.0,5.0,3.0,4.0\n"
                                           "1,7,1,10.1,5.1,3.0,4.0\n");
  const auto meta = file("meta.csv", "trackId,class\n7,car\n");
  IngestReport report;
  const Corpus corpus = ingest(tracks, meta, std::nullopt, {}, &report);
  ASSERT_EQ(corpus.size(), 1u);
  const Trajectory & traj = corpus.trajectories[0];
  EXPECT_EQ(traj.recording_id, 1);
  EXPECT_EQ(traj.track_id, 7);
  EXPECT_EQ(traj.category, Category::vehicle);
  ASSERT_EQ(traj.size(), 2u);
  EXPECT_EQ(traj.states[0].position, Vec2(10.0, 5.0));
  EXPECT_DOUBLE_EQ(traj.states[0].speed, 5.0);
  EXPECT_EQ(traj.states[0].orientation, Vec2(0.0, 0.0));
  EXPECT_EQ(traj.velocities[0], Vec2(3.0, 4.0));
  EXPECT_DOUBLE_EQ(traj.sample_period, 0.04);
  EXPECT_EQ(report.tracks_read, 1u);
}

TEST_F(IngestTest, ZeroVelocityGivesZeroSpeed)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) + "1,1,0,0,0,0,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,pedestrian\n");
  const Corpus corpus = ingest(tracks, meta);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus.trajectories[0].states[0].speed, 0.0);
  EXPECT_EQ(corpus.trajectories[0].states[0].orientation, Vec2(0.0, 0.0));
}

TEST_F(IngestTest, UnknownCategorySkippedWithTally)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,1,0,0,0,1,0\n"
                                           "1,2,0,0,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,horse\n2,bicycle\n");
  IngestReport report;
  const Corpus corpus = ingest(tracks, meta, std::nullopt, {}, &report);
  EXPECT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus.trajectories[0].track_id, 2);
  EXPECT_EQ(report.tracks_skipped, 1u);
  EXPECT_EQ(report.unknown_categories.at("horse"), 1u);
}

TEST_F(IngestTest, FrameGapThrows)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,1,0,0,0,1,0\n"
                                           "1,1,1,1,0,1,0\n"
                                           "1,1,3,2,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,car\n");
  EXPECT_THROW(ingest(tracks, meta), ParseError);
}

TEST_F(IngestTest, DuplicateFrameThrows)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,1,0,0,0,1,0\n"
                                           "1,1,1,1,0,1,0\n"
                                           "1,1,1,2,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,car\n");
  EXPECT_THROW(ingest(tracks, meta), ParseError);
}

TEST_F(IngestTest, OutOfOrderFramesAreSorted)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,1,1,1.0,0,1,0\n"
                                           "1,1,0,0.0,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,car\n");
  const Corpus corpus = ingest(tracks, meta);
  ASSERT_EQ(corpus.trajectories[0].size(), 2u);
  EXPECT_EQ(corpus.trajectories[0].states[0].position.x(), 0.0);
}

TEST_F(IngestTest, DuplicateMetadataRowThrows)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) + "1,1,0,0,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,car\n1,bicycle\n");
  EXPECT_THROW(ingest(tracks, meta), ParseError);
}

TEST_F(IngestTest, MissingMetadataEntryThrows)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) + "1,9,0,0,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,car\n");
  EXPECT_THROW(ingest(tracks, meta), ParseError);
}

TEST_F(IngestTest, RecordingMetaSetsLocationAndRate)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) + "4,1,0,0,0,1,0\n");
  const auto meta = file("meta.csv", "trackId,class\n1,truck_bus\n");
  const auto rec_meta = file("rec.csv", "recordingId,locationId,frameRate\n4,2,10\n");
  const Corpus corpus = ingest(tracks, meta, rec_meta);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus.trajectories[0].location_id, 2);
  EXPECT_DOUBLE_EQ(corpus.trajectories[0].sample_period, 0.1);
  EXPECT_EQ(corpus.trajectories[0].category, Category::truck_bus);
}

TEST_F(IngestTest, MetaWithRecordingColumnKeysPerRecording)
{
  const auto tracks = file("tracks.csv", std::string(kTracksHeader) +
                                           "1,1,0,0,0,1,0\n"
                                           "2,1,0,0,0,1,0\n");
  const auto meta = file("meta.csv",
                         "recordingId,trackId,class\n"
                         "1,1,car\n"
                         "2,1,bicycle\n");
  const Corpus corpus = ingest(tracks, meta);
  ASSERT_EQ(corpus.size(), 2u);
  EXPECT_EQ(corpus.trajectories[0].category, Category::vehicle);
  EXPECT_EQ(corpus.trajectories[1].category, Category::bicycle);
}

TEST_F(IngestTest, CustomColumnMap)
{
  const auto tracks = file("tracks.csv",
                           "rid,tid,f,px,py,vx,vy\n"
                           "1,1,0,2.0,3.0,0,1\n");
  const auto meta = file("meta.csv", "tid,kind\n1,pedestrian\n");
  ColumnMap columns;
  columns.recording_id = "rid";
  columns.track_id = "tid";
  columns.frame = "f";
  columns.x = "px";
  columns.y = "py";
  columns.vx = "vx";
  columns.vy = "vy";
  columns.meta_track_id = "tid";
  columns.meta_class = "kind";
  const Corpus corpus = ingest(tracks, meta, std::nullopt, columns);
  ASSERT_EQ(corpus.size(), 1u);
  EXPECT_EQ(corpus.trajectories[0].states[0].position, Vec2(2.0, 3.0));
}

TEST_F(IngestTest, WriteTracksRoundTrip)
{
  Corpus corpus;
  Trajectory traj = plain_trajectory(3, 5, Category::bicycle, 2, 4.0);
  traj.sample_period = 0.04;
  traj.velocities.assign(traj.size(), Vec2(4.0, 0.0));
  corpus.trajectories.push_back(traj);
  corpus.provenance[3] = "unit";

  write_tracks(corpus, path("t.csv"), path("m.csv"), path("r.csv"));
  const Corpus round = ingest(path("t.csv"), path("m.csv"), fs::path(path("r.csv")));
  ASSERT_EQ(round.size(), 1u);
  const Trajectory & got = round.trajectories[0];
  EXPECT_EQ(got.recording_id, 3);
  EXPECT_EQ(got.track_id, 5);
  EXPECT_EQ(got.category, Category::bicycle);
  EXPECT_EQ(got.location_id, 2);
  EXPECT_DOUBLE_EQ(got.sample_period, 0.04);
  ASSERT_EQ(got.size(), traj.size());
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(got.states[i].position, traj.states[i].position);
    EXPECT_EQ(got.velocities[i], traj.velocities[i]);
  }
}

TEST(Downsample, KeepsEveryTenthSample)
{
  std::vector<RoadUserState> states;
  for (int i = 0; i < 100; ++i) {
    states.push_back({Vec2(static_cast<double>(i), 0.0), 1.0, Vec2(1.0, 0.0)});
  }
  const Trajectory traj = make_trajectory(1, 1, Category::vehicle, 1, 0.04, states);
  const Trajectory down = downsample(traj, 10);
  ASSERT_EQ(down.size(), 10u);
  EXPECT_DOUBLE_EQ(down.sample_period, 0.4);
  for (std::size_t i = 0; i < down.size(); ++i) {
    EXPECT_EQ(down.states[i].position.x(), static_cast<double>(10 * i));
  }
}

TEST(Downsample, ShortTrajectoryKeepsFirstSample)
{
  std::vector<RoadUserState> states(9);
  const Trajectory traj = make_trajectory(1, 1, Category::vehicle, 1, 0.04, states);
  EXPECT_EQ(downsample(traj, 10).size(), 1u);
}

TEST(Downsample, FactorOneIsIdentity)
{
  const Trajectory traj = plain_trajectory(1, 1, Category::vehicle, 1);
  const Trajectory same = downsample(traj, 1);
  EXPECT_EQ(same.size(), traj.size());
  EXPECT_DOUBLE_EQ(same.sample_period, traj.sample_period);
  for (std::size_t i = 0; i < traj.size(); ++i) {
    EXPECT_EQ(same.states[i].position, traj.states[i].position);
  }
}

TEST(Downsample, KeptCountIsCeilOfRatio)
{
  for (int n : {1, 5, 10, 11, 19, 20, 21, 99, 100, 101}) {
    std::vector<RoadUserState> states(static_cast<std::size_t>(n));
    const Trajectory traj = make_trajectory(1, 1, Category::vehicle, 1, 0.04, states);
    for (int factor : {1, 2, 3, 10}) {
      const std::size_t expected =
        (static_cast<std::size_t>(n) + static_cast<std::size_t>(factor) - 1) /
        static_cast<std::size_t>(factor);
      EXPECT_EQ(downsample(traj, factor).size(), expected) << n << "/" << factor;
    }
  }
}

TEST(Downsample, RejectsNonPositiveFactor)
{
  const Trajectory traj = plain_trajectory(1, 1, Category::vehicle, 1);
  EXPECT_THROW(downsample(traj, 0), std::invalid_argument);
  EXPECT_THROW(downsample(traj, -3), std::invalid_argument);
}

TEST(Downsample, SubsamplesVelocitiesAndSituations)
{
  Trajectory traj = plain_trajectory(1, 1, Category::vehicle, 1);
  traj.velocities.clear();
  traj.other_positions.clear();
  for (std::size_t i = 0; i < traj.size(); ++i) {
    traj.velocities.emplace_back(static_cast<double>(i), 0.0);
    traj.other_positions.push_back(i % 2 == 0 ? std::optional<Vec2>(Vec2(0.0, double(i)))
                                              : std::nullopt);
  }
  const Trajectory down = downsample(traj, 2);
  ASSERT_EQ(down.velocities.size(), down.size());
  ASSERT_EQ(down.other_positions.size(), down.size());
  EXPECT_EQ(down.velocities[1], Vec2(2.0, 0.0));
  EXPECT_TRUE(down.other_positions[1].has_value());
}

TEST(DeriveOrientations, NormalizesAndCarriesForward)
{
  const auto result = derive_orientations({Vec2(3.0, 4.0), Vec2(0.0, 0.0)});
  ASSERT_EQ(result.size(), 2u);
  EXPECT_DOUBLE_EQ(result[0].x(), 0.6);
  EXPECT_DOUBLE_EQ(result[0].y(), 0.8);
  EXPECT_EQ(result[1], result[0]);
}

TEST(DeriveOrientations, LeadingZerosBackfilled)
{
  const auto result = derive_orientations({Vec2(0.0, 0.0), Vec2(1.0, 0.0)});
  ASSERT_EQ(result.size(), 2u);
  EXPECT_EQ(result[0], Vec2(1.0, 0.0));
  EXPECT_EQ(result[1], Vec2(1.0, 0.0));
}

TEST(DeriveOrientations, AllZeroThrows)
{
  EXPECT_THROW(derive_orientations({Vec2(0.0, 0.0), Vec2(0.0, 0.0)}), std::invalid_argument);
  EXPECT_THROW(derive_orientations(std::vector<Vec2>{}), std::invalid_argument);
}

TEST(DeriveOrientations, OutputsUnitNorm)
{
  std::mt19937_64 rng(31);
  std::uniform_real_distribution<double> coord(-10.0, 10.0);
  std::uniform_int_distribution<int> zero(0, 3);
  std::vector<Vec2> velocities;
  for (int i = 0; i < 200; ++i) {
    velocities.push_back(zero(rng) == 0 ? Vec2(0.0, 0.0) : Vec2(coord(rng), coord(rng)));
  }
  velocities[50] = Vec2(1.0, 2.0);  // guarantee one nonzero sample
  for (const Vec2 & o : derive_orientations(velocities)) {
    EXPECT_NEAR(o.norm(), 1.0, 1e-9);
  }
}

TEST(DeriveOrientations, TrajectoryOverloadFillsStates)
{
  Trajectory traj = plain_trajectory(1, 1, Category::vehicle, 1);
  for (auto & state : traj.states) {
    state.orientation = Vec2(0.0, 0.0);
  }
  traj.velocities.assign(traj.size(), Vec2(0.0, -2.0));
  derive_orientations(traj);
  for (const auto & state : traj.states) {
    EXPECT_EQ(state.orientation, Vec2(0.0, -1.0));
  }
}

Corpus single_corpus(Trajectory traj)
{
  Corpus corpus;
  corpus.trajectories.push_back(std::move(traj));
  return corpus;
}

TEST(FilterCorpus, MergesTruckBusIntoVehicle)
{
  const auto [filtered, report] =
    filter_corpus(single_corpus(plain_trajectory(1, 1, Category::truck_bus, 1)));
  ASSERT_EQ(filtered.size(), 1u);
  EXPECT_EQ(filtered.trajectories[0].category, Category::vehicle);
  EXPECT_EQ(report.merged_truck_bus, 1u);
  EXPECT_EQ(report.total_dropped(), 0u);
}

TEST(FilterCorpus, DropsShortTrajectories)
{
  // 19 samples at 0.4 s is 7.2 s of data, just under the minimum.
  Trajectory short_traj = plain_trajectory(1, 1, Category::vehicle, 1);
  short_traj.states.pop_back();
  const auto [filtered, report] = filter_corpus(single_corpus(short_traj));
  EXPECT_TRUE(filtered.empty());
  EXPECT_EQ(report.dropped_too_short, 1u);

  // Exactly 7.6 s survives.
  const auto [kept, keep_report] =
    filter_corpus(single_corpus(plain_trajectory(1, 1, Category::vehicle, 1)));
  EXPECT_EQ(kept.size(), 1u);
  EXPECT_EQ(keep_report.total_dropped(), 0u);
}

TEST(FilterCorpus, DropsSpeedOutliersPerCategory)
{
  Trajectory fast_pedestrian = plain_trajectory(1, 1, Category::pedestrian, 1, 1.0);
  fast_pedestrian.states[5].speed = kmh_to_mps(20.0);
  Trajectory fast_bicycle = plain_trajectory(1, 2, Category::bicycle, 1, 5.0);
  fast_bicycle.states[5].speed = kmh_to_mps(36.0);
  Trajectory fast_vehicle = plain_trajectory(1, 3, Category::vehicle, 1, 5.0);
  fast_vehicle.states[5].speed = kmh_to_mps(120.0);
  Trajectory ok_pedestrian = plain_trajectory(1, 4, Category::pedestrian, 1, 1.0);
  ok_pedestrian.states[5].speed = kmh_to_mps(14.9);  // under the bound, kept

  Corpus corpus;
  corpus.trajectories = {fast_pedestrian, fast_bicycle, fast_vehicle, ok_pedestrian};
  const auto [filtered, report] = filter_corpus(corpus);
  ASSERT_EQ(filtered.size(), 2u);
  EXPECT_EQ(filtered.trajectories[0].track_id, 3);
  EXPECT_EQ(filtered.trajectories[1].track_id, 4);
  EXPECT_EQ(report.dropped_speed_outlier, 2u);
}

TEST(FilterCorpus, DropsStationaryTrajectories)
{
  const auto [filtered, report] = filter_corpus(
    single_corpus(plain_trajectory(1, 1, Category::vehicle, 1, kmh_to_mps(0.05))));
  EXPECT_TRUE(filtered.empty());
  EXPECT_EQ(report.dropped_stationary, 1u);
}

TEST(FilterCorpus, StationaryRuleUsesInterpolatedPercentile)
{
  // 19 zero-speed samples and one 10 m/s spike: the 95th percentile lands at
  // rank 18.05, interpolating to 0.5 m/s, comfortably above 0.36 km/h.
  Trajectory traj = plain_trajectory(1, 1, Category::vehicle, 1, 0.0);
  traj.states[19].speed = 10.0;
  const auto [filtered, report] = filter_corpus(single_corpus(traj));
  EXPECT_EQ(filtered.size(), 1u);
  EXPECT_EQ(report.dropped_stationary, 0u);
}

TEST(FilterCorpus, MergeHappensBeforeRules)
{
  Trajectory short_truck = plain_trajectory(2, 1, Category::truck_bus, 3);
  short_truck.states.resize(10);
  const auto [filtered, report] = filter_corpus(single_corpus(short_truck));
  EXPECT_TRUE(filtered.empty());
  EXPECT_EQ(report.merged_truck_bus, 1u);
  const auto key = std::make_pair(3, Category::vehicle);
  ASSERT_TRUE(report.drops.count(key));
  EXPECT_EQ(report.drops.at(key)[FilterReport::too_short], 1u);
}

TEST(FilterCorpus, IsIdempotent)
{
  Corpus corpus;
  corpus.trajectories.push_back(plain_trajectory(1, 1, Category::truck_bus, 1));
  corpus.trajectories.push_back(plain_trajectory(1, 2, Category::pedestrian, 1, 1.0));
  Trajectory slow = plain_trajectory(1, 3, Category::vehicle, 1, 0.01);
  corpus.trajectories.push_back(slow);

  const auto [once, first_report] = filter_corpus(corpus);
  const auto [twice, second_report] = filter_corpus(once);
  EXPECT_EQ(once.size(), twice.size());
  EXPECT_EQ(second_report.total_dropped(), 0u);
  EXPECT_EQ(second_report.merged_truck_bus, 0u);
}

TEST(FilterCorpus, SummaryMentionsCounts)
{
  const auto [filtered, report] =
    filter_corpus(single_corpus(plain_trajectory(1, 1, Category::vehicle, 1, 0.0)));
  (void)filtered;
  EXPECT_NE(report.summary().find("1"), std::string::npos);
}

// Brute-force reference for the recording split: enumerate every subset per
// location and minimize the summed squared deviation, breaking ties toward
// the lexicographically smallest sorted train-recording list.
std::pair<std::set<int>, double> split_oracle(const Corpus & corpus, double target)
{
  std::map<int, std::map<int, std::map<Category, std::size_t>>> cells;
  for (const Trajectory & traj : corpus.trajectories) {
    ++cells[traj.location_id][traj.recording_id][traj.category];
  }
  std::set<int> train;
  double total = 0.0;
  for (const auto & [location, recordings] : cells) {
    (void)location;
    std::vector<int> ids;
    std::map<Category, std::size_t> totals;
    for (const auto & [rec, counts] : recordings) {
      ids.push_back(rec);
      for (const auto & [category, count] : counts) {
        totals[category] += count;
      }
    }
    double best = 0.0;
    std::vector<int> best_ids;
    bool have = false;
    for (std::uint32_t mask = 1; mask + 1 < (1u << ids.size()); ++mask) {
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
      for (const auto & [category, count] : totals) {
        const double fraction =
          static_cast<double>(train_counts[category]) / static_cast<double>(count);
        objective += (fraction - target) * (fraction - target);
      }
      if (!have || objective < best || (objective == best && train_ids < best_ids)) {
        best = objective;
        best_ids = train_ids;
        have = true;
      }
    }
    total += best;
    train.insert(best_ids.begin(), best_ids.end());
  }
  return {train, total};
}

Corpus corpus_with_counts(const std::map<int, std::map<Category, int>> & recording_counts,
                          int location = 1, int first_track = 1)
{
  Corpus corpus;
  int track = first_track;
  for (const auto & [rec, counts] : recording_counts) {
    for (const auto & [category, count] : counts) {
      for (int i = 0; i < count; ++i) {
        corpus.trajectories.push_back(plain_trajectory(rec, track++, category, location));
      }
    }
  }
  return corpus;
}

TEST(SplitByRecordings, TwoRecordingsMatchTargetExactly)
{
  const Corpus corpus = corpus_with_counts(
    {{1, {{Category::vehicle, 7}}}, {2, {{Category::vehicle, 3}}}});
  const SplitResult result = split_by_recordings(corpus, 0.7);
  EXPECT_EQ(result.train_recordings, (std::set<int>{1}));
  EXPECT_EQ(result.test_recordings, (std::set<int>{2}));
  EXPECT_EQ(result.deviation, 0.0);
  EXPECT_EQ(result.train.size(), 7u);
  EXPECT_EQ(result.test.size(), 3u);
}

TEST(SplitByRecordings, ThreeEqualRecordingsTieBreaksLexicographically)
{
  const Corpus corpus = corpus_with_counts({{1, {{Category::vehicle, 5}}},
                                            {2, {{Category::vehicle, 5}}},
                                            {3, {{Category::vehicle, 5}}}});
  const SplitResult result = split_by_recordings(corpus, 0.7);
  EXPECT_EQ(result.train_recordings, (std::set<int>{1, 2}));
}

TEST(SplitByRecordings, MatchesBruteForceOracle)
{
  std::mt19937_64 rng(101);
  std::uniform_int_distribution<int> count(0, 9);
  std::uniform_int_distribution<int> recordings(2, 5);
  for (int rep = 0; rep < 25; ++rep) {
    Corpus corpus;
    int track = 1;
    for (int location = 1; location <= 2; ++location) {
      const int recs = recordings(rng);
      for (int r = 0; r < recs; ++r) {
        const int rec = location * 100 + r;
        bool any = false;
        for (Category category : {Category::vehicle, Category::bicycle}) {
          const int n = count(rng);
          for (int i = 0; i < n; ++i) {
            corpus.trajectories.push_back(plain_trajectory(rec, track++, category, location));
            any = true;
          }
        }
        if (!any) {  // keep every recording non-empty so it participates
          corpus.trajectories.push_back(
            plain_trajectory(rec, track++, Category::vehicle, location));
        }
      }
    }
    const double target = 0.5 + 0.05 * (rep % 5);
    const SplitResult result = split_by_recordings(corpus, target);
    const auto [want_train, want_deviation] = split_oracle(corpus, target);
    EXPECT_EQ(result.train_recordings, want_train) << "rep " << rep;
    EXPECT_DOUBLE_EQ(result.deviation, want_deviation) << "rep " << rep;
  }
}

TEST(SplitByRecordings, PartitionsCorpus)
{
  const Corpus corpus = corpus_with_counts({{1, {{Category::vehicle, 4}}},
                                            {2, {{Category::vehicle, 3}}},
                                            {3, {{Category::vehicle, 2}}}});
  const SplitResult result = split_by_recordings(corpus, 0.7);
  EXPECT_EQ(result.train.size() + result.test.size(), corpus.size());
  std::set<int> overlap;
  for (int rec : result.train_recordings) {
    if (result.test_recordings.count(rec)) {
      overlap.insert(rec);
    }
  }
  EXPECT_TRUE(overlap.empty());
  for (const Trajectory & traj : result.train.trajectories) {
    EXPECT_TRUE(result.train_recordings.count(traj.recording_id));
  }
  for (const Trajectory & traj : result.test.trajectories) {
    EXPECT_TRUE(result.test_recordings.count(traj.recording_id));
  }
}

TEST(SplitByRecordings, SingleRecordingLocationThrows)
{
  const Corpus corpus = corpus_with_counts({{1, {{Category::vehicle, 5}}}});
  EXPECT_THROW(split_by_recordings(corpus, 0.7), std::invalid_argument);
}

TEST(SplitByRecordings, RecordingSpanningLocationsThrows)
{
  Corpus corpus;
  corpus.trajectories.push_back(plain_trajectory(1, 1, Category::vehicle, 1));
  corpus.trajectories.push_back(plain_trajectory(1, 2, Category::vehicle, 2));
  corpus.trajectories.push_back(plain_trajectory(2, 3, Category::vehicle, 1));
  EXPECT_THROW(split_by_recordings(corpus, 0.7), std::invalid_argument);
}

TEST(SplitByRecordings, RejectsTargetOutsideOpenInterval)
{
  const Corpus corpus = corpus_with_counts(
    {{1, {{Category::vehicle, 7}}}, {2, {{Category::vehicle, 3}}}});
  for (double target : {0.0, 1.0, -0.2, 1.3}) {
    EXPECT_THROW(split_by_recordings(corpus, target), std::invalid_argument);
  }
}

using CorpusIoTest = TempDir;

TEST_F(CorpusIoTest, RoundTripIsExact)
{
  Corpus corpus;
  Trajectory plain = plain_trajectory(1, 1, Category::pedestrian, 2, 1.25);
  plain.states[3].position = Vec2(0.1 + 0.2, -1.0 / 3.0);  // non-terminating fractions
  plain.states[3].orientation = Vec2(std::sqrt(0.5), std::sqrt(0.5));
  corpus.trajectories.push_back(plain);

  Trajectory annotated = plain_trajectory(2, 9, Category::vehicle, 2, 3.0);
  annotated.other_positions.assign(annotated.size(), std::nullopt);
  annotated.other_positions[4] = Vec2(7.25, -3.5);
  corpus.trajectories.push_back(annotated);
  corpus.provenance[1] = "fileA";
  corpus.provenance[2] = "fileB";

  write_corpus(corpus, path("corpus.csv"));
  const Corpus round = read_corpus(path("corpus.csv"));

  ASSERT_EQ(round.size(), corpus.size());
  EXPECT_EQ(round.provenance, corpus.provenance);
  for (std::size_t n = 0; n < corpus.size(); ++n) {
    const Trajectory & want = corpus.trajectories[n];
    const Trajectory & got = round.trajectories[n];
    EXPECT_EQ(got.recording_id, want.recording_id);
    EXPECT_EQ(got.track_id, want.track_id);
    EXPECT_EQ(got.category, want.category);
    EXPECT_EQ(got.location_id, want.location_id);
    EXPECT_EQ(got.sample_period, want.sample_period);
    ASSERT_EQ(got.size(), want.size());
    ASSERT_EQ(got.other_positions.size(), want.other_positions.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      EXPECT_EQ(got.states[i].position, want.states[i].position);
      EXPECT_EQ(got.states[i].speed, want.states[i].speed);
      EXPECT_EQ(got.states[i].orientation, want.states[i].orientation);
    }
    for (std::size_t i = 0; i < want.other_positions.size(); ++i) {
      ASSERT_EQ(got.other_positions[i].has_value(), want.other_positions[i].has_value());
      if (want.other_positions[i]) {
        EXPECT_EQ(*got.other_positions[i], *want.other_positions[i]);
      }
    }
  }
}

TEST_F(CorpusIoTest, DuplicateTrajectoryKeyThrows)
{
  const auto bad = file("dup.csv",
                        "roadpred-corpus,1\n"
                        "trajectory,1,1,vehicle,1,0.4,1,0\n"
                        "state,0,0,1,1,0\n"
                        "trajectory,1,1,vehicle,1,0.4,1,0\n"
                        "state,0,0,1,1,0\n");
  EXPECT_THROW(read_corpus(bad), ParseError);
}

TEST_F(CorpusIoTest, BadHeaderThrows)
{
  EXPECT_THROW(read_corpus(file("bad.csv", "not-a-corpus,9\n")), ParseError);
  EXPECT_THROW(read_corpus(path("missing.csv")), ParseError);
}

TEST_F(CorpusIoTest, TruncatedStatesThrow)
{
  const auto bad = file("trunc.csv",
                        "roadpred-corpus,1\n"
                        "trajectory,1,1,vehicle,1,0.4,2,0\n"
                        "state,0,0,1,1,0\n");
  EXPECT_THROW(read_corpus(bad), ParseError);
}

}  // namespace
}  // namespace roadpred
