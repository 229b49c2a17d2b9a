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

// Drives the installed command line binary as a subprocess and checks its
// artifacts, exit codes, and agreement with the library.

#include <gtest/gtest.h>
#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>

#include "roadpred/database.hpp"
#include "roadpred/types.hpp"

#ifndef CLI_PATH
#error "CLI_PATH must name the roadpred binary"
#endif

namespace roadpred
{
namespace
{

namespace fs = std::filesystem;

struct RunResult
{
  int exit_code = -1;
  std::string out;
  std::string err;
};

class CliTest : public ::testing::Test
{
protected:
  void SetUp() override
  {
    const auto * info = ::testing::UnitTest::GetInstance()->current_test_info();
    const std::string name = std::string(info->test_suite_name()) + "." + info->name();
    dir_ = fs::temp_directory_path() /
           ("roadpred_cli_" + std::to_string(std::hash<std::string>{}(name)));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }

  void TearDown() override { fs::remove_all(dir_); }

  RunResult run(const std::string & args) const
  {
    const fs::path out_path = dir_ / "_stdout";
    const fs::path err_path = dir_ / "_stderr";
    const std::string command = "cd '" + dir_.string() + "' && '" + CLI_PATH + "' " + args +
                                " > '" + out_path.string() + "' 2> '" + err_path.string() + "'";
    const int status = std::system(command.c_str());
    RunResult result;
    result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    result.out = slurp(out_path);
    result.err = slurp(err_path);
    return result;
  }

  std::string slurp(const fs::path & relative) const
  {
    std::ifstream in(relative.is_absolute() ? relative : dir_ / relative);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  bool exists(const std::string & relative) const { return fs::exists(dir_ / relative); }

  fs::path dir_;
};

/// Reads the "position <x> <y>" line of a predict run.
Vec2 parse_position(const std::string & out)
{
  const auto at = out.find("position ");
  EXPECT_NE(at, std::string::npos) << out;
  double x = 0.0;
  double y = 0.0;
  std::istringstream line(out.substr(at + 9));
  line >> x >> y;
  return {x, y};
}

TEST_F(CliTest, HminReproducesTheReferenceBrakingHorizons)
{
  const struct
  {
    const char * args;
    const char * expected;
  } cases[] = {
    {"hmin --speed-kmh 30 --mu 0.8", "1.06\n"},
    {"hmin --speed-kmh 50 --mu 0.8", "1.77\n"},
    {"hmin --speed-kmh 30 --mu 0.5", "1.70\n"},
    {"hmin --speed-kmh 50 --mu 0.5", "2.83\n"},
  };
  for (const auto & c : cases) {
    const RunResult result = run(c.args);
    EXPECT_EQ(result.exit_code, 0) << c.args << "\n" << result.err;
    EXPECT_EQ(result.out, c.expected) << c.args;
  }
}

TEST_F(CliTest, UsageErrorsExitOne)
{
  EXPECT_EQ(run("").exit_code, 1);
  EXPECT_EQ(run("frobnicate").exit_code, 1);
  EXPECT_EQ(run("hmin --mu 0.8").exit_code, 1);          // missing required flag
  EXPECT_EQ(run("hmin --speed-kmh 50 --mu 0.8 --what").exit_code, 1);
  EXPECT_EQ(run("synth bifurcation --seed 1").exit_code, 1);  // no output requested
  const RunResult bad_model =
    run("predict --db x --x 0 --y 0 --speed 1 --horizon 1 --model bogus");
  EXPECT_EQ(bad_model.exit_code, 1);
}

TEST_F(CliTest, MissingInputFilesExitTwo)
{
  EXPECT_EQ(run("build-db --input absent.csv --output db.csv").exit_code, 2);
  EXPECT_EQ(run("split --input absent.csv --train-output a --test-output b").exit_code, 2);
  EXPECT_EQ(
    run("predict --db absent.csv --x 0 --y 0 --speed 1 --horizon 1 --params nope.txt").exit_code,
    2);
}

TEST_F(CliTest, DomainErrorsExitThree)
{
  EXPECT_EQ(run("hmin --speed-kmh 50 --mu 0").exit_code, 3);

  ASSERT_EQ(run("synth bifurcation --seed 1 --processed c.csv").exit_code, 0);
  // One cross-validation fold is not a partition into train and validate.
  EXPECT_EQ(run("fit --input c.csv --folds 1 --a 0.5 --params-output p.txt").exit_code, 3);
  // A recording split cannot separate fewer than two recordings per location.
  ASSERT_EQ(run("synth stop_yield --seed 1 --processed one_rec.csv").exit_code, 0);
  EXPECT_EQ(run("split --input one_rec.csv --train-output a --test-output b").exit_code, 3);
}

TEST_F(CliTest, SynthIsByteIdenticalUnderTheSameSeed)
{
  ASSERT_EQ(run("synth curved_road --seed 11 --noise 0.07 --processed a.csv --raw-dir ra")
              .exit_code,
            0);
  ASSERT_EQ(run("synth curved_road --seed 11 --noise 0.07 --processed b.csv --raw-dir rb")
              .exit_code,
            0);
  ASSERT_EQ(run("synth curved_road --seed 12 --noise 0.07 --processed c.csv").exit_code, 0);
  EXPECT_EQ(slurp("a.csv"), slurp("b.csv"));
  EXPECT_EQ(slurp("ra/tracks.csv"), slurp("rb/tracks.csv"));
  EXPECT_NE(slurp("a.csv"), slurp("c.csv"));
}

TEST_F(CliTest, ConfigFileSuppliesValuesAndExplicitFlagsWin)
{
  std::ofstream(dir_ / "run.ini") << "[hmin]\nspeed-kmh=50\nmu=0.5\n";
  const RunResult from_config = run("hmin --config run.ini");
  EXPECT_EQ(from_config.exit_code, 0) << from_config.err;
  EXPECT_EQ(from_config.out, "2.83\n");

  const RunResult overridden = run("hmin --config run.ini --mu 0.8");
  EXPECT_EQ(overridden.exit_code, 0) << overridden.err;
  EXPECT_EQ(overridden.out, "1.77\n");
}

TEST_F(CliTest, ConfigEchoReloadsToTheSameArtifacts)
{
  ASSERT_EQ(run("synth bifurcation --seed 5 --noise 0.05 --processed c.csv").exit_code, 0);
  ASSERT_EQ(run("fit --input c.csv --folds 2 --a 0.1 0.5 --b 1 --c-orient 50"
                " --params-output p1.txt")
              .exit_code,
            0);
  ASSERT_TRUE(exists("p1.txt.config"));
  const RunResult reload = run("fit --config p1.txt.config --params-output p2.txt");
  ASSERT_EQ(reload.exit_code, 0) << reload.err;
  EXPECT_EQ(slurp("p1.txt"), slurp("p2.txt"));
}

TEST_F(CliTest, OffReferenceWarmupWarnsOnStderr)
{
  ASSERT_EQ(run("synth bifurcation --seed 5 --processed c.csv").exit_code, 0);
  const RunResult odd = run("build-db --input c.csv --warmup 2 --output db.csv");
  EXPECT_EQ(odd.exit_code, 0);
  EXPECT_NE(odd.err.find("warning"), std::string::npos) << odd.err;
  EXPECT_NE(odd.err.find("2.8"), std::string::npos) << odd.err;

  const RunResult reference = run("build-db --input c.csv --output db7.csv");
  EXPECT_EQ(reference.exit_code, 0);
  EXPECT_EQ(reference.err.find("warning"), std::string::npos) << reference.err;
}

TEST_F(CliTest, PredictMatchesTheLibraryBitForBit)
{
  ASSERT_EQ(run("synth bifurcation --seed 9 --noise 0.05 --processed c.csv").exit_code, 0);
  ASSERT_EQ(run("build-db --input c.csv --output db.csv").exit_code, 0);

  const RunResult wam =
    run("predict --db db.csv --a 0.5 --b 1 --c-orient 50 --x -5 --y 0 --speed 8 --horizon 12");
  ASSERT_EQ(wam.exit_code, 0) << wam.err;

  const DisplacementDatabase db = read_database(dir_ / "db.csv");
  RoadUserState query;
  query.position = Vec2(-5.0, 0.0);
  query.speed = 8.0;
  query.orientation = Vec2(1.0, 0.0);
  const Prediction expected = predict(db, {0.5, 1.0, 50.0, 15.0}, query, 12);
  const Vec2 got = parse_position(wam.out);
  EXPECT_EQ(got.x(), expected.position.x());
  EXPECT_EQ(got.y(), expected.position.y());
  EXPECT_NE(wam.out.find("support "), std::string::npos);

  const RunResult cv = run(
    "predict --db db.csv --model constant_velocity --x -5 --y 0 --speed 8 --horizon 12");
  ASSERT_EQ(cv.exit_code, 0) << cv.err;
  const Prediction straight = constant_velocity_predict(query, 12, db.sample_period);
  const Vec2 cv_got = parse_position(cv.out);
  EXPECT_EQ(cv_got.x(), straight.position.x());
  EXPECT_EQ(cv_got.y(), straight.position.y());
}

TEST_F(CliTest, PredictWithoutSimilarDataExitsThreeOrFallsBack)
{
  ASSERT_EQ(run("synth bifurcation --seed 9 --noise 0.05 --processed c.csv").exit_code, 0);
  ASSERT_EQ(run("build-db --input c.csv --output db.csv").exit_code, 0);

  const std::string far = "--db db.csv --a 0.5 --x 5000 --y 5000 --speed 8 --horizon 12";
  const RunResult flagged = run("predict " + far);
  EXPECT_EQ(flagged.exit_code, 3);
  EXPECT_NE(flagged.err.find("no similar data"), std::string::npos) << flagged.err;

  const RunResult fallback = run("predict " + far + " --fallback-to-cv");
  ASSERT_EQ(fallback.exit_code, 0) << fallback.err;
  EXPECT_NE(fallback.out.find("fallback constant_velocity"), std::string::npos);
  const Vec2 got = parse_position(fallback.out);
  EXPECT_EQ(got.x(), 5000.0 + 8.0 * 12 * 0.4);
  EXPECT_EQ(got.y(), 5000.0);
}

TEST_F(CliTest, PipelineComposesEndToEndOnEveryScenario)
{
  const struct
  {
    const char * name;
    const char * synth_extra;
    const char * eval_extra;
  } scenarios[] = {
    {"bifurcation", "--noise 0.05", ""},
    {"stop_yield", "--noise 0.02 --replicas 4", ""},
    {"curved_road", "--noise 0.05", " --horizons 1 6 12"},
    {"constant_velocity", "--noise 0.05", ""},
  };
  for (const auto & scenario : scenarios) {
    SCOPED_TRACE(scenario.name);
    const std::string tag = scenario.name;
    ASSERT_EQ(run("synth " + tag + " --seed 3 " + scenario.synth_extra + " --raw-dir raw_" + tag)
                .exit_code,
              0);
    ASSERT_EQ(run("preprocess --tracks raw_" + tag + "/tracks.csv --tracks-meta raw_" + tag +
                  "/tracksMeta.csv --recording-meta raw_" + tag +
                  "/recordingMeta.csv --output " + tag + ".csv")
                .exit_code,
              0);
    ASSERT_EQ(run("split --input " + tag + ".csv --train-output " + tag + "_train.csv" +
                  " --test-output " + tag + "_test.csv")
                .exit_code,
              0);
    ASSERT_EQ(run("fit --input " + tag + "_train.csv --folds 2 --a 0.5 --b 1 --c-orient 50" +
                  " --params-output " + tag + ".params")
                .exit_code,
              0);
    ASSERT_EQ(
      run("build-db --input " + tag + "_train.csv --output " + tag + ".db").exit_code, 0);
    const RunResult eval = run("evaluate --db " + tag + ".db --test " + tag + "_test.csv" +
                               " --params " + tag + ".params --fallback-to-cv" +
                               " --records-output " + tag + "_records.csv --stats-output " + tag +
                               "_stats.csv --report-output " + tag + "_report.txt" +
                               scenario.eval_extra);
    ASSERT_EQ(eval.exit_code, 0) << eval.err;
    EXPECT_NE(eval.out.find("ADE / FDE"), std::string::npos);
    EXPECT_NE(eval.out.find("wam"), std::string::npos);
    EXPECT_NE(eval.out.find("constant_velocity"), std::string::npos);
    EXPECT_TRUE(exists(tag + "_records.csv"));
    EXPECT_TRUE(exists(tag + "_stats.csv"));
    EXPECT_TRUE(exists(tag + "_report.txt"));
    EXPECT_TRUE(exists(tag + "_records.csv.config"));
  }
}

TEST_F(CliTest, InteractionModelScoresTheAnnotatedCorpus)
{
  ASSERT_EQ(
    run("synth stop_yield --seed 4 --noise 0.02 --replicas 4 --processed sy.csv").exit_code, 0);
  ASSERT_EQ(run("split --input sy.csv --train-output train.csv --test-output test.csv")
              .exit_code,
            0);
  ASSERT_EQ(run("build-db --input train.csv --output sy.db").exit_code, 0);
  const RunResult eval =
    run("evaluate --db sy.db --test test.csv --a 0.5 --b 1 --c-orient 50 --d 1"
        " --model wam --model interaction --fallback-to-cv");
  ASSERT_EQ(eval.exit_code, 0) << eval.err;
  EXPECT_NE(eval.out.find("interaction"), std::string::npos);
  EXPECT_NE(eval.out.find("ADE / FDE"), std::string::npos);
}

}  // namespace
}  // namespace roadpred
