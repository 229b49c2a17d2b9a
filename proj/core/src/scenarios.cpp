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

#include "roadpred/scenarios.hpp"

#include <cmath>
#include <optional>
#include <random>
#include <stdexcept>
#include <utility>

#include "roadpred/preprocess.hpp"

namespace roadpred
{
namespace
{

constexpr double kRawRate = 25.0;      // Hz of the generated raw corpora
constexpr int kDownsampleFactor = 10;  // raw 25 Hz -> processed 2.5 Hz

void check_noise(double noise)
{
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw std::invalid_argument("scenario noise must be finite and non-negative");
  }
}

// Samples an analytic motion at 25 Hz into a raw trajectory: positions get
// iid Gaussian noise per frame, velocities stay exact, orientations are
// left for the pipeline to derive.
template <typename PosFn, typename VelFn>
Trajectory sample_track(int recording, int track, Category category, int location, int frames,
                        const PosFn & pos, const VelFn & vel, double noise,
                        std::mt19937_64 & rng)
{
  Trajectory traj;
  traj.recording_id = recording;
  traj.track_id = track;
  traj.category = category;
  traj.location_id = location;
  traj.sample_period = 1.0 / kRawRate;
  traj.states.reserve(static_cast<std::size_t>(frames));
  traj.velocities.reserve(static_cast<std::size_t>(frames));
  std::normal_distribution<double> gauss(0.0, noise > 0.0 ? noise : 1.0);
  for (int j = 0; j < frames; ++j) {
    const double t = j / kRawRate;
    Vec2 p = pos(t);
    if (noise > 0.0) {
      const double nx = gauss(rng);
      const double ny = gauss(rng);
      p += Vec2(nx, ny);
    }
    const Vec2 v = vel(t);
    traj.states.push_back(RoadUserState{p, v.norm(), Vec2::Zero()});
    traj.velocities.push_back(v);
  }
  return traj;
}

Trajectory process_track(const Trajectory & raw)
{
  Trajectory out = downsample(raw, kDownsampleFactor);
  derive_orientations(out);
  return out;
}

constexpr double kBifAppSpeed = 8.0;    // m/s
constexpr double kBifStartX = -38.4;    // puts the brake point at x = 0
constexpr double kBifBrakeTime = 4.8;   // s after start
constexpr double kBifDecel = 2.0;       // m/s^2
constexpr int kBifSamples = 30;         // per trajectory at 2.5 Hz
constexpr int kBifTrajectories = 20;    // half stop, half keep going
constexpr int kBifRecordings = 4;

constexpr double kYieldSpeed = 10.0;  // m/s for every stop-yield vehicle
constexpr double kYieldLaneY = 20.0;  // parallel lane, beyond the cutoff radius
constexpr int kYieldSamples = 61;     // 24 s at 2.5 Hz

constexpr int kCurveRoads = 8;
constexpr int kCurveTrajectories = 500;
constexpr int kCurveRecordings = 10;

constexpr int kConstTrajectories = 24;
constexpr int kConstRecordings = 4;
constexpr int kConstSamples = 40;

int raw_frames(int samples) { return (samples - 1) * kDownsampleFactor + 1; }

}  // namespace

StopYieldLayout stop_yield_layout()
{
  // Target timeline at 2.5 Hz: approach at 10 m/s, brake at 2.5 m/s^2 from
  // t = 6 s, rest from t = 10 s until the other vehicle has passed, pull
  // away at 2.5 m/s^2 from t = 16 s, cruise from t = 20 s.
  StopYieldLayout layout;
  layout.decel_onset = 15;
  layout.rest_begin = 25;
  layout.rest_end = 40;
  layout.cruise_begin = 50;
  layout.last = kYieldSamples - 1;
  layout.approach_speed = kYieldSpeed;
  return layout;
}

double bifurcation_branch_gap()
{
  // At the brake point both populations share the same state; 4.8 s later
  // the braking one sits at x = 16 and the passing one is at x = 38.4.
  const double stop_x = kBifAppSpeed * kBifAppSpeed / (2.0 * kBifDecel);
  const double go_x = kBifAppSpeed * kBifBrakeTime;
  return go_x - stop_x;
}

ScenarioBundle make_bifurcation(std::uint64_t seed, double noise)
{
  check_noise(noise);
  std::mt19937_64 rng(seed);
  ScenarioBundle bundle;
  const int frames = raw_frames(kBifSamples);
  const double t_rest = kBifBrakeTime + kBifAppSpeed / kBifDecel;
  const auto stop_pos = [t_rest](double t) -> Vec2 {
    if (t < kBifBrakeTime) return {kBifStartX + kBifAppSpeed * t, 0.0};
    if (t < t_rest) {
      const double u = t - kBifBrakeTime;
      return {kBifAppSpeed * u - 0.5 * kBifDecel * u * u, 0.0};
    }
    return {kBifAppSpeed * kBifAppSpeed / (2.0 * kBifDecel), 0.0};
  };
  const auto stop_vel = [t_rest](double t) -> Vec2 {
    if (t < kBifBrakeTime) return {kBifAppSpeed, 0.0};
    if (t < t_rest) return {kBifAppSpeed - kBifDecel * (t - kBifBrakeTime), 0.0};
    return {0.0, 0.0};
  };
  const auto go_pos = [](double t) -> Vec2 { return {kBifStartX + kBifAppSpeed * t, 0.0}; };
  const auto go_vel = [](double) -> Vec2 { return {kBifAppSpeed, 0.0}; };

  for (int i = 0; i < kBifTrajectories; ++i) {
    const int recording = i % kBifRecordings + 1;
    const bool stops = i < kBifTrajectories / 2;
    Trajectory raw =
      stops ? sample_track(recording, i + 1, Category::vehicle, 1, frames, stop_pos, stop_vel,
                           noise, rng)
            : sample_track(recording, i + 1, Category::vehicle, 1, frames, go_pos, go_vel,
                           noise, rng);
    bundle.processed.trajectories.push_back(process_track(raw));
    bundle.raw.trajectories.push_back(std::move(raw));
  }
  for (int rec = 1; rec <= kBifRecordings; ++rec) {
    bundle.raw.provenance[rec] = "synthetic:bifurcation";
    bundle.processed.provenance[rec] = "synthetic:bifurcation";
  }
  return bundle;
}

ScenarioBundle make_stop_yield(std::uint64_t seed, double noise, int replicas)
{
  check_noise(noise);
  if (replicas < 1) throw std::invalid_argument("stop_yield replicas must be positive");
  std::mt19937_64 rng(seed);
  ScenarioBundle bundle;
  const int frames = raw_frames(kYieldSamples);

  const auto target_pos = [](double t) -> Vec2 {
    if (t < 6.0) return {-85.0 + kYieldSpeed * t, 0.0};
    if (t < 10.0) {
      const double u = t - 6.0;
      return {-25.0 + kYieldSpeed * u - 1.25 * u * u, 0.0};
    }
    if (t < 16.0) return {-5.0, 0.0};
    if (t < 20.0) {
      const double u = t - 16.0;
      return {-5.0 + 1.25 * u * u, 0.0};
    }
    return {15.0 + kYieldSpeed * (t - 20.0), 0.0};
  };
  const auto target_vel = [](double t) -> Vec2 {
    if (t < 6.0) return {kYieldSpeed, 0.0};
    if (t < 10.0) return {kYieldSpeed - 2.5 * (t - 6.0), 0.0};
    if (t < 16.0) return {0.0, 0.0};
    if (t < 20.0) return {2.5 * (t - 16.0), 0.0};
    return {kYieldSpeed, 0.0};
  };
  // The vehicle with priority crosses the target's lane at t = 15 s.
  const auto other_pos = [](double t) -> Vec2 { return {5.0, -150.0 + kYieldSpeed * t}; };
  const auto other_vel = [](double) -> Vec2 { return {0.0, kYieldSpeed}; };
  const auto lane_pos = [](double t) -> Vec2 { return {-85.0 + kYieldSpeed * t, kYieldLaneY}; };
  const auto lane_vel = [](double) -> Vec2 { return {kYieldSpeed, 0.0}; };

  for (int rec = 1; rec <= replicas; ++rec) {
    Trajectory raw_target = sample_track(rec, 1, Category::vehicle, 1, frames, target_pos,
                                         target_vel, noise, rng);
    Trajectory raw_lane =
      sample_track(rec, 2, Category::vehicle, 1, frames, lane_pos, lane_vel, noise, rng);
    Trajectory raw_other = sample_track(rec, 3, Category::vehicle, 1, frames, other_pos,
                                        other_vel, noise, rng);

    Trajectory target = process_track(raw_target);
    target.other_positions.reserve(kYieldSamples);
    for (int k = 0; k < kYieldSamples; ++k) {
      target.other_positions.push_back(other_pos(0.4 * k));
    }
    Trajectory lane = process_track(raw_lane);
    lane.other_positions.assign(kYieldSamples, std::nullopt);

    bundle.processed.trajectories.push_back(std::move(target));
    bundle.processed.trajectories.push_back(std::move(lane));
    bundle.raw.trajectories.push_back(std::move(raw_target));
    bundle.raw.trajectories.push_back(std::move(raw_lane));
    bundle.raw.trajectories.push_back(std::move(raw_other));
    bundle.raw.provenance[rec] = "synthetic:stop_yield";
    bundle.processed.provenance[rec] = "synthetic:stop_yield";
  }
  return bundle;
}

ScenarioBundle make_curved_road(std::uint64_t seed, double noise)
{
  check_noise(noise);
  std::mt19937_64 rng(seed);
  ScenarioBundle bundle;

  // Circle centers 100 m apart with radii at most 40 m keep every pair of
  // roads more than the 15 m cutoff away from each other.
  const Vec2 centers[kCurveRoads] = {{0.0, 0.0},   {100.0, 0.0},   {200.0, 0.0},
                                     {0.0, 100.0}, {100.0, 100.0}, {200.0, 100.0},
                                     {0.0, 200.0}, {100.0, 200.0}};
  const double radii[kCurveRoads] = {25.0, 31.0, 37.0, 28.0, 40.0, 34.0, 26.0, 38.0};

  std::uniform_int_distribution<int> road_dist(0, kCurveRoads - 1);
  std::uniform_real_distribution<double> speed_dist(6.0, 10.0);
  std::uniform_real_distribution<double> phase_dist(0.0, 2.0 * M_PI);
  std::uniform_int_distribution<int> length_dist(30, 40);

  for (int i = 0; i < kCurveTrajectories; ++i) {
    const int road = road_dist(rng);
    const double speed = speed_dist(rng);
    const double phase = phase_dist(rng);
    const int samples = length_dist(rng);
    const Vec2 center = centers[road];
    const double radius = radii[road];
    const double direction = road % 2 == 0 ? 1.0 : -1.0;
    const double rate = direction * speed / radius;
    const auto pos = [center, radius, phase, rate](double t) -> Vec2 {
      const double angle = phase + rate * t;
      return center + radius * Vec2(std::cos(angle), std::sin(angle));
    };
    const auto vel = [radius, phase, rate](double t) -> Vec2 {
      const double angle = phase + rate * t;
      return radius * rate * Vec2(-std::sin(angle), std::cos(angle));
    };
    Trajectory raw = sample_track(i % kCurveRecordings + 1, i + 1, Category::vehicle, 1,
                                  raw_frames(samples), pos, vel, noise, rng);
    bundle.processed.trajectories.push_back(process_track(raw));
    bundle.raw.trajectories.push_back(std::move(raw));
  }
  for (int rec = 1; rec <= kCurveRecordings; ++rec) {
    bundle.raw.provenance[rec] = "synthetic:curved_road";
    bundle.processed.provenance[rec] = "synthetic:curved_road";
  }
  return bundle;
}

ScenarioBundle make_constant_velocity(std::uint64_t seed, double noise)
{
  check_noise(noise);
  std::mt19937_64 rng(seed);
  ScenarioBundle bundle;
  std::uniform_real_distribution<double> coord_dist(-150.0, 150.0);
  std::uniform_real_distribution<double> heading_dist(0.0, 2.0 * M_PI);
  std::uniform_real_distribution<double> speed_dist(3.0, 12.0);

  for (int i = 0; i < kConstTrajectories; ++i) {
    const Vec2 start(coord_dist(rng), coord_dist(rng));
    const double heading = heading_dist(rng);
    const double speed = speed_dist(rng);
    const Vec2 velocity = speed * Vec2(std::cos(heading), std::sin(heading));
    const auto pos = [start, velocity](double t) -> Vec2 { return start + t * velocity; };
    const auto vel = [velocity](double) -> Vec2 { return velocity; };
    Trajectory raw = sample_track(i % kConstRecordings + 1, i + 1, Category::vehicle, 1,
                                  raw_frames(kConstSamples), pos, vel, noise, rng);
    bundle.processed.trajectories.push_back(process_track(raw));
    bundle.raw.trajectories.push_back(std::move(raw));
  }
  for (int rec = 1; rec <= kConstRecordings; ++rec) {
    bundle.raw.provenance[rec] = "synthetic:constant_velocity";
    bundle.processed.provenance[rec] = "synthetic:constant_velocity";
  }
  return bundle;
}

ScenarioBundle make_scenario(const std::string & name, std::uint64_t seed, double noise,
                             int replicas)
{
  if (name == "bifurcation") return make_bifurcation(seed, noise);
  if (name == "stop_yield") return make_stop_yield(seed, noise, replicas);
  if (name == "curved_road") return make_curved_road(seed, noise);
  if (name == "constant_velocity") return make_constant_velocity(seed, noise);
  throw std::invalid_argument("unknown scenario: " + name);
}

const std::vector<std::string> & scenario_names()
{
  static const std::vector<std::string> names = {"bifurcation", "stop_yield", "curved_road",
                                                 "constant_velocity"};
  return names;
}

}  // namespace roadpred
