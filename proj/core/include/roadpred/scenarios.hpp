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

#ifndef ROADPRED_SCENARIOS_HPP_
#define ROADPRED_SCENARIOS_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "roadpred/types.hpp"

namespace roadpred
{

/// A generated scenario in both forms the toolchain consumes: the raw
/// corpus mimics drone-recording output (native 25 Hz, velocities set,
/// orientations not yet derived) and feeds the preprocessing pipeline; the
/// processed corpus is the same motion already downsampled to 2.5 Hz with
/// orientations derived, plus situation annotations where the scenario
/// defines them.
struct ScenarioBundle
{
  Corpus raw;
  Corpus processed;
};

/// Straight road where half the vehicles brake to a stop at a fixed point
/// and half keep their speed; past the braking point the two populations'
/// futures diverge by a designed gap. Position noise (std in meters) makes
/// every stored state unique.
ScenarioBundle make_bifurcation(std::uint64_t seed, double noise);

/// Two-trajectory traffic situation: a target vehicle approaches a crossing
/// where another vehicle has priority, stops, waits for it to pass, then
/// drives on; a second vehicle on a lane beyond the cutoff radius drives at
/// constant speed with no other vehicle around. The target's situation
/// annotations carry the other vehicle's position at every sample; the
/// constant trajectory's annotations are all absent. replicas > 1 repeats
/// the pair in that many recordings (fresh noise each), enough data for
/// recording-level splitting and cross-validation.
ScenarioBundle make_stop_yield(std::uint64_t seed, double noise, int replicas = 1);

/// Several hundred trajectories on circular roads far apart from each
/// other; going straight is a poor long-horizon prediction everywhere, so
/// a learned weighted average must beat constant velocity at 4.8 s.
ScenarioBundle make_curved_road(std::uint64_t seed, double noise);

/// Straight constant-speed trajectories in assorted directions; with zero
/// noise the constant-velocity baseline is exact on them.
ScenarioBundle make_constant_velocity(std::uint64_t seed, double noise);

/// Dispatch by scenario name; throws std::invalid_argument for unknown
/// names. replicas only affects stop_yield.
ScenarioBundle make_scenario(
  const std::string & name, std::uint64_t seed, double noise, int replicas = 1);

const std::vector<std::string> & scenario_names();

/// 2.5 Hz sample indices of the stop-yield target's phase boundaries.
struct StopYieldLayout
{
  int decel_onset = 0;   // last sample at approach speed
  int rest_begin = 0;    // first sample at rest
  int rest_end = 0;      // last sample at rest
  int cruise_begin = 0;  // first sample back at full speed
  int last = 0;          // final sample index
  double approach_speed = 0.0;  // m/s
};

StopYieldLayout stop_yield_layout();

/// Designed H-step future gap between the stopping and passing populations
/// of the bifurcation scenario for queries at the braking point, in meters.
double bifurcation_branch_gap();

}  // namespace roadpred

#endif  // ROADPRED_SCENARIOS_HPP_
