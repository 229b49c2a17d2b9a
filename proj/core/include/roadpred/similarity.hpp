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

#ifndef ROADPRED_SIMILARITY_HPP_
#define ROADPRED_SIMILARITY_HPP_

#include <optional>

#include "roadpred/types.hpp"

namespace roadpred
{

/// Gaussian similarity weights. `a` scales the squared position gap (1/m^2),
/// `b` the squared speed gap (s^2/m^2), `c_orient` the squared orientation
/// angle (1/rad^2). States farther apart than `r` metres have similarity
/// zero, which is what makes fixed-radius candidate search exact. Zero
/// weights are allowed; they flatten the kernel toward uniform averaging.
struct SimilarityParams
{
  double a = 0.0;
  double b = 0.0;
  double c_orient = 0.0;
  double r = 15.0;
};

/// A road-user state together with the position of another road user it is
/// interacting with, when one is present in the scene.
struct TrafficSituationState
{
  RoadUserState target;
  std::optional<Vec2> other_position;
};

/// Similarity weights for traffic situations. `d` scales the squared gap
/// between the partner positions (1/m^2); `e` is reserved for a partner
/// speed term and is unused by the current model.
struct InteractionParams
{
  SimilarityParams base;
  double d = 0.0;
  double e = 0.0;
};

/// Angle in [0, pi] between two unit orientation vectors, via
/// atan2(|cross|, dot). Throws std::invalid_argument if either input's norm
/// is off unit by more than 1e-6.
double orientation_angle(const Vec2 & o1, const Vec2 & o2);

/// Similarity between two road-user states:
/// exp(-(a ||dp||^2 + b ds^2 + c_orient theta^2)), or exactly 0 when the
/// positions are more than `r` apart. Exactly 1 for identical states.
double similarity(const SimilarityParams & params, const RoadUserState & R1,
  const RoadUserState & R2);

/// Similarity between traffic situations. When both situations have an
/// interaction partner, the state similarity is scaled by
/// exp(-d ||dp_other||^2); when neither has one, the state similarity
/// stands; when exactly one does, the situations are incomparable and the
/// result is 0.
double interaction_similarity(
  const InteractionParams & params, const TrafficSituationState & T1,
  const TrafficSituationState & T2);

}  // namespace roadpred

#endif  // ROADPRED_SIMILARITY_HPP_
