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

#include "roadpred/similarity.hpp"

#include <cmath>
#include <stdexcept>

namespace roadpred
{

namespace
{
constexpr double kUnitNormTolerance = 1e-6;

void require_unit(const Vec2 & o)
{
  if (std::abs(o.norm() - 1.0) > kUnitNormTolerance) {
    throw std::invalid_argument("orientation vector is not unit length");
  }
}
}  // namespace

double orientation_angle(const Vec2 & o1, const Vec2 & o2)
{
  require_unit(o1);
  require_unit(o2);
  const double cross = o1.x() * o2.y() - o1.y() * o2.x();
  return std::atan2(std::abs(cross), o1.dot(o2));
}

double similarity(const SimilarityParams & params, const RoadUserState & R1,
  const RoadUserState & R2)
{
  const double dp2 = (R1.position - R2.position).squaredNorm();
  if (dp2 > params.r * params.r) {
    return 0.0;
  }
  const double ds = R1.speed - R2.speed;
  const double ds2 = ds * ds;
  const double theta = orientation_angle(R1.orientation, R2.orientation);
  const double theta2 = theta * theta;
  return std::exp(-(params.a * dp2 + params.b * ds2 + params.c_orient * theta2));
}

double interaction_similarity(
  const InteractionParams & params, const TrafficSituationState & T1,
  const TrafficSituationState & T2)
{
  if (T1.other_position.has_value() != T2.other_position.has_value()) {
    return 0.0;
  }
  const double base = similarity(params.base, T1.target, T2.target);
  if (!T1.other_position.has_value()) {
    return base;
  }
  const double gap2 = (*T1.other_position - *T2.other_position).squaredNorm();
  return std::exp(-params.d * gap2) * base;
}

}  // namespace roadpred
