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

#ifndef ROADPRED_BRAKING_HPP_
#define ROADPRED_BRAKING_HPP_

#include <stdexcept>

namespace roadpred
{

/// An emergency stop from speed v0 where friction is the only decelerating
/// force. Mass cancels out of the force balance, so it is not a parameter.
struct BrakingQuery
{
  double v0 = 0.0;    // initial speed, m/s
  double mu = 0.0;    // friction coefficient
  double g = 9.81;    // gravitational acceleration, m/s^2
};

/// Seconds needed to brake to a standstill: v0 / (mu * g). A prediction
/// horizon at least this long is required for the prediction to cover the
/// stopping maneuver.
inline double min_horizon(const BrakingQuery & q)
{
  if (!(q.mu > 0.0)) {
    throw std::invalid_argument("friction coefficient must be positive");
  }
  if (!(q.g > 0.0)) {
    throw std::invalid_argument("gravitational acceleration must be positive");
  }
  if (q.v0 < 0.0) {
    throw std::invalid_argument("initial speed must be non-negative");
  }
  return q.v0 / (q.mu * q.g);
}

}  // namespace roadpred

#endif  // ROADPRED_BRAKING_HPP_
