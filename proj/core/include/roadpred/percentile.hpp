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

#ifndef ROADPRED_PERCENTILE_HPP_
#define ROADPRED_PERCENTILE_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace roadpred
{

/// Percentile with linear interpolation between order statistics.
///
/// The rank of percentile p in a sorted sample of size n is p / 100 * (n - 1);
/// fractional ranks interpolate between the two neighbouring values. Sorts a
/// copy of the input. Throws std::invalid_argument on an empty sample or a
/// percentile outside [0, 100].
inline double percentile(std::vector<double> values, double p)
{
  if (values.empty()) {
    throw std::invalid_argument("percentile of an empty sample");
  }
  if (!(p >= 0.0 && p <= 100.0)) {
    throw std::invalid_argument("percentile must lie in [0, 100]");
  }
  std::sort(values.begin(), values.end());
  const double rank = p / 100.0 * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(rank));
  const auto hi = static_cast<std::size_t>(std::ceil(rank));
  const double frac = rank - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

}  // namespace roadpred

#endif  // ROADPRED_PERCENTILE_HPP_
