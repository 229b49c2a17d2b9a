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

#ifndef ROADPRED_SPLIT_HPP_
#define ROADPRED_SPLIT_HPP_

#include <set>

#include "roadpred/types.hpp"

namespace roadpred
{

struct SplitResult
{
  Corpus train;
  Corpus test;

  /// Sum over (category, location) cells of the squared deviation of the
  /// achieved training fraction from the target.
  double deviation = 0.0;

  std::set<int> train_recordings;
  std::set<int> test_recordings;
};

/// Assigns whole recordings to train or test so that, per location, the
/// trajectory-count training fraction of every (category, location) cell is
/// as close as possible to target_fraction, by exhaustive enumeration of
/// the recording subsets of each location. Splitting at recording
/// granularity keeps road users that were observed together on the same
/// side. Ties go to the lexicographically smallest sorted train
/// recording-id set.
///
/// Throws std::invalid_argument when target_fraction is outside (0, 1),
/// when a location has a single recording (no subset leaves both sides
/// non-empty), or when a location has too many recordings to enumerate.
SplitResult split_by_recordings(const Corpus & corpus, double target_fraction);

}  // namespace roadpred

#endif  // ROADPRED_SPLIT_HPP_
