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

#ifndef ROADPRED_PARAMS_IO_HPP_
#define ROADPRED_PARAMS_IO_HPP_

#include <filesystem>
#include <optional>

#include "roadpred/similarity.hpp"
#include "roadpred/types.hpp"

namespace roadpred
{

/// One stored parameter set: the kernel weights, optional interaction
/// weights, and optional tags saying which data slice it was fitted on.
struct ParamsFile
{
  SimilarityParams base;
  std::optional<double> d;
  std::optional<double> e;
  std::optional<Category> category;
  std::optional<int> location_id;
};

/// Key-value text, one `key value` pair per line, '#' comments. Keys:
/// a, b, c_orient, r, d, e, category, location.
void write_params(const ParamsFile & params, const std::filesystem::path & path);
ParamsFile read_params(const std::filesystem::path & path);

/// Kernel weights known to work well on the urban drone-recording corpus
/// this library was validated on, per category and location (1 or 2).
/// Throws std::invalid_argument for combinations without a reference fit.
SimilarityParams reference_params(Category category, int location_id);

}  // namespace roadpred

#endif  // ROADPRED_PARAMS_IO_HPP_
