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

#include "roadpred/types.hpp"

namespace roadpred
{

std::string_view to_string(Category category)
{
  switch (category) {
    case Category::vehicle:
      return "vehicle";
    case Category::bicycle:
      return "bicycle";
    case Category::pedestrian:
      return "pedestrian";
    case Category::truck_bus:
      return "truck_bus";
  }
  return "unknown";
}

std::optional<Category> parse_category(std::string_view label)
{
  if (label == "vehicle" || label == "car") {
    return Category::vehicle;
  }
  if (label == "bicycle") {
    return Category::bicycle;
  }
  if (label == "pedestrian") {
    return Category::pedestrian;
  }
  if (label == "truck_bus" || label == "truck/bus" || label == "truck" || label == "bus") {
    return Category::truck_bus;
  }
  return std::nullopt;
}

}  // namespace roadpred
