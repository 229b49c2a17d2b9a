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

#ifndef ROADPRED_BALL_TREE_HPP_
#define ROADPRED_BALL_TREE_HPP_

#include <cstddef>
#include <cstdint>
#include <vector>

#include "roadpred/types.hpp"

namespace roadpred
{

/// Exact fixed-radius neighbour search over 2D points.
///
/// Nodes are balls: the center is the centroid of the points they cover and
/// the radius is the distance to the farthest one. Interior nodes split their
/// points at the median of the coordinate with the largest spread, so the
/// tree stays balanced regardless of the input distribution.
class BallTree
{
public:
  static constexpr std::size_t kDefaultLeafCapacity = 32;

  BallTree() = default;

  /// Builds the tree; point order is preserved through returned indices.
  explicit BallTree(std::vector<Vec2> points, std::size_t leaf_capacity = kDefaultLeafCapacity);

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const std::vector<Vec2> & points() const { return points_; }

  /// Number of levels, counting the root as one. Zero for an empty tree.
  std::size_t depth() const;

  /// Indices of all points with distance(query, point) <= radius, in
  /// ascending order. A point exactly on the boundary is included.
  std::vector<std::size_t> query_radius(const Vec2 & query, double radius) const;

  /// Replaces the contents of `out` with the matches, reusing its capacity.
  void query_radius(const Vec2 & query, double radius, std::vector<std::size_t> & out) const;

private:
  struct Node
  {
    Vec2 center{0.0, 0.0};
    double radius = 0.0;
    std::uint32_t begin = 0;
    std::uint32_t end = 0;
    std::int32_t left = -1;
    std::int32_t right = -1;

    bool is_leaf() const { return left < 0; }
  };

  std::int32_t build(std::size_t begin, std::size_t end, std::size_t leaf_capacity);
  std::size_t depth(std::int32_t node) const;

  std::vector<Vec2> points_;
  std::vector<std::uint32_t> order_;
  std::vector<Node> nodes_;
  std::int32_t root_ = -1;
};

}  // namespace roadpred

#endif  // ROADPRED_BALL_TREE_HPP_
