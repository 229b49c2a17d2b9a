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

#include "roadpred/ball_tree.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace roadpred
{

namespace
{
// Guards boundary hits against the rounding of the center/radius arithmetic.
constexpr double kPruneSlack = 1e-9;
}  // namespace

BallTree::BallTree(std::vector<Vec2> points, std::size_t leaf_capacity)
: points_(std::move(points))
{
  if (leaf_capacity == 0) {
    throw std::invalid_argument("ball tree leaf capacity must be positive");
  }
  if (points_.empty()) {
    throw std::invalid_argument("ball tree needs at least one point");
  }
  order_.resize(points_.size());
  std::iota(order_.begin(), order_.end(), 0u);
  nodes_.reserve(2 * points_.size() / leaf_capacity + 2);
  root_ = build(0, points_.size(), leaf_capacity);
}

std::int32_t BallTree::build(std::size_t begin, std::size_t end, std::size_t leaf_capacity)
{
  Node node;
  node.begin = static_cast<std::uint32_t>(begin);
  node.end = static_cast<std::uint32_t>(end);

  Vec2 sum{0.0, 0.0};
  for (std::size_t i = begin; i < end; ++i) {
    sum += points_[order_[i]];
  }
  node.center = sum / static_cast<double>(end - begin);

  double max_sq = 0.0;
  for (std::size_t i = begin; i < end; ++i) {
    max_sq = std::max(max_sq, (points_[order_[i]] - node.center).squaredNorm());
  }
  node.radius = std::sqrt(max_sq);

  const auto index = static_cast<std::int32_t>(nodes_.size());
  nodes_.push_back(node);

  if (end - begin > leaf_capacity) {
    Vec2 lo = points_[order_[begin]];
    Vec2 hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      lo = lo.cwiseMin(points_[order_[i]]);
      hi = hi.cwiseMax(points_[order_[i]]);
    }
    const Vec2 spread = hi - lo;
    const int dim = spread.x() >= spread.y() ? 0 : 1;

    const std::size_t mid = begin + (end - begin) / 2;
    std::nth_element(
      order_.begin() + static_cast<std::ptrdiff_t>(begin),
      order_.begin() + static_cast<std::ptrdiff_t>(mid),
      order_.begin() + static_cast<std::ptrdiff_t>(end),
      [&](std::uint32_t a, std::uint32_t b) { return points_[a][dim] < points_[b][dim]; });

    const std::int32_t left = build(begin, mid, leaf_capacity);
    const std::int32_t right = build(mid, end, leaf_capacity);
    nodes_[static_cast<std::size_t>(index)].left = left;
    nodes_[static_cast<std::size_t>(index)].right = right;
  }
  return index;
}

std::size_t BallTree::depth() const { return root_ < 0 ? 0 : depth(root_); }

std::size_t BallTree::depth(std::int32_t node) const
{
  const Node & n = nodes_[static_cast<std::size_t>(node)];
  if (n.is_leaf()) {
    return 1;
  }
  return 1 + std::max(depth(n.left), depth(n.right));
}

std::vector<std::size_t> BallTree::query_radius(const Vec2 & query, double radius) const
{
  std::vector<std::size_t> out;
  query_radius(query, radius, out);
  return out;
}

void BallTree::query_radius(
  const Vec2 & query, double radius, std::vector<std::size_t> & out) const
{
  if (radius <= 0.0) {
    throw std::invalid_argument("query radius must be positive");
  }
  out.clear();
  if (root_ < 0) {
    return;
  }

  const double r_sq = radius * radius;
  std::vector<std::int32_t> stack;
  stack.push_back(root_);
  while (!stack.empty()) {
    const Node & node = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();

    const double center_dist = (query - node.center).norm();
    if (center_dist > radius + node.radius + kPruneSlack) {
      continue;
    }
    if (node.is_leaf()) {
      for (std::uint32_t i = node.begin; i < node.end; ++i) {
        const std::uint32_t point = order_[i];
        if ((query - points_[point]).squaredNorm() <= r_sq) {
          out.push_back(point);
        }
      }
    } else {
      stack.push_back(node.left);
      stack.push_back(node.right);
    }
  }
  std::sort(out.begin(), out.end());
}

}  // namespace roadpred
