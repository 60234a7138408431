// Copyright 2026 The zdlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef ZDLAB_REGION_HPP_
#define ZDLAB_REGION_HPP_

#include <optional>
#include <utility>
#include <vector>

#include "zdlab/game.hpp"

namespace zdlab {

// A point in the (pi_X, pi_Y) payoff plane.
struct Point2 {
  double x = 0.0;
  double y = 0.0;
  bool operator==(const Point2&) const = default;
};

// Counter-clockwise hull without repeated or collinear vertices. A single
// point or a two-point segment is returned for degenerate inputs.
std::vector<Point2> convex_hull(std::vector<Point2> points);

bool polygon_contains(const std::vector<Point2>& hull, Point2 pt,
                      double tol = 1e-9);

// Keeps the part of a convex polygon where a*x + b*y + c >= 0.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, double a,
                                   double b, double c);

// Intersection of the line alpha*x + beta*y + gamma = 0 with a convex
// polygon, or nullopt when they do not meet.
std::optional<std::pair<Point2, Point2>> clip_line(
    double alpha, double beta, double gamma, const std::vector<Point2>& poly);

struct PayoffRegion {
  std::vector<Point2> hull;         // all feasible average payoffs
  std::vector<Point2> nash_points;  // stage Nash payoffs, pure then mixed
  std::optional<Point2> folk_anchor;
  // Closure of hull ∩ {x > e_X, y > e_Y}; the open boundary is implied.
  std::vector<Point2> folk_region;
};

// Throws InvalidArgument if nash_point is not a stage Nash payoff pair.
PayoffRegion payoff_region(const StageGame& game,
                           std::optional<Point2> nash_point = std::nullopt);

}  // namespace zdlab

#endif  // ZDLAB_REGION_HPP_
