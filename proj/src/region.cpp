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

#include "zdlab/region.hpp"

#include <algorithm>
#include <cmath>

#include "zdlab/errors.hpp"

namespace zdlab {
namespace {

double cross(Point2 o, Point2 a, Point2 b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() <= 2) return pts;

  // Andrew's monotone chain.
  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

bool polygon_contains(const std::vector<Point2>& hull, Point2 pt, double tol) {
  if (hull.empty()) return false;
  if (hull.size() == 1) {
    return std::hypot(pt.x - hull[0].x, pt.y - hull[0].y) <= tol;
  }
  if (hull.size() == 2) {
    const Point2 a = hull[0], b = hull[1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (std::abs(cross(a, b, pt)) / len > tol) return false;
    const double t =
        ((pt.x - a.x) * (b.x - a.x) + (pt.y - a.y) * (b.y - a.y)) / (len * len);
    return t >= -tol / len && t <= 1.0 + tol / len;
  }
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point2 a = hull[i], b = hull[(i + 1) % hull.size()];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (cross(a, b, pt) / len < -tol) return false;
  }
  return true;
}

std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, double a,
                                   double b, double c) {
  auto side = [&](Point2 p) { return a * p.x + b * p.y + c; };
  std::vector<Point2> out;
  const std::size_t n = poly.size();
  if (n == 1) {
    if (side(poly[0]) >= 0) out.push_back(poly[0]);
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 cur = poly[i], nxt = poly[(i + 1) % n];
    const double sc = side(cur), sn = side(nxt);
    if (sc >= 0) out.push_back(cur);
    if ((sc >= 0) != (sn >= 0) && n > 1) {
      const double t = sc / (sc - sn);
      out.push_back({cur.x + t * (nxt.x - cur.x), cur.y + t * (nxt.y - cur.y)});
    }
    if (n == 2) break;  // a segment has one edge, not two
  }
  if (n == 2 && side(poly[1]) >= 0) out.push_back(poly[1]);
  return convex_hull(out);
}

std::optional<std::pair<Point2, Point2>> clip_line(
    double alpha, double beta, double gamma, const std::vector<Point2>& poly) {
  if (poly.empty() || (alpha == 0.0 && beta == 0.0)) return std::nullopt;
  constexpr double kTol = 1e-12;
  std::vector<Point2> hits;
  const std::size_t n = poly.size();
  auto f = [&](Point2 p) { return alpha * p.x + beta * p.y + gamma; };
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 a = poly[i], b = poly[(i + 1) % n];
    const double fa = f(a), fb = f(b);
    if (std::abs(fa) <= kTol) hits.push_back(a);
    if ((fa < -kTol && fb > kTol) || (fa > kTol && fb < -kTol)) {
      const double t = fa / (fa - fb);
      hits.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
    }
    if (n == 1) break;
  }
  if (hits.empty()) return std::nullopt;
  // Order along the line direction (beta, -alpha).
  auto along = [&](Point2 p) { return beta * p.x - alpha * p.y; };
  const auto [lo, hi] = std::minmax_element(
      hits.begin(), hits.end(),
      [&](Point2 p, Point2 q) { return along(p) < along(q); });
  return std::make_pair(*lo, *hi);
}

PayoffRegion payoff_region(const StageGame& game,
                           std::optional<Point2> nash_point) {
  PayoffRegion region;
  const auto v = game.payoff_vectors();
  std::vector<Point2> pts;
  for (int k = 0; k < 4; ++k) pts.push_back({v.sx[k], v.sy[k]});
  region.hull = convex_hull(pts);

  const auto nash = stage_nash(game);
  for (const auto& [ax, ay] : nash.pure) {
    region.nash_points.push_back(
        {game.payoff(Player::kX, ax, ay), game.payoff(Player::kY, ax, ay)});
  }
  if (nash.mixed) {
    region.nash_points.push_back({nash.mixed->payoff_x, nash.mixed->payoff_y});
  }

  if (nash_point) {
    const bool known = std::any_of(
        region.nash_points.begin(), region.nash_points.end(), [&](Point2 p) {
          return std::abs(p.x - nash_point->x) < 1e-9 &&
                 std::abs(p.y - nash_point->y) < 1e-9;
        });
    if (!known) {
      throw InvalidArgument("payoff pair is not a stage Nash equilibrium payoff");
    }
    region.folk_anchor = nash_point;
    auto clipped = clip_halfplane(region.hull, 1.0, 0.0, -nash_point->x);
    region.folk_region = clip_halfplane(clipped, 0.0, 1.0, -nash_point->y);
  }
  return region;
}

}  // namespace zdlab
