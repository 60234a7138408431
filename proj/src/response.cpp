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

#include "zdlab/response.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <random>

#include "zdlab/errors.hpp"
#include "zdlab/markov.hpp"

namespace zdlab {
namespace {

constexpr double kTie = 1e-12;

class Objective {
 public:
  Objective(const StrategyVector& p, const StageGame& game)
      : p_(p), game_(game) {}

  double operator()(const Vec4& q) {
    ++evaluations;
    return expected_payoffs(p_, StrategyVector(q, 1.0), game_).pi_y;
  }

  long evaluations = 0;

 private:
  const StrategyVector& p_;
  const StageGame& game_;
};

// pi_Y is linear-fractional in each q_k, so moving a coordinate to the
// better of its two endpoints never loses. Ties go to up (1).
Vec4 snap_to_corner(const Vec4& start, Objective& f) {
  Vec4 q = start;
  for (int k = 0; k < 4; ++k) {
    Vec4 lo = q, hi = q;
    lo[k] = 0.0;
    hi[k] = 1.0;
    q[k] = f(hi) >= f(lo) - kTie ? 1.0 : 0.0;
  }
  return q;
}

double pi_y_det(const StrategyVector& p, const Vec4& q, const Vec4& sy) {
  const StrategyVector qs(q);
  const double den = determinant_d(p, qs, {1, 1, 1, 1});
  if (std::abs(den) < kDegenerateDenominator) {
    throw DomainError("degenerate chain on the finite-difference stencil");
  }
  return determinant_d(p, qs, sy) / den;
}

Vec4 fd_gradient(const StrategyVector& p, const Vec4& q, const Vec4& sy,
                 double h) {
  Vec4 g{};
  for (int k = 0; k < 4; ++k) {
    Vec4 a = q, b = q;
    double width;
    if (q[k] - h >= 0.0 && q[k] + h <= 1.0) {
      a[k] -= h;
      b[k] += h;
      width = 2 * h;
    } else if (q[k] + h <= 1.0) {
      b[k] += h;
      width = h;
    } else {
      a[k] -= h;
      width = h;
    }
    g[k] = (pi_y_det(p, b, sy) - pi_y_det(p, a, sy)) / width;
  }
  return g;
}

Vec4 corner(int bits) {
  // bit 3 - k set means q_k = 1; bits = 15 is AllU.
  Vec4 q{};
  for (int k = 0; k < 4; ++k) q[k] = (bits >> (3 - k)) & 1 ? 1.0 : 0.0;
  return q;
}

}  // namespace

BestResponseResult best_response(const StrategyVector& p, const StageGame& game,
                                 const BestResponseOptions& opts) {
  Objective f(p, game);
  BestResponseResult out;
  out.method = opts.method;
  double best = -std::numeric_limits<double>::infinity();
  double worst = std::numeric_limits<double>::infinity();
  Vec4 best_q{1, 1, 1, 1};
  auto consider = [&](const Vec4& q, double v) {
    worst = std::min(worst, v);
    if (v > best + kTie) {
      best = v;
      best_q = q;
    }
    if (opts.record_trajectory) out.trajectory.emplace_back(q, v);
  };

  // Corners first, from AllU down, so exact ties keep the up-most corner.
  for (int bits = 15; bits >= 0; --bits) consider(corner(bits), f(corner(bits)));

  if (opts.method == BRMethod::kGrid) {
    const int n = std::max(2, opts.grid_points);
    const double step = 1.0 / (n - 1);
    for (int i = n - 1; i >= 0; --i)
      for (int j = n - 1; j >= 0; --j)
        for (int k = n - 1; k >= 0; --k)
          for (int l = n - 1; l >= 0; --l) {
            const Vec4 q{i * step, j * step, k * step, l * step};
            consider(q, f(q));
          }
  } else {
    const Vec4 sy = game.payoff_vectors().sy;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int r = 0; r < opts.restarts; ++r) {
      Vec4 q = r == 0 ? Vec4{0.5, 0.5, 0.5, 0.5}
                      : Vec4{u(rng), u(rng), u(rng), u(rng)};
      double v = f(q);
      double step = opts.step;
      for (int it = 0; it < opts.max_steps && step > 1e-10; ++it) {
        Vec4 g;
        try {
          g = fd_gradient(p, q, sy, 1e-6);
        } catch (const DomainError&) {
          break;
        }
        double norm = 0.0;
        for (double gi : g) norm = std::max(norm, std::abs(gi));
        if (norm < 1e-14) break;
        Vec4 next;
        for (int k = 0; k < 4; ++k) {
          next[k] = std::clamp(q[k] + step * g[k] / norm, 0.0, 1.0);
        }
        const double nv = f(next);
        if (nv > v) {
          q = next;
          v = nv;
          if (opts.record_trajectory) out.trajectory.emplace_back(q, v);
        } else {
          step /= 2;
        }
      }
      consider(q, v);
    }
  }

  const Vec4 snapped = snap_to_corner(best_q, f);
  const double sv = f(snapped);
  if (sv >= best - 1e-9) {
    best_q = snapped;
    best = std::max(best, sv);
  }
  out.q_star = StrategyVector(best_q, 1.0);
  out.pi_y = f(best_q);
  out.spread = best - worst;
  out.indifferent = out.spread < 1e-9;
  out.evaluations = f.evaluations;
  return out;
}

Gradient payoff_gradient(const StrategyVector& p, const StrategyVector& q,
                         const StageGame& game) {
  const Vec4 sy = game.payoff_vectors().sy;
  Gradient g;
  g.value = fd_gradient(p, q.p(), sy, 1e-6);
  g.coarse = fd_gradient(p, q.p(), sy, 1e-4);
  for (int k = 0; k < 4; ++k) {
    g.max_gap = std::max(g.max_gap, std::abs(g.value[k] - g.coarse[k]) /
                                        std::max(1.0, std::abs(g.value[k])));
  }
  return g;
}

double discounted_payoff(const StrategyVector& p, const StrategyVector& q,
                         const StageGame& game, double delta, Player player,
                         std::optional<Vec4> mu1) {
  if (delta == 1.0) {
    throw InvalidArgument(
        "delta = 1 is the undiscounted limit; use expected_payoffs");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw InvalidArgument("discount rate must lie in [0, 1)");
  }
  const MarkovChain chain = make_chain(p, q, mu1);
  const auto s = game.payoff_vectors();
  const Vec4& sv = player == Player::kX ? s.sx : s.sy;
  const Eigen::Vector4d rhs(sv[0], sv[1], sv[2], sv[3]);
  const Mat4 a = Mat4::Identity() - delta * chain.m;
  const Eigen::Vector4d x = a.partialPivLu().solve(rhs);
  double v = 0.0;
  for (int k = 0; k < 4; ++k) v += chain.mu1[k] * x(k);
  return (1.0 - delta) * v;
}

std::pair<StrategyVector, double> discounted_best_corner(const StrategyVector& p,
                                                         const StageGame& game,
                                                         double delta) {
  std::optional<StrategyVector> best;
  double best_v = -std::numeric_limits<double>::infinity();
  for (double first : {1.0, 0.0}) {
    for (int bits = 15; bits >= 0; --bits) {
      StrategyVector q(corner(bits), first);
      const double v = discounted_payoff(p, q, game, delta, Player::kY);
      if (v > best_v + kTie) {
        best_v = v;
        best = q;
      }
    }
  }
  return {*best, best_v};
}

std::optional<double> discount_threshold(const StrategyVector& p,
                                         const StageGame& game, double tol) {
  const StrategyVector allu = StrategyVector::all_up();
  auto allu_best = [&](double delta) {
    const double v = discounted_payoff(p, allu, game, delta, Player::kY);
    return v >= discounted_best_corner(p, game, delta).second - 1e-12;
  };
  double lo = 0.0, hi = 1.0 - 1e-9;
  if (!allu_best(hi)) return std::nullopt;
  if (allu_best(lo)) return 0.0;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    (allu_best(mid) ? hi : lo) = mid;
  }
  return hi;
}

RetaliationResult retaliation_feasible(const StageGame& game, double delta) {
  RetaliationResult out;
  const auto& prm = game.parameters();
  if (game.kind() == GameKind::kSymmetric && std::abs(delta - prm[3]) < kTie) {
    out.closed_form = (prm[2] + prm[1]) < 2 * prm[3];
  } else if (game.kind() == GameKind::kBattleOfSexes &&
             std::abs(delta - prm[1]) < kTie) {
    out.closed_form = (prm[0] + prm[3]) < 2 * prm[1];
  }

  const auto range = extortion_ranges(game, delta);
  if (!range.feasible) return out;
  out.chi = std::isinf(range.upper) ? std::max(10.0, range.lower)
                                    : 0.5 * (range.lower + range.upper);
  StrategyVector p;
  try {
    p = synth_extortion(game, {delta, out.chi, std::nullopt});
  } catch (const InfeasibleError&) {
    return out;
  }
  out.extortioner = p;

  // Minimum of pi_Y sits at a corner for the same reason the maximum does.
  double best = std::numeric_limits<double>::infinity();
  for (int bits = 0; bits < 16; ++bits) {
    const StrategyVector q(corner(bits));
    const auto e = expected_payoffs(p, q, game);
    if (e.pi_y < best - kTie) {
      best = e.pi_y;
      out.witness = q;
      out.witness_pi_x = e.pi_x;
      out.witness_pi_y = e.pi_y;
    }
  }
  out.feasible = best < delta - 1e-9;
  if (!out.feasible) out.witness.reset();
  return out;
}

DualOutcome dual_zd_outcome(const ExtortionSpec& spec_x,
                            const ExtortionSpec& spec_y, const StageGame& game) {
  DualOutcome out;
  out.p = synth_extortion(game, spec_x, Player::kX);
  out.q = synth_extortion(game, spec_y, Player::kY);
  const auto e = expected_payoffs(out.p, out.q, game);
  out.pi_x = e.pi_x;
  out.pi_y = e.pi_y;
  out.residual_x = std::abs((e.pi_x - spec_x.delta) -
                            spec_x.chi * (e.pi_y - spec_x.delta));
  out.residual_y = std::abs((e.pi_y - spec_y.delta) -
                            spec_y.chi * (e.pi_x - spec_y.delta));
  out.consistent = out.residual_x < 1e-9 && out.residual_y < 1e-9;
  return out;
}

}  // namespace zdlab
