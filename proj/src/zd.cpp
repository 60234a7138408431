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

#include "zdlab/zd.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "zdlab/errors.hpp"

namespace zdlab {
namespace {

constexpr Vec4 kBase = {1.0, 1.0, 0.0, 0.0};
constexpr double kInf = std::numeric_limits<double>::infinity();

// Payoff vectors in the owner's own outcome ordering, with symbols for
// error messages.
struct Frame {
  Vec4 own;
  Vec4 opp;
  std::array<std::string, 4> own_sym;
  std::array<std::string, 4> opp_sym;
};

Vec4 swapped(const Vec4& v) { return {v[0], v[2], v[1], v[3]}; }

std::string num(double v) {
  std::ostringstream os;
  os.precision(10);
  os << v;
  return os.str();
}

Frame frame_for(const StageGame& game, Player side) {
  const auto s = game.payoff_vectors();
  Frame f;
  if (side == Player::kX) {
    f.own = s.sx;
    f.opp = s.sy;
  } else {
    f.own = swapped(s.sy);
    f.opp = swapped(s.sx);
  }
  switch (game.kind()) {
    case GameKind::kSymmetric:
      f.own_sym = {"R", "S", "T", "P"};
      f.opp_sym = {"R", "T", "S", "P"};
      break;
    case GameKind::kBattleOfSexes:
      if (side == Player::kX) {
        f.own_sym = {"F", "C", "L", "D"};
        f.opp_sym = {"D", "C", "L", "F"};
      } else {
        f.own_sym = {"D", "L", "C", "F"};
        f.opp_sym = {"F", "L", "C", "D"};
      }
      break;
    case GameKind::kRaw:
      for (int k = 0; k < 4; ++k) {
        f.own_sym[k] = num(f.own[k]);
        f.opp_sym[k] = num(f.opp[k]);
      }
      break;
  }
  return f;
}

// Own-frame coefficients (on own payoff, on opponent payoff).
std::pair<double, double> to_own(const ZDLinear& z, Player side) {
  return side == Player::kX ? std::make_pair(z.alpha, z.beta)
                            : std::make_pair(z.beta, z.alpha);
}

ZDLinear to_global(double own, double opp, double gamma, Player side) {
  return side == Player::kX ? ZDLinear{own, opp, gamma}
                            : ZDLinear{opp, own, gamma};
}

// Range of t such that base + t*dir stays in [0,1]^4.
std::pair<double, double> scale_interval(const Vec4& dir) {
  double lo = -kInf, hi = kInf;
  for (int k = 0; k < 4; ++k) {
    const double d = dir[k];
    if (d == 0.0) continue;
    const double t0 = (0.0 - kBase[k]) / d;
    const double t1 = (1.0 - kBase[k]) / d;
    lo = std::max(lo, std::min(t0, t1));
    hi = std::min(hi, std::max(t0, t1));
  }
  return {lo, hi};
}

FeasibleRange scale_range(const Vec4& dir) {
  const auto [lo, hi] = scale_interval(dir);
  FeasibleRange r;
  r.lower = lo;
  r.upper = hi;
  r.feasible = lo < -kProbabilityTol || hi > kProbabilityTol;
  r.scale_sign = hi >= -lo ? 1 : -1;
  return r;
}

StrategyVector build(const Vec4& dir, double scale, double first_move = 0.5) {
  Vec4 p{};
  std::vector<std::string> bad;
  for (int k = 0; k < 4; ++k) {
    double v = kBase[k] + scale * dir[k];
    if (std::abs(v) < kProbabilityTol) v = 0.0;
    if (std::abs(v - 1.0) < kProbabilityTol) v = 1.0;
    if (!(v >= 0.0 && v <= 1.0)) {
      bad.push_back("p" + std::to_string(k + 1) + " = " + num(v) +
                    " outside [0,1]");
    }
    p[k] = v;
  }
  if (!bad.empty()) throw InfeasibleError("strategy leaves [0,1]^4", bad);
  return StrategyVector(p, first_move);
}

Vec4 extortion_dir(const Frame& f, double delta, double chi) {
  Vec4 d{};
  for (int k = 0; k < 4; ++k) {
    d[k] = (f.own[k] - delta) - chi * (f.opp[k] - delta);
  }
  return d;
}

bool all_zero(const Vec4& v) {
  return std::all_of(v.begin(), v.end(),
                     [](double x) { return std::abs(x) < kProbabilityTol; });
}

// Required sign of scale*dir_k: nonpositive for the two base-1 components,
// nonnegative for the two base-0 ones.
constexpr std::array<double, 4> kSide = {-1.0, -1.0, 1.0, 1.0};

// chi interval where sign*kSide[k]*(u_k - chi v_k) >= 0 for all k, chi > 0.
FeasibleRange chi_interval(const Frame& f, double delta, int sign) {
  FeasibleRange r;
  r.lower = 0.0;
  r.upper = kInf;
  r.scale_sign = sign;
  bool ok = true;
  for (int k = 0; k < 4; ++k) {
    const double a = sign * kSide[k] * (f.own[k] - delta);
    const double b = sign * kSide[k] * (f.opp[k] - delta);
    if (b > 0.0) {
      r.upper = std::min(r.upper, a / b);
    } else if (b < 0.0) {
      r.lower = std::max(r.lower, a / b);
    } else if (a < -kProbabilityTol) {
      ok = false;
    }
  }
  r.feasible = ok && r.lower <= r.upper * (1.0 + 1e-12) + 1e-12 &&
               r.upper > 0.0;
  return r;
}

}  // namespace

StrategyVector zd_from_linear(const StageGame& game, const ZDLinear& z,
                              Player side) {
  const Frame f = frame_for(game, side);
  const auto [a, b] = to_own(z, side);
  Vec4 dir{};
  for (int k = 0; k < 4; ++k) dir[k] = a * f.own[k] + b * f.opp[k] + z.gamma;
  return build(dir, 1.0);
}

ZDLinear extortion_linear(const ExtortionSpec& spec, double phi, Player side) {
  return to_global(phi, -phi * spec.chi, phi * spec.delta * (spec.chi - 1.0),
                   side);
}

ZDLinear mischief_linear(const MischiefSpec& spec, double beta, Player side) {
  return to_global(0.0, beta, -beta * spec.target, side);
}

FeasibleRange mischief_range(const StageGame& game, Player side) {
  const Frame f = frame_for(game, side);
  FeasibleRange neg;  // beta < 0
  neg.lower = std::max(f.opp[2], f.opp[3]);
  neg.upper = std::min(f.opp[0], f.opp[1]);
  neg.feasible = neg.lower <= neg.upper;
  neg.scale_sign = -1;
  if (neg.feasible) return neg;
  FeasibleRange pos;
  pos.lower = std::max(f.opp[0], f.opp[1]);
  pos.upper = std::min(f.opp[2], f.opp[3]);
  pos.feasible = pos.lower <= pos.upper;
  pos.scale_sign = 1;
  return pos.feasible ? pos : neg;
}

FeasibleRange mischief_beta_range(const StageGame& game, double target,
                                  Player side) {
  const Frame f = frame_for(game, side);
  Vec4 dir{};
  for (int k = 0; k < 4; ++k) dir[k] = f.opp[k] - target;
  return scale_range(dir);
}

StrategyVector synth_mischief(const StageGame& game, const MischiefSpec& spec,
                              Player side) {
  const auto range = mischief_range(game, side);
  if (!range.feasible) {
    throw InfeasibleError("no feasible values for a mischief strategy in this game",
                          {"no feasible values: the opponent's payoff cannot be pinned"});
  }
  if (spec.target < range.lower - kProbabilityTol ||
      spec.target > range.upper + kProbabilityTol) {
    throw InfeasibleError("mischief target outside feasible range",
                          {"target " + num(spec.target) + " outside [" +
                           num(range.lower) + ", " + num(range.upper) + "]"});
  }
  const Frame f = frame_for(game, side);
  Vec4 dir{};
  for (int k = 0; k < 4; ++k) dir[k] = f.opp[k] - spec.target;
  if (all_zero(dir)) {
    throw InfeasibleError("mischief strategy degenerates to (1,1,0,0)");
  }
  const auto beta_range = scale_range(dir);
  const double beta = spec.beta.value_or(default_scale(beta_range));
  if (beta == 0.0 || beta < beta_range.lower - kProbabilityTol ||
      beta > beta_range.upper + kProbabilityTol) {
    throw InfeasibleError("mischief beta outside feasible interval",
                          {"beta = " + num(beta) + " outside [" +
                           num(beta_range.lower) + ", " + num(beta_range.upper) +
                           "] (and must be nonzero)"});
  }
  return build(dir, beta);
}

FeasibleRange extortion_ranges(const StageGame& game, double delta,
                               Player side) {
  const Frame f = frame_for(game, side);
  const auto pos = chi_interval(f, delta, 1);
  const auto neg = chi_interval(f, delta, -1);
  if (pos.feasible && neg.feasible) {
    return (neg.upper - neg.lower > pos.upper - pos.lower) ? neg : pos;
  }
  if (neg.feasible) return neg;
  return pos;
}

FeasibleRange feasible_phi(const StageGame& game, double delta, double chi,
                           Player side) {
  const Frame f = frame_for(game, side);
  const Vec4 dir = extortion_dir(f, delta, chi);
  if (all_zero(dir)) {
    FeasibleRange r;
    r.feasible = false;
    return r;
  }
  return scale_range(dir);
}

double default_scale(const FeasibleRange& interval) {
  if (!interval.feasible) {
    throw InfeasibleError("scale interval collapses to zero");
  }
  const double hi = std::max(interval.upper, 0.0);
  const double lo = std::min(interval.lower, 0.0);
  return hi >= -lo ? hi / 2.0 : lo / 2.0;
}

std::vector<std::string> extortion_violations(const StageGame& game,
                                              const ExtortionSpec& spec,
                                              Player side) {
  std::vector<std::string> out;
  if (!(spec.chi > 0.0)) {
    out.push_back("chi = " + num(spec.chi) + " must be positive");
    return out;
  }
  const Frame f = frame_for(game, side);
  int sign = 0;
  if (spec.phi && *spec.phi != 0.0) {
    sign = *spec.phi > 0.0 ? 1 : -1;
  } else {
    const auto r = extortion_ranges(game, spec.delta, side);
    sign = r.feasible ? r.scale_sign : 1;
  }

  const double d = spec.delta;
  for (int k = 0; k < 4; ++k) {
    const double a = sign * kSide[k] * (f.own[k] - d);
    const double b = sign * kSide[k] * (f.opp[k] - d);
    const double g = a - spec.chi * b;
    if (g >= -kProbabilityTol * std::max(1.0, std::abs(a))) continue;
    std::ostringstream os;
    os << "p" << (k + 1) << ": phi*((" << f.own_sym[k] << "-delta) - chi*("
       << f.opp_sym[k] << "-delta)) must be "
       << (sign * kSide[k] > 0 ? ">= 0" : "<= 0") << " with phi "
       << (sign > 0 ? "> 0" : "< 0");
    if (b > 0.0) {
      os << ", i.e. chi <= " << num(a / b);
    } else if (b < 0.0) {
      os << ", i.e. chi >= " << num(a / b);
    } else {
      os << ", which fails for delta = " << num(d);
    }
    out.push_back(os.str());
  }
  if (game.kind() == GameKind::kSymmetric && spec.chi > 1.0) {
    const auto& prm = game.parameters();
    const double r = prm[0], p = prm[3];
    if (d < std::min(p, r) || d > std::max(p, r)) {
      out.push_back("delta = " + num(d) + " must lie in [P, R] = [" + num(p) +
                    ", " + num(r) + "] for chi > 1");
    }
  }
  if (!out.empty()) return out;

  const Vec4 dir = extortion_dir(f, d, spec.chi);
  if (all_zero(dir)) {
    out.push_back("strategy degenerates to (1,1,0,0) for these parameters");
    return out;
  }
  if (spec.phi) {
    const auto r = scale_range(dir);
    const double phi = *spec.phi;
    if (phi == 0.0 || phi < r.lower - kProbabilityTol ||
        phi > r.upper + kProbabilityTol) {
      out.push_back("phi = " + num(phi) + " outside feasible interval [" +
                    num(r.lower) + ", " + num(r.upper) + "] (and must be nonzero)");
    }
  }
  return out;
}

StrategyVector synth_extortion(const StageGame& game, const ExtortionSpec& spec,
                               Player side) {
  auto bad = extortion_violations(game, spec, side);
  if (!bad.empty()) {
    throw InfeasibleError("infeasible extortion spec", std::move(bad));
  }
  const Frame f = frame_for(game, side);
  const Vec4 dir = extortion_dir(f, spec.delta, spec.chi);
  const double phi = spec.phi.value_or(default_scale(scale_range(dir)));
  return build(dir, phi);
}

StrategyVector synthesize(const StageGame& game, const ZdSpec& spec,
                          Player side) {
  return std::visit(
      [&](const auto& s) -> StrategyVector {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MischiefSpec>) {
          return synth_mischief(game, s, side);
        } else if constexpr (std::is_same_v<T, ExtortionSpec>) {
          return synth_extortion(game, s, side);
        } else {
          return zd_from_linear(game, s, side);
        }
      },
      spec);
}

ZDLinear enforced_linear(const StageGame& game, const ZdSpec& spec,
                         Player side) {
  return std::visit(
      [&](const auto& s) -> ZDLinear {
        using T = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<T, MischiefSpec>) {
          const double beta = s.beta.value_or(
              default_scale(mischief_beta_range(game, s.target, side)));
          return mischief_linear(s, beta, side);
        } else if constexpr (std::is_same_v<T, ExtortionSpec>) {
          const double phi = s.phi.value_or(
              default_scale(feasible_phi(game, s.delta, s.chi, side)));
          return extortion_linear(s, phi, side);
        } else {
          return s;
        }
      },
      spec);
}

std::optional<RecoveredZD> recover_zd(const StageGame& game,
                                      const StrategyVector& p, Player side) {
  const Frame f = frame_for(game, side);
  Eigen::Matrix<double, 4, 3> a;
  Eigen::Vector4d y;
  for (int k = 0; k < 4; ++k) {
    a(k, 0) = f.own[k];
    a(k, 1) = f.opp[k];
    a(k, 2) = 1.0;
    y(k) = p[k] - kBase[k];
  }
  const Eigen::Vector3d x = a.completeOrthogonalDecomposition().solve(y);
  const double residual = (a * x - y).cwiseAbs().maxCoeff();
  if (!(residual < 1e-9)) return std::nullopt;

  RecoveredZD out;
  out.linear = to_global(x(0), x(1), x(2), side);
  out.residual = residual;
  constexpr double kZero = 1e-12;
  if (std::abs(x(0)) > kZero) {
    out.chi = -x(1) / x(0);
    if (std::abs(x(0) + x(1)) > kZero) out.delta = -x(2) / (x(0) + x(1));
  } else if (std::abs(x(1)) > kZero) {
    out.target = -x(2) / x(1);
  }
  return out;
}

}  // namespace zdlab
