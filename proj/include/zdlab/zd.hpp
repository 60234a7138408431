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

#ifndef ZDLAB_ZD_HPP_
#define ZDLAB_ZD_HPP_

#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

// alpha * pi_X + beta * pi_Y + gamma = 0, in global (X, Y) coordinates.
struct ZDLinear {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  bool is_zero() const { return alpha == 0.0 && beta == 0.0 && gamma == 0.0; }
};

// Enforces (pi_own - delta) = chi * (pi_opp - delta).
struct ExtortionSpec {
  double delta = 0.0;
  double chi = 1.0;
  std::optional<double> phi;  // defaulted to the midpoint of the phi interval
};

// Pins the opponent's long-run payoff to target.
struct MischiefSpec {
  double target = 0.0;
  std::optional<double> beta;  // defaulted to the midpoint of the beta interval
};

using ZdSpec = std::variant<MischiefSpec, ExtortionSpec, ZDLinear>;

struct FeasibleRange {
  double lower = -std::numeric_limits<double>::infinity();
  double upper = std::numeric_limits<double>::infinity();
  bool feasible = false;
  // Sign of the scale parameter (phi or beta) the range was derived for.
  int scale_sign = 0;
};

// Boundary clamping tolerance for synthesized components.
inline constexpr double kProbabilityTol = 1e-12;

// p = alpha*s_X + beta*s_Y + gamma*1 + (1,1,0,0) for X. For Y the same right
// hand side with (1,0,1,0) gives (q1, q3, q2, q4). An all-zero form yields
// the repeat-own-move vector (1,1,0,0). Throws InfeasibleError listing every
// component outside [0,1].
StrategyVector zd_from_linear(const StageGame& game, const ZDLinear& z,
                              Player side = Player::kX);

// Linear form of an extortion spec with a concrete phi.
ZDLinear extortion_linear(const ExtortionSpec& spec, double phi,
                          Player side = Player::kX);
ZDLinear mischief_linear(const MischiefSpec& spec, double beta,
                         Player side = Player::kX);

// Targets the mischief player can impose on the opponent: [max{S,P},
// min{R,T}] for symmetric games, infeasible for Battle of the Sexes.
FeasibleRange mischief_range(const StageGame& game, Player side = Player::kX);

// Values of beta keeping the mischief vector for `target` inside [0,1]^4.
FeasibleRange mischief_beta_range(const StageGame& game, double target,
                                  Player side = Player::kX);

StrategyVector synth_mischief(const StageGame& game, const MischiefSpec& spec,
                              Player side = Player::kX);

// Feasible extortion factors chi > 0 at offset delta, derived from the sign
// each component of phi*[(s_own - delta) - chi(s_opp - delta)] must take.
FeasibleRange extortion_ranges(const StageGame& game, double delta,
                               Player side = Player::kX);

// Closed interval of phi (always containing 0) keeping every component in
// [0,1]. feasible is false when the interval collapses to {0}.
FeasibleRange feasible_phi(const StageGame& game, double delta, double chi,
                           Player side = Player::kX);

// Midpoint of the nonzero part of a scale interval; the longer side wins.
double default_scale(const FeasibleRange& interval);

StrategyVector synth_extortion(const StageGame& game, const ExtortionSpec& spec,
                               Player side = Player::kX);

// Reports every bound the spec violates; empty when the spec is feasible.
std::vector<std::string> extortion_violations(const StageGame& game,
                                              const ExtortionSpec& spec,
                                              Player side = Player::kX);

StrategyVector synthesize(const StageGame& game, const ZdSpec& spec,
                          Player side = Player::kX);

// Linear form actually enforced by synthesize() for the spec, with defaulted
// scale parameters filled in.
ZDLinear enforced_linear(const StageGame& game, const ZdSpec& spec,
                         Player side = Player::kX);

struct RecoveredZD {
  ZDLinear linear;
  double residual = 0.0;
  std::optional<double> chi;     // -beta/alpha in the owner's frame
  std::optional<double> delta;   // undefined when chi == 1
  std::optional<double> target;  // mischief: opponent payoff pinned
};

// Least-squares fit of p - base = a*s_own + b*s_opp + c*1. Returns nullopt
// when the residual exceeds 1e-9.
std::optional<RecoveredZD> recover_zd(const StageGame& game,
                                      const StrategyVector& p,
                                      Player side = Player::kX);

}  // namespace zdlab

#endif  // ZDLAB_ZD_HPP_
