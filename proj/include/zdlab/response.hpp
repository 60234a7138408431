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

#ifndef ZDLAB_RESPONSE_HPP_
#define ZDLAB_RESPONSE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"
#include "zdlab/zd.hpp"

namespace zdlab {

enum class BRMethod { kGrid, kAscent };

struct BestResponseOptions {
  BRMethod method = BRMethod::kGrid;
  int grid_points = 11;  // per axis, including both endpoints
  int restarts = 20;
  double step = 0.05;
  int max_steps = 2000;
  std::uint64_t seed = 1;
  bool record_trajectory = false;
};

struct BestResponseResult {
  StrategyVector q_star;
  double pi_y = 0.0;
  BRMethod method = BRMethod::kGrid;
  // Every probed q gave the same pi_Y (within 1e-9): no best response per se.
  bool indifferent = false;
  double spread = 0.0;  // max - min of pi_Y over probed q
  long evaluations = 0;
  std::vector<std::pair<Vec4, double>> trajectory;
};

// Maximizes pi_Y(p, q) over memory-one q. Ties are broken toward up in each
// component, and the result's first move is up.
BestResponseResult best_response(const StrategyVector& p, const StageGame& game,
                                 const BestResponseOptions& opts = {});

struct Gradient {
  Vec4 value{};   // step 1e-6
  Vec4 coarse{};  // step 1e-4
  double max_gap = 0.0;  // max |value - coarse| / max(1, |value|)
};

// Finite-difference d pi_Y / d q_k; one-sided where q_k sits on a bound.
// Throws DomainError if the chain degenerates on the stencil.
Gradient payoff_gradient(const StrategyVector& p, const StrategyVector& q,
                         const StageGame& game);

// (1 - delta) * mu1^T (I - delta M)^{-1} s_player, delta in [0, 1). mu1
// defaults to the first-move product.
double discounted_payoff(const StrategyVector& p, const StrategyVector& q,
                         const StageGame& game, double delta, Player player,
                         std::optional<Vec4> mu1 = std::nullopt);

// The best discounted reply of Y over the 32 deterministic memory-one
// strategies (16 vectors times 2 first moves); the optimum over all of
// memory-one q is always attained at one of them.
std::pair<StrategyVector, double> discounted_best_corner(const StrategyVector& p,
                                                         const StageGame& game,
                                                         double delta);

// Smallest delta from which AllU is a discounted best response to p, by
// bisection. nullopt if AllU is not a best response even as delta -> 1.
std::optional<double> discount_threshold(const StrategyVector& p,
                                         const StageGame& game,
                                         double tol = 1e-9);

struct RetaliationResult {
  bool feasible = false;
  // Closed test (T+S) < 2P at delta = P, (F+D) < 2C at delta = C for BS.
  std::optional<bool> closed_form;
  std::optional<StrategyVector> extortioner;
  std::optional<StrategyVector> witness;  // q minimizing pi_Y
  double witness_pi_x = 0.0;
  double witness_pi_y = 0.0;
  double chi = 0.0;
};

// Whether some opponent of the delta-offset extortion family holds pi_Y
// below delta. The family member uses chi = 10 when the chi range is
// unbounded, otherwise its midpoint.
RetaliationResult retaliation_feasible(const StageGame& game, double delta);

struct DualOutcome {
  StrategyVector p;
  StrategyVector q;
  double pi_x = 0.0;
  double pi_y = 0.0;
  double residual_x = 0.0;  // |(pi_X - dX) - chiX (pi_Y - dX)|
  double residual_y = 0.0;
  bool consistent = false;  // both residuals below 1e-9
};

DualOutcome dual_zd_outcome(const ExtortionSpec& spec_x,
                            const ExtortionSpec& spec_y, const StageGame& game);

}  // namespace zdlab

#endif  // ZDLAB_RESPONSE_HPP_
