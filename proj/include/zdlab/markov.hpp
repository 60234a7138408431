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

#ifndef ZDLAB_MARKOV_HPP_
#define ZDLAB_MARKOV_HPP_

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

using Mat4 = Eigen::Matrix4d;

// Row-stochastic transition matrix over outcomes (uu, ud, du, dd) from X's
// perspective, and the distribution over the first outcome.
struct MarkovChain {
  Mat4 m;
  Vec4 mu1;
};

// Entry (i, j) is P(next = j | last = i). Y's vector is read with the ud/du
// swap, so row ud uses q[2] and row du uses q[1].
Mat4 transition_matrix(const StrategyVector& p, const StrategyVector& q);

// Product of the two first-move probabilities.
Vec4 default_initial(const StrategyVector& p, const StrategyVector& q);

MarkovChain make_chain(const StrategyVector& p, const StrategyVector& q,
                       std::optional<Vec4> mu1 = std::nullopt);

// det of
//   [ p1 q1 - 1   p1 - 1   q1 - 1   f1 ]
//   [ p2 q3       p2 - 1   q3       f2 ]
//   [ p3 q2       p3       q2 - 1   f3 ]
//   [ p4 q4       p4       q4       f4 ]
// Linear in f; D(p,q,f) / D(p,q,1) is the long-run average of f.
double determinant_d(const StrategyVector& p, const StrategyVector& q,
                     const Vec4& f);

inline constexpr double kDegenerateDenominator = 1e-10;
inline constexpr double kCrossCheckDenominator = 1e-6;

enum class PayoffMethod { kDeterminant, kCesaro };

struct ExpectedPayoffs {
  double pi_x = 0.0;
  double pi_y = 0.0;
  Vec4 stationary{};
  PayoffMethod method = PayoffMethod::kDeterminant;
  // Set when the long-run distribution depends on mu1.
  bool start_dependent = false;
  double denominator = 0.0;  // D(p, q, 1)
  // Max gap between determinant and Cesaro routes when both were run.
  std::optional<double> cross_check_gap;
};

// Determinant formula, falling back to the Cesaro average (started from mu1,
// or the first-move product) when D(p, q, 1) is numerically zero.
ExpectedPayoffs expected_payoffs(const StrategyVector& p,
                                 const StrategyVector& q,
                                 const StageGame& game,
                                 std::optional<Vec4> mu1 = std::nullopt);

// (1/n) * sum_{m<n} M^m.
Mat4 cesaro_matrix(const Mat4& m, int n = 4);

// States with positive probability of ever being visited from mu1.
std::vector<int> reachable_states(const Mat4& m, const Vec4& mu1);

struct CesaroOptions {
  double tol = 1e-12;   // on the change between successive averages
  int max_rounds = 128;  // doublings of the averaging horizon
};

struct CesaroResult {
  Vec4 distribution{};
  Mat4 limit;              // rows: long-run visit frequencies per start state
  bool start_dependent = false;
  double horizon = 1.0;    // number of steps averaged in the final iterate
  double residual = 0.0;
};

// Long-run average visit distribution of mu1^T M^t. The averaging horizon
// doubles each round (A_2n = (A_n + M^n A_n) / 2), so periodic and reducible
// chains are handled without any spectral assumption. Throws
// ConvergenceError when max_rounds is exhausted.
CesaroResult cesaro_stationary(const Mat4& m, const Vec4& mu1,
                               const CesaroOptions& opts = {});

struct ConvergenceBound {
  double c = 0.0;
  double epsilon = 0.0;
  double s_hat = 0.0;
  std::vector<int> reduced_states;
  int column = -1;  // outcome index of the column attaining epsilon
};

// Mean-square bound E[(avg_t - pi)^2] <= C / t with C = 6 s_hat^2 / epsilon,
// epsilon the largest column-wise minimum of A_4 on the reachable states.
// Throws DomainError if every column of the reduced A_4 holds a zero.
ConvergenceBound convergence_constant(const StrategyVector& p,
                                      const StrategyVector& q, double s_hat,
                                      std::optional<Vec4> mu1 = std::nullopt);

}  // namespace zdlab

#endif  // ZDLAB_MARKOV_HPP_
