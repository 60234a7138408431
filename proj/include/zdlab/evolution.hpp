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

#ifndef ZDLAB_EVOLUTION_HPP_
#define ZDLAB_EVOLUTION_HPP_

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

struct NamedStrategy {
  std::string name;
  StrategyVector strategy;
};

struct Population {
  std::vector<NamedStrategy> strategies;
  std::vector<double> shares;
  // Throws InvalidArgument unless shares are nonnegative, sum to 1 within
  // 1e-12 and match the strategy count.
  void validate() const;
};

struct PayoffTable {
  std::vector<std::string> names;
  std::vector<std::vector<double>> u;  // u[x][y]: payoff of x against y
  std::vector<std::vector<bool>> start_dependent;
  std::size_t size() const { return u.size(); }
};

// Entries come from expected_payoffs with a uniform initial distribution, so
// start-dependent pairs such as TFT against TFT average over all four starts.
PayoffTable payoff_table(const std::vector<NamedStrategy>& strategies,
                         const StageGame& game);

// Explicit Euler steps of x_i' = x_i (u_i(x) - mean), renormalized after each
// step. Row 0 is the start; one row per `record_every` steps after that.
std::vector<std::vector<double>> replicator_trajectory(
    const std::vector<double>& shares, const PayoffTable& table, double dt,
    long steps, long record_every = 1);

double mean_fitness(const std::vector<double>& shares, const PayoffTable& table);

// Interior rest point share of `invader` against `incumbent` in a two-strategy
// table. nullopt if the denominator is not positive or the share leaves
// [0, 1].
std::optional<double> stable_share_omega(const PayoffTable& table,
                                         std::size_t invader = 0,
                                         std::size_t incumbent = 1);

// step,share_1,...,share_n
void write_trajectory_csv(std::ostream& os,
                          const std::vector<std::vector<double>>& rows,
                          long record_every = 1);

}  // namespace zdlab

#endif  // ZDLAB_EVOLUTION_HPP_
