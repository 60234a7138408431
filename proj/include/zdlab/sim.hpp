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

#ifndef ZDLAB_SIM_HPP_
#define ZDLAB_SIM_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "zdlab/agents.hpp"
#include "zdlab/game.hpp"

namespace zdlab {

// Running averages are kept at every iteration up to this point, then every
// kThinStride-th iteration (and always at the last one).
inline constexpr long kThinDense = 1000;
inline constexpr long kThinStride = 10;

bool is_checkpoint(long t, long iterations);
std::vector<long> checkpoints(long iterations);

struct GameTrace {
  std::uint64_t seed = 0;
  long iterations = 0;
  std::vector<std::pair<Action, Action>> outcomes;  // empty if not kept
  std::vector<long> t;  // 1-based iteration of each stored average
  std::vector<double> avg_x;
  std::vector<double> avg_y;
  double final_x = 0.0;
  double final_y = 0.0;
};

struct TraceOptions {
  bool keep_outcomes = true;
  bool thin = true;  // false stores every iteration
};

// X draws from stream derive_seed(seed, 0), Y from derive_seed(seed, 1).
GameTrace play_iterated(const Agent& x, const Agent& y, const StageGame& game,
                        long iterations, std::uint64_t seed,
                        const TraceOptions& opts = {});

struct BatchOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  // When set, mean squared deviation of the running averages from these
  // values is reported at each checkpoint.
  std::optional<std::pair<double, double>> reference;
};

struct BatchStats {
  long n_games = 0;
  long iterations = 0;
  std::uint64_t master_seed = 0;
  std::vector<long> t;
  std::vector<double> mean_x, mean_y;
  std::vector<double> msd_x, msd_y;  // only with BatchOptions::reference
  double final_mean_x = 0.0, final_mean_y = 0.0;
  double final_se_x = 0.0, final_se_y = 0.0;
};

// Game i is seeded with derive_seed(master_seed, i). Results do not depend on
// the thread count: games are summed in fixed blocks, blocks in index order.
BatchStats batch_average(const Agent& x, const Agent& y, const StageGame& game,
                         long iterations, long n_games,
                         std::uint64_t master_seed,
                         const BatchOptions& opts = {});

struct Mem1Estimate {
  StrategyVector p;
  std::array<long, 4> visits{};  // times each condition preceded a move
  std::array<bool, 4> filled{};  // true where no sample existed (set to 0.5)
  std::array<double, 4> std_err{};
};

// Empirical p(up | previous outcome) of `agent` playing X against
// `opponent`. The first move of the estimate is left at 0.5.
Mem1Estimate estimate_mem1_equivalent(const Agent& agent, const Agent& opponent,
                                      const StageGame& game,
                                      long sample_iterations, std::uint64_t seed);

}  // namespace zdlab

#endif  // ZDLAB_SIM_HPP_
