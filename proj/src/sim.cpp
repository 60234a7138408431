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

#include "zdlab/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "zdlab/errors.hpp"
#include "zdlab/rng.hpp"

namespace zdlab {
namespace {

constexpr long kBlockGames = 64;

// Plays one game and calls on_step(t, sum_x, sum_y, ax, ay) after every
// iteration.
template <typename F>
void run_game(Agent& x, Agent& y, const StageGame& game, long iterations,
              std::uint64_t seed, F&& on_step) {
  Rng rx(derive_seed(seed, 0));
  Rng ry(derive_seed(seed, 1));
  x.reset(game, Player::kX);
  y.reset(game, Player::kY);
  double sx = 0.0, sy = 0.0;
  for (long t = 1; t <= iterations; ++t) {
    const Action ax = x.decide(rx);
    const Action ay = y.decide(ry);
    const double px = game.payoff(Player::kX, ax, ay);
    const double py = game.payoff(Player::kY, ax, ay);
    x.observe(ax, ay, px);
    y.observe(ay, ax, py);
    sx += px;
    sy += py;
    on_step(t, sx, sy, ax, ay);
  }
}

void require_iterations(long iterations) {
  if (iterations < 1) throw InvalidArgument("iterations must be >= 1");
}

struct BlockSums {
  std::vector<double> sx, sy, qx, qy;  // per checkpoint
  double fx = 0, fy = 0, fx2 = 0, fy2 = 0;
};

}  // namespace

bool is_checkpoint(long t, long iterations) {
  return t <= kThinDense || t % kThinStride == 0 || t == iterations;
}

std::vector<long> checkpoints(long iterations) {
  std::vector<long> out;
  for (long t = 1; t <= iterations; ++t) {
    if (is_checkpoint(t, iterations)) out.push_back(t);
  }
  return out;
}

GameTrace play_iterated(const Agent& x, const Agent& y, const StageGame& game,
                        long iterations, std::uint64_t seed,
                        const TraceOptions& opts) {
  require_iterations(iterations);
  auto ax = x.clone();
  auto ay = y.clone();
  GameTrace tr;
  tr.seed = seed;
  tr.iterations = iterations;
  if (opts.keep_outcomes) tr.outcomes.reserve(static_cast<std::size_t>(iterations));
  run_game(*ax, *ay, game, iterations, seed,
           [&](long t, double sx, double sy, Action a, Action b) {
             if (opts.keep_outcomes) tr.outcomes.emplace_back(a, b);
             if (!opts.thin || is_checkpoint(t, iterations)) {
               tr.t.push_back(t);
               tr.avg_x.push_back(sx / static_cast<double>(t));
               tr.avg_y.push_back(sy / static_cast<double>(t));
             }
           });
  tr.final_x = tr.avg_x.back();
  tr.final_y = tr.avg_y.back();
  return tr;
}

BatchStats batch_average(const Agent& x, const Agent& y, const StageGame& game,
                         long iterations, long n_games,
                         std::uint64_t master_seed, const BatchOptions& opts) {
  require_iterations(iterations);
  if (n_games < 1) throw InvalidArgument("n_games must be >= 1");

  const std::vector<long> ts = checkpoints(iterations);
  const std::size_t nc = ts.size();
  const long n_blocks = (n_games + kBlockGames - 1) / kBlockGames;
  std::vector<BlockSums> blocks(static_cast<std::size_t>(n_blocks));
  const bool msd = opts.reference.has_value();
  const double rx = msd ? opts.reference->first : 0.0;
  const double ry = msd ? opts.reference->second : 0.0;

  auto work_block = [&](long b) {
    BlockSums& acc = blocks[static_cast<std::size_t>(b)];
    acc.sx.assign(nc, 0.0);
    acc.sy.assign(nc, 0.0);
    if (msd) {
      acc.qx.assign(nc, 0.0);
      acc.qy.assign(nc, 0.0);
    }
    auto xa = x.clone();
    auto ya = y.clone();
    const long end = std::min(n_games, (b + 1) * kBlockGames);
    for (long g = b * kBlockGames; g < end; ++g) {
      std::size_t c = 0;
      double last_x = 0, last_y = 0;
      run_game(*xa, *ya, game, iterations,
               derive_seed(master_seed, static_cast<std::uint64_t>(g)),
               [&](long t, double sx, double sy, Action, Action) {
                 if (!is_checkpoint(t, iterations)) return;
                 const double mx = sx / static_cast<double>(t);
                 const double my = sy / static_cast<double>(t);
                 acc.sx[c] += mx;
                 acc.sy[c] += my;
                 if (msd) {
                   acc.qx[c] += (mx - rx) * (mx - rx);
                   acc.qy[c] += (my - ry) * (my - ry);
                 }
                 last_x = mx;
                 last_y = my;
                 ++c;
               });
      acc.fx += last_x;
      acc.fy += last_y;
      acc.fx2 += last_x * last_x;
      acc.fy2 += last_y * last_y;
    }
  };

  unsigned threads = opts.threads ? opts.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_blocks)));
  std::atomic<long> next{0};
  auto worker = [&] {
    for (long b; (b = next.fetch_add(1)) < n_blocks;) work_block(b);
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  BatchStats out;
  out.n_games = n_games;
  out.iterations = iterations;
  out.master_seed = master_seed;
  out.t = ts;
  out.mean_x.assign(nc, 0.0);
  out.mean_y.assign(nc, 0.0);
  if (msd) {
    out.msd_x.assign(nc, 0.0);
    out.msd_y.assign(nc, 0.0);
  }
  double fx = 0, fy = 0, fx2 = 0, fy2 = 0;
  for (const auto& acc : blocks) {
    for (std::size_t c = 0; c < nc; ++c) {
      out.mean_x[c] += acc.sx[c];
      out.mean_y[c] += acc.sy[c];
      if (msd) {
        out.msd_x[c] += acc.qx[c];
        out.msd_y[c] += acc.qy[c];
      }
    }
    fx += acc.fx;
    fy += acc.fy;
    fx2 += acc.fx2;
    fy2 += acc.fy2;
  }
  const double n = static_cast<double>(n_games);
  for (std::size_t c = 0; c < nc; ++c) {
    out.mean_x[c] /= n;
    out.mean_y[c] /= n;
    if (msd) {
      out.msd_x[c] /= n;
      out.msd_y[c] /= n;
    }
  }
  out.final_mean_x = fx / n;
  out.final_mean_y = fy / n;
  if (n_games > 1) {
    const double vx = std::max(0.0, (fx2 - n * out.final_mean_x * out.final_mean_x) / (n - 1));
    const double vy = std::max(0.0, (fy2 - n * out.final_mean_y * out.final_mean_y) / (n - 1));
    out.final_se_x = std::sqrt(vx / n);
    out.final_se_y = std::sqrt(vy / n);
  }
  return out;
}

Mem1Estimate estimate_mem1_equivalent(const Agent& agent, const Agent& opponent,
                                      const StageGame& game,
                                      long sample_iterations,
                                      std::uint64_t seed) {
  require_iterations(sample_iterations);
  auto a = agent.clone();
  auto b = opponent.clone();
  std::array<long, 4> ups{};
  Mem1Estimate est;
  int prev = -1;
  run_game(*a, *b, game, sample_iterations, seed,
           [&](long, double, double, Action ax, Action ay) {
             if (prev >= 0) {
               ++est.visits[prev];
               if (ax == Action::kUp) ++ups[prev];
             }
             prev = outcome_index(ax, ay);
           });
  Vec4 p{};
  for (int k = 0; k < 4; ++k) {
    if (est.visits[k] == 0) {
      p[k] = 0.5;
      est.filled[k] = true;
      continue;
    }
    const double n = static_cast<double>(est.visits[k]);
    p[k] = static_cast<double>(ups[k]) / n;
    est.std_err[k] = std::sqrt(p[k] * (1 - p[k]) / n);
  }
  est.p = StrategyVector(p);
  return est;
}

}  // namespace zdlab
