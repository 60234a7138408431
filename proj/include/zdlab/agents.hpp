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

#ifndef ZDLAB_AGENTS_HPP_
#define ZDLAB_AGENTS_HPP_

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "zdlab/game.hpp"
#include "zdlab/rng.hpp"
#include "zdlab/strategy.hpp"

namespace zdlab {

// A player in an iterated game. One instance is owned by one game at a time;
// the engine clones the agents it is handed.
class Agent {
 public:
  virtual ~Agent() = default;

  virtual void reset(const StageGame& game, Player side) = 0;
  virtual Action decide(Rng& rng) = 0;
  virtual void observe(Action own, Action opp, double own_payoff) = 0;
  virtual std::unique_ptr<Agent> clone() const = 0;
  virtual std::string describe() const = 0;
  // Set for agents that are exactly a memory-one strategy.
  virtual std::optional<StrategyVector> memory_one() const {
    return std::nullopt;
  }
};

using AgentPtr = std::unique_ptr<Agent>;

class MemoryOneAgent final : public Agent {
 public:
  explicit MemoryOneAgent(StrategyVector s, std::string label = {});

  void reset(const StageGame&, Player) override { last_.reset(); }
  Action decide(Rng& rng) override;
  void observe(Action own, Action opp, double) override {
    last_ = outcome_index(own, opp);
  }
  AgentPtr clone() const override {
    return std::make_unique<MemoryOneAgent>(*this);
  }
  std::string describe() const override;
  std::optional<StrategyVector> memory_one() const override { return s_; }

  const StrategyVector& strategy() const { return s_; }

 private:
  StrategyVector s_;
  std::string label_;
  std::optional<int> last_;
};

AgentPtr make_memory_one(const StrategyVector& s, std::string label = {});
AgentPtr make_tft();
AgentPtr make_all_up();
AgentPtr make_all_down();
AgentPtr make_randomizer();

// Probability of up given the last two outcomes (own perspective), indexed
// [4 * older + newer]. The second move uses `after_one`, the first
// `first_move`.
class MemoryTwoAgent final : public Agent {
 public:
  MemoryTwoAgent(std::array<double, 16> table, Vec4 after_one,
                 double first_move, std::string label = {});

  // Plays down iff the opponent played down in both of the last two rounds.
  static MemoryTwoAgent down_after_two_downs();

  void reset(const StageGame&, Player) override { history_.clear(); }
  Action decide(Rng& rng) override;
  void observe(Action own, Action opp, double) override;
  AgentPtr clone() const override {
    return std::make_unique<MemoryTwoAgent>(*this);
  }
  std::string describe() const override { return label_; }

  const std::array<double, 16>& table() const { return table_; }

 private:
  std::array<double, 16> table_;
  Vec4 after_one_;
  double first_move_;
  std::string label_;
  std::vector<int> history_;  // at most two most recent outcomes
};

// Roth-Erev propensities: the propensity of the action taken grows by
// (payoff - minimum stage payoff); p(up) is proportional to propensity.
struct LearnerState {
  double up = 1.0;
  double down = 1.0;
  double p_up() const { return up / (up + down); }
};

LearnerState reinforcement_learner_step(LearnerState state, Action own,
                                        double payoff, double min_payoff);

class ReinforcementLearner final : public Agent {
 public:
  explicit ReinforcementLearner(LearnerState initial = {});

  void reset(const StageGame& game, Player side) override;
  Action decide(Rng& rng) override { return rng.bernoulli(state_.p_up()) ? Action::kUp : Action::kDown; }
  void observe(Action own, Action, double own_payoff) override;
  AgentPtr clone() const override {
    return std::make_unique<ReinforcementLearner>(*this);
  }
  std::string describe() const override { return "learner"; }

  const LearnerState& state() const { return state_; }

 private:
  LearnerState initial_;
  LearnerState state_;
  double min_payoff_ = 0.0;
};

// Moves supplied from outside (a human, a replayed log). decide() pops the
// next queued action and throws if none is queued.
class ExternalAgent final : public Agent {
 public:
  ExternalAgent() = default;
  explicit ExternalAgent(std::vector<Action> script);

  void push(Action a) { script_.push_back(a); }
  void reset(const StageGame&, Player) override { next_ = 0; }
  Action decide(Rng& rng) override;
  void observe(Action, Action, double) override {}
  AgentPtr clone() const override {
    return std::make_unique<ExternalAgent>(*this);
  }
  std::string describe() const override { return "external"; }

 private:
  std::vector<Action> script_;
  std::size_t next_ = 0;
};

}  // namespace zdlab

#endif  // ZDLAB_AGENTS_HPP_
