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

#include "zdlab/agents.hpp"

#include <utility>

#include "zdlab/errors.hpp"

namespace zdlab {

MemoryOneAgent::MemoryOneAgent(StrategyVector s, std::string label)
    : s_(std::move(s)), label_(std::move(label)) {}

Action MemoryOneAgent::decide(Rng& rng) {
  const double p = last_ ? s_[*last_] : s_.first_move();
  return rng.bernoulli(p) ? Action::kUp : Action::kDown;
}

std::string MemoryOneAgent::describe() const {
  return label_.empty() ? "mem1" + s_.to_string() : label_;
}

AgentPtr make_memory_one(const StrategyVector& s, std::string label) {
  return std::make_unique<MemoryOneAgent>(s, std::move(label));
}
AgentPtr make_tft() {
  return make_memory_one(StrategyVector::tit_for_tat(), "tft");
}
AgentPtr make_all_up() { return make_memory_one(StrategyVector::all_up(), "allu"); }
AgentPtr make_all_down() {
  return make_memory_one(StrategyVector::all_down(), "alld");
}
AgentPtr make_randomizer() {
  return make_memory_one(StrategyVector::randomizer(), "random");
}

MemoryTwoAgent::MemoryTwoAgent(std::array<double, 16> table, Vec4 after_one,
                               double first_move, std::string label)
    : table_(table),
      after_one_(after_one),
      first_move_(first_move),
      label_(label.empty() ? "mem2" : std::move(label)) {
  auto check = [](double v) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw InvalidArgument("memory-two probability outside [0,1]");
    }
  };
  for (double v : table_) check(v);
  for (double v : after_one_) check(v);
  check(first_move_);
}

MemoryTwoAgent MemoryTwoAgent::down_after_two_downs() {
  std::array<double, 16> t{};
  for (int older = 0; older < 4; ++older) {
    for (int newer = 0; newer < 4; ++newer) {
      const bool both_down = opp_action(older) == Action::kDown &&
                             opp_action(newer) == Action::kDown;
      t[4 * older + newer] = both_down ? 0.0 : 1.0;
    }
  }
  return MemoryTwoAgent(t, {1, 1, 1, 1}, 1.0, "mem2-dd");
}

Action MemoryTwoAgent::decide(Rng& rng) {
  double p = first_move_;
  if (history_.size() == 1) p = after_one_[history_[0]];
  if (history_.size() == 2) p = table_[4 * history_[0] + history_[1]];
  return rng.bernoulli(p) ? Action::kUp : Action::kDown;
}

void MemoryTwoAgent::observe(Action own, Action opp, double) {
  if (history_.size() == 2) history_.erase(history_.begin());
  history_.push_back(outcome_index(own, opp));
}

LearnerState reinforcement_learner_step(LearnerState state, Action own,
                                        double payoff, double min_payoff) {
  const double inc = payoff - min_payoff;
  (own == Action::kUp ? state.up : state.down) += inc;
  return state;
}

ReinforcementLearner::ReinforcementLearner(LearnerState initial)
    : initial_(initial), state_(initial) {
  if (!(initial.up > 0.0 && initial.down > 0.0)) {
    throw InvalidArgument("learner propensities must be positive");
  }
}

void ReinforcementLearner::reset(const StageGame& game, Player side) {
  state_ = initial_;
  min_payoff_ = game.min_payoff(side);
}

void ReinforcementLearner::observe(Action own, Action, double own_payoff) {
  state_ = reinforcement_learner_step(state_, own, own_payoff, min_payoff_);
}

ExternalAgent::ExternalAgent(std::vector<Action> script)
    : script_(std::move(script)) {}

Action ExternalAgent::decide(Rng&) {
  if (next_ >= script_.size()) {
    throw InvalidArgument("external agent has no queued move");
  }
  return script_[next_++];
}

}  // namespace zdlab
