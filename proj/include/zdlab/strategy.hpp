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

#ifndef ZDLAB_STRATEGY_HPP_
#define ZDLAB_STRATEGY_HPP_

#include <string>

#include "zdlab/game.hpp"

namespace zdlab {

// Memory-one strategy: probability of playing up after each previous outcome
// (uu, ud, du, dd), seen from the owner's perspective, plus the
// unconditional first-move probability.
class StrategyVector {
 public:
  StrategyVector() : StrategyVector({0.5, 0.5, 0.5, 0.5}) {}
  // Throws InvalidArgument if any probability lies outside [0,1].
  explicit StrategyVector(const Vec4& p, double first_move = 0.5);

  static StrategyVector all_up() { return StrategyVector({1, 1, 1, 1}, 1.0); }
  static StrategyVector all_down() { return StrategyVector({0, 0, 0, 0}, 0.0); }
  static StrategyVector tit_for_tat() {
    return StrategyVector({1, 0, 1, 0}, 1.0);
  }
  static StrategyVector randomizer() { return StrategyVector(); }

  const Vec4& p() const { return p_; }
  double operator[](int k) const { return p_[static_cast<std::size_t>(k)]; }
  double first_move() const { return first_move_; }

  StrategyVector with_first_move(double f) const {
    return StrategyVector(p_, f);
  }

  bool operator==(const StrategyVector&) const = default;

  std::string to_string() const;

 private:
  Vec4 p_;
  double first_move_;
};

}  // namespace zdlab

#endif  // ZDLAB_STRATEGY_HPP_
