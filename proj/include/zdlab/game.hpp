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

#ifndef ZDLAB_GAME_HPP_
#define ZDLAB_GAME_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace zdlab {

enum class Action : std::uint8_t { kUp = 0, kDown = 1 };
enum class Player : std::uint8_t { kX = 0, kY = 1 };

inline constexpr Player other(Player p) {
  return p == Player::kX ? Player::kY : Player::kX;
}
inline constexpr Action flip(Action a) {
  return a == Action::kUp ? Action::kDown : Action::kUp;
}
std::string_view to_string(Action a);
std::optional<Action> parse_action(std::string_view s);

// Joint outcomes are indexed (uu, ud, du, dd) = 0..3, first letter is the
// action of whoever's perspective the index is taken from.
using Vec4 = std::array<double, 4>;

inline constexpr int outcome_index(Action own, Action opp) {
  return 2 * static_cast<int>(own) + static_cast<int>(opp);
}
// ud <-> du; maps an X-perspective index to the Y-perspective one and back.
inline constexpr int swap_perspective(int k) {
  return k == 1 ? 2 : (k == 2 ? 1 : k);
}
inline constexpr Action own_action(int k) { return static_cast<Action>(k / 2); }
inline constexpr Action opp_action(int k) { return static_cast<Action>(k % 2); }
std::string_view outcome_name(int k);

enum class GameKind : std::uint8_t { kSymmetric, kBattleOfSexes, kRaw };
enum class CanonicalGame : std::uint8_t { kPD, kSH, kGC, kBS };

std::string_view to_string(GameKind k);
std::optional<CanonicalGame> parse_canonical(std::string_view name);

// Payoffs indexed [a_X][a_Y].
using PayoffMatrix = std::array<std::array<double, 2>, 2>;

// Both players' stage payoffs by outcome, ordered from X's perspective.
struct PayoffVectors {
  Vec4 sx;
  Vec4 sy;
};

// A 2x2 simultaneous-move stage game. Symmetric games carry (R,S,T,P),
// Battle-of-Sexes games carry (F,C,L,D); raw games only the two matrices.
class StageGame {
 public:
  static StageGame symmetric(double r, double s, double t, double p,
                             std::string name = {});
  static StageGame battle_of_sexes(double f, double c, double l, double d,
                                   std::string name = {});
  static StageGame raw(const PayoffMatrix& x, const PayoffMatrix& y,
                       std::string name = {});

  GameKind kind() const { return kind_; }
  const std::string& name() const { return name_; }
  // (R,S,T,P) or (F,C,L,D). Zero-filled for raw games.
  const Vec4& parameters() const { return params_; }
  const PayoffMatrix& matrix(Player p) const {
    return p == Player::kX ? x_ : y_;
  }

  double payoff(Player p, Action ax, Action ay) const {
    return matrix(p)[static_cast<int>(ax)][static_cast<int>(ay)];
  }
  PayoffVectors payoff_vectors() const;

  double min_payoff(Player p) const;
  double max_payoff(Player p) const;

  // Ordinal relations the game is expected to satisfy but does not.
  // Never thrown: games outside the textbook orderings are legitimate.
  std::vector<std::string> ordering_warnings() const;

  bool operator==(const StageGame& o) const {
    return kind_ == o.kind_ && x_ == o.x_ && y_ == o.y_;
  }

 private:
  StageGame(GameKind kind, Vec4 params, PayoffMatrix x, PayoffMatrix y,
            std::string name);

  GameKind kind_;
  Vec4 params_;
  PayoffMatrix x_;
  PayoffMatrix y_;
  std::string name_;
};

// PD=(3,0,5,1), SH=(10,0,8,8), GC=(6,2,7,0) as (R,S,T,P); BS=(5,1,1,3) as
// (F,C,L,D).
StageGame canonical_game(CanonicalGame which);

// Pure-strategy maximin: max over own actions of the worst case.
double maximin(const StageGame& game, Player player);

struct MixedEquilibrium {
  double x_up;  // probability X plays up
  double y_up;
  double payoff_x;
  double payoff_y;
};

struct StageNash {
  std::vector<std::pair<Action, Action>> pure;
  std::optional<MixedEquilibrium> mixed;  // only when strictly interior
};

StageNash stage_nash(const StageGame& game);

}  // namespace zdlab

#endif  // ZDLAB_GAME_HPP_
