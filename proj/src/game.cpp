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

#include "zdlab/game.hpp"

#include <algorithm>
#include <cctype>
#include <limits>
#include <stdexcept>

namespace zdlab {

std::string_view to_string(Action a) {
  return a == Action::kUp ? "up" : "down";
}

std::optional<Action> parse_action(std::string_view s) {
  if (s == "up" || s == "u" || s == "U") return Action::kUp;
  if (s == "down" || s == "d" || s == "D") return Action::kDown;
  return std::nullopt;
}

std::string_view outcome_name(int k) {
  static constexpr std::array<std::string_view, 4> kNames = {"uu", "ud", "du",
                                                             "dd"};
  return kNames.at(static_cast<std::size_t>(k));
}

std::string_view to_string(GameKind k) {
  switch (k) {
    case GameKind::kSymmetric:
      return "symmetric";
    case GameKind::kBattleOfSexes:
      return "battle_of_sexes";
    case GameKind::kRaw:
      return "raw";
  }
  return "raw";
}

std::optional<CanonicalGame> parse_canonical(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  if (lower == "pd") return CanonicalGame::kPD;
  if (lower == "sh") return CanonicalGame::kSH;
  if (lower == "gc") return CanonicalGame::kGC;
  if (lower == "bs") return CanonicalGame::kBS;
  return std::nullopt;
}

StageGame::StageGame(GameKind kind, Vec4 params, PayoffMatrix x,
                     PayoffMatrix y, std::string name)
    : kind_(kind), params_(params), x_(x), y_(y), name_(std::move(name)) {}

StageGame StageGame::symmetric(double r, double s, double t, double p,
                               std::string name) {
  // X's row "up" earns R against up and S against down; Y mirrors.
  PayoffMatrix x{{{r, s}, {t, p}}};
  PayoffMatrix y{{{r, t}, {s, p}}};
  return StageGame(GameKind::kSymmetric, {r, s, t, p}, x, y, std::move(name));
}

StageGame StageGame::battle_of_sexes(double f, double c, double l, double d,
                                     std::string name) {
  PayoffMatrix x{{{f, c}, {l, d}}};
  PayoffMatrix y{{{d, c}, {l, f}}};
  return StageGame(GameKind::kBattleOfSexes, {f, c, l, d}, x, y,
                   std::move(name));
}

StageGame StageGame::raw(const PayoffMatrix& x, const PayoffMatrix& y,
                         std::string name) {
  return StageGame(GameKind::kRaw, {0, 0, 0, 0}, x, y, std::move(name));
}

PayoffVectors StageGame::payoff_vectors() const {
  PayoffVectors v{};
  for (int k = 0; k < 4; ++k) {
    v.sx[k] = payoff(Player::kX, own_action(k), opp_action(k));
    v.sy[k] = payoff(Player::kY, own_action(k), opp_action(k));
  }
  return v;
}

double StageGame::min_payoff(Player p) const {
  const auto& m = matrix(p);
  return std::min({m[0][0], m[0][1], m[1][0], m[1][1]});
}

double StageGame::max_payoff(Player p) const {
  const auto& m = matrix(p);
  return std::max({m[0][0], m[0][1], m[1][0], m[1][1]});
}

std::vector<std::string> StageGame::ordering_warnings() const {
  std::vector<std::string> out;
  const auto [a, b, c, d] = params_;
  auto require = [&](bool ok, const char* rel) {
    if (!ok) out.emplace_back(std::string("ordering violated: ") + rel);
  };
  if (kind_ == GameKind::kSymmetric) {
    const double r = a, s = b, t = c, p = d;
    if (name_ == "pd") {
      require(t > r && r > p && p > s, "T > R > P > S");
      require(2 * r > t + s, "2R > T + S");
    } else if (name_ == "sh") {
      require(r > t && t >= p && p > s, "R > T >= P > S");
    } else if (name_ == "gc") {
      require(t > r && r > s && s >= p, "T > R > S >= P");
    }
    require(std::min(r, t) >= std::max(s, p), "min{R,T} >= max{S,P}");
  } else if (kind_ == GameKind::kBattleOfSexes) {
    const double f = a, cc = b, l = c, dd = d;
    require(f > dd && dd > cc && cc >= l, "F > D > C >= L");
  }
  return out;
}

StageGame canonical_game(CanonicalGame which) {
  StageGame g = [&] {
    switch (which) {
      case CanonicalGame::kPD:
        return StageGame::symmetric(3, 0, 5, 1, "pd");
      case CanonicalGame::kSH:
        return StageGame::symmetric(10, 0, 8, 8, "sh");
      case CanonicalGame::kGC:
        return StageGame::symmetric(6, 2, 7, 0, "gc");
      case CanonicalGame::kBS:
        return StageGame::battle_of_sexes(5, 1, 1, 3, "bs");
    }
    throw std::logic_error("unknown canonical game");
  }();
  if (auto w = g.ordering_warnings(); !w.empty()) {
    throw std::logic_error("canonical game " + g.name() + ": " + w.front());
  }
  return g;
}

double maximin(const StageGame& game, Player player) {
  double best = -std::numeric_limits<double>::infinity();
  for (Action own : {Action::kUp, Action::kDown}) {
    double worst = std::numeric_limits<double>::infinity();
    for (Action opp : {Action::kUp, Action::kDown}) {
      const double v = player == Player::kX ? game.payoff(player, own, opp)
                                            : game.payoff(player, opp, own);
      worst = std::min(worst, v);
    }
    best = std::max(best, worst);
  }
  return best;
}

StageNash stage_nash(const StageGame& game) {
  StageNash out;
  for (Action ax : {Action::kUp, Action::kDown}) {
    for (Action ay : {Action::kUp, Action::kDown}) {
      const bool x_ok =
          game.payoff(Player::kX, ax, ay) >= game.payoff(Player::kX, flip(ax), ay);
      const bool y_ok =
          game.payoff(Player::kY, ax, ay) >= game.payoff(Player::kY, ax, flip(ay));
      if (x_ok && y_ok) out.pure.emplace_back(ax, ay);
    }
  }

  // Each player's mix makes the other indifferent between up and down.
  const auto& x = game.matrix(Player::kX);
  const auto& y = game.matrix(Player::kY);
  const double dy = y[0][0] - y[1][0] - y[0][1] + y[1][1];
  const double dx = x[0][0] - x[0][1] - x[1][0] + x[1][1];
  if (dx != 0.0 && dy != 0.0) {
    const double x_up = (y[1][1] - y[1][0]) / dy;
    const double y_up = (x[1][1] - x[0][1]) / dx;
    if (x_up > 0.0 && x_up < 1.0 && y_up > 0.0 && y_up < 1.0) {
      MixedEquilibrium m{x_up, y_up, 0.0, 0.0};
      const std::array<double, 2> px{x_up, 1.0 - x_up};
      const std::array<double, 2> py{y_up, 1.0 - y_up};
      for (int i = 0; i < 2; ++i) {
        for (int j = 0; j < 2; ++j) {
          m.payoff_x += px[i] * py[j] * x[i][j];
          m.payoff_y += px[i] * py[j] * y[i][j];
        }
      }
      out.mixed = m;
    }
  }
  return out;
}

}  // namespace zdlab
