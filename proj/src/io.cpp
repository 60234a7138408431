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

#include "zdlab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>

#include "zdlab/errors.hpp"

namespace zdlab {
namespace {

double to_double(std::string_view s, std::string_view what) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || end != s.data() + s.size() || s.empty()) {
    throw InvalidArgument("cannot parse " + std::string(what) + " from '" +
                          std::string(s) + "'");
  }
  return v;
}

std::vector<double> number_list(std::string_view s, std::string_view what) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= s.size()) {
    const std::size_t comma = s.find(',', start);
    const auto piece = s.substr(start, comma == std::string_view::npos
                                           ? std::string_view::npos
                                           : comma - start);
    out.push_back(to_double(piece, what));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

Vec4 four(const std::vector<double>& v, std::string_view what) {
  if (v.size() != 4) {
    throw InvalidArgument(std::string(what) + " needs exactly 4 numbers");
  }
  return {v[0], v[1], v[2], v[3]};
}

double get_number(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number()) {
    throw InvalidArgument(std::string("missing numeric field '") + key + "'");
  }
  return j.at(key).get<double>();
}

std::optional<double> opt_number(const std::map<std::string, double>& m,
                                 const std::string& key) {
  auto it = m.find(key);
  if (it == m.end()) return std::nullopt;
  return it->second;
}

double req_number(const std::map<std::string, double>& m, const std::string& key,
                  std::string_view type) {
  auto v = opt_number(m, key);
  if (!v) {
    throw InvalidArgument(std::string(type) + " spec needs '" + key + "'");
  }
  return *v;
}

void only_keys(const std::map<std::string, double>& m,
               std::initializer_list<const char*> keys, std::string_view type) {
  for (const auto& [k, v] : m) {
    bool ok = false;
    for (const char* allowed : keys) ok |= k == allowed;
    if (!ok) {
      throw InvalidArgument("unknown " + std::string(type) + " parameter '" + k +
                            "'");
    }
  }
}

json matrix_json(const PayoffMatrix& m) {
  return json::array({json::array({m[0][0], m[0][1]}),
                      json::array({m[1][0], m[1][1]})});
}

PayoffMatrix matrix_from_json(const json& j, std::string_view what) {
  PayoffMatrix m{};
  if (!j.is_array() || j.size() != 2) {
    throw InvalidArgument(std::string(what) + " must be a 2x2 array");
  }
  for (std::size_t r = 0; r < 2; ++r) {
    if (!j[r].is_array() || j[r].size() != 2) {
      throw InvalidArgument(std::string(what) + " must be a 2x2 array");
    }
    for (std::size_t c = 0; c < 2; ++c) {
      if (!j[r][c].is_number()) {
        throw InvalidArgument(std::string(what) + " entries must be numbers");
      }
      m[r][c] = j[r][c].get<double>();
    }
  }
  return m;
}

std::string outcome_string(Action a, Action b) {
  return std::string(to_string(a).substr(0, 1)) +
         std::string(to_string(b).substr(0, 1));
}

}  // namespace

json to_json(const Vec4& v) { return json::array({v[0], v[1], v[2], v[3]}); }

Vec4 vec4_from_json(const json& j, std::string_view what) {
  if (!j.is_array() || j.size() != 4) {
    throw InvalidArgument(std::string(what) + " must be an array of 4 numbers");
  }
  Vec4 v{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (!j[k].is_number()) {
      throw InvalidArgument(std::string(what) + " must be an array of 4 numbers");
    }
    v[k] = j[k].get<double>();
  }
  return v;
}

StageGame game_from_json(const json& j) {
  if (j.is_string()) return parse_game(j.get<std::string>());
  if (!j.is_object()) throw InvalidArgument("game must be a string or object");
  const std::string kind = j.value("kind", "");
  const std::string name = j.value("name", "");
  if (!j.contains("payoffs")) {
    if (auto c = parse_canonical(kind)) return canonical_game(*c);
    throw InvalidArgument("game object needs 'payoffs'");
  }
  const json& pay = j.at("payoffs");
  if (kind == "symmetric") {
    const Vec4 v = vec4_from_json(pay, "symmetric payoffs");
    return StageGame::symmetric(v[0], v[1], v[2], v[3], name);
  }
  if (kind == "battle_of_sexes") {
    const Vec4 v = vec4_from_json(pay, "battle_of_sexes payoffs");
    return StageGame::battle_of_sexes(v[0], v[1], v[2], v[3], name);
  }
  if (kind == "raw") {
    if (!pay.is_object() || !pay.contains("x") || !pay.contains("y")) {
      throw InvalidArgument("raw payoffs need 'x' and 'y' matrices");
    }
    return StageGame::raw(matrix_from_json(pay.at("x"), "payoffs.x"),
                          matrix_from_json(pay.at("y"), "payoffs.y"), name);
  }
  throw InvalidArgument("unknown game kind '" + kind + "'");
}

json game_to_json(const StageGame& g) {
  json j;
  j["kind"] = std::string(to_string(g.kind()));
  if (!g.name().empty()) j["name"] = g.name();
  if (g.kind() == GameKind::kRaw) {
    j["payoffs"] = {{"x", matrix_json(g.matrix(Player::kX))},
                    {"y", matrix_json(g.matrix(Player::kY))}};
  } else {
    j["payoffs"] = to_json(g.parameters());
  }
  const auto s = g.payoff_vectors();
  j["s_x"] = to_json(s.sx);
  j["s_y"] = to_json(s.sy);
  return j;
}

StageGame parse_game(std::string_view token) {
  if (auto c = parse_canonical(token)) return canonical_game(*c);
  if (!token.empty() && token.front() == '{') {
    json j;
    try {
      j = json::parse(token);
    } catch (const json::parse_error& e) {
      throw InvalidArgument(std::string("bad game JSON: ") + e.what());
    }
    return game_from_json(j);
  }
  const auto colon = token.find(':');
  if (colon == std::string_view::npos) {
    throw InvalidArgument("unknown game '" + std::string(token) +
                          "' (expected pd, sh, gc, bs, sym:, bos: or raw:)");
  }
  const auto kind = token.substr(0, colon);
  const auto body = token.substr(colon + 1);
  if (kind == "sym") {
    const Vec4 v = four(number_list(body, "payoff"), "sym:");
    return StageGame::symmetric(v[0], v[1], v[2], v[3]);
  }
  if (kind == "bos") {
    const Vec4 v = four(number_list(body, "payoff"), "bos:");
    return StageGame::battle_of_sexes(v[0], v[1], v[2], v[3]);
  }
  if (kind == "raw") {
    const auto semi = body.find(';');
    if (semi == std::string_view::npos) {
      throw InvalidArgument("raw: needs x00,x01,x10,x11;y00,y01,y10,y11");
    }
    const Vec4 x = four(number_list(body.substr(0, semi), "payoff"), "raw: x");
    const Vec4 y = four(number_list(body.substr(semi + 1), "payoff"), "raw: y");
    return StageGame::raw({{{x[0], x[1]}, {x[2], x[3]}}},
                          {{{y[0], y[1]}, {y[2], y[3]}}});
  }
  throw InvalidArgument("unknown game kind '" + std::string(kind) + "'");
}

std::map<std::string, double> parse_params(std::string_view text) {
  std::map<std::string, double> out;
  std::size_t i = 0;
  while (i < text.size()) {
    while (i < text.size() && (text[i] == ',' || text[i] == ' ')) ++i;
    if (i >= text.size()) break;
    std::size_t j = i;
    while (j < text.size() && text[j] != ',' && text[j] != ' ') ++j;
    const auto item = text.substr(i, j - i);
    const auto eq = item.find('=');
    if (eq == std::string_view::npos || eq == 0) {
      throw InvalidArgument("expected key=value, got '" + std::string(item) + "'");
    }
    const std::string key(item.substr(0, eq));
    if (out.count(key)) throw InvalidArgument("duplicate parameter '" + key + "'");
    out[key] = to_double(item.substr(eq + 1), key);
    i = j;
  }
  return out;
}

ZdSpec zd_spec_from_params(std::string_view type,
                           const std::map<std::string, double>& p) {
  if (type == "extortion") {
    only_keys(p, {"delta", "chi", "phi"}, type);
    return ExtortionSpec{req_number(p, "delta", type), req_number(p, "chi", type),
                         opt_number(p, "phi")};
  }
  if (type == "mischief") {
    only_keys(p, {"target", "beta"}, type);
    return MischiefSpec{req_number(p, "target", type), opt_number(p, "beta")};
  }
  if (type == "linear") {
    only_keys(p, {"alpha", "beta", "gamma"}, type);
    return ZDLinear{req_number(p, "alpha", type), req_number(p, "beta", type),
                    req_number(p, "gamma", type)};
  }
  throw InvalidArgument("unknown ZD spec type '" + std::string(type) + "'");
}

ZdSpec zd_spec_from_json(const json& j) {
  if (!j.is_object()) throw InvalidArgument("ZD spec must be an object");
  std::string type;
  json params;
  if (j.contains("type")) {
    if (!j.at("type").is_string()) throw InvalidArgument("'type' must be a string");
    type = j.at("type").get<std::string>();
    if (j.contains("params")) {
      params = j.at("params");
    } else {
      params = j;
      params.erase("type");
    }
  } else if (j.size() == 1) {
    type = j.begin().key();
    params = j.begin().value();
  } else {
    throw InvalidArgument("ZD spec needs a 'type'");
  }
  if (!params.is_object()) throw InvalidArgument("ZD spec params must be an object");
  std::map<std::string, double> m;
  for (auto it = params.begin(); it != params.end(); ++it) {
    if (it.value().is_null()) continue;
    if (!it.value().is_number()) {
      throw InvalidArgument("ZD parameter '" + it.key() + "' must be a number");
    }
    m[it.key()] = it.value().get<double>();
  }
  return zd_spec_from_params(type, m);
}

std::string zd_spec_type(const ZdSpec& spec) {
  switch (spec.index()) {
    case 0: return "mischief";
    case 1: return "extortion";
    default: return "linear";
  }
}

json zd_spec_to_json(const ZdSpec& spec) {
  json params = json::object();
  if (auto* m = std::get_if<MischiefSpec>(&spec)) {
    params["target"] = m->target;
    if (m->beta) params["beta"] = *m->beta;
  } else if (auto* e = std::get_if<ExtortionSpec>(&spec)) {
    params["delta"] = e->delta;
    params["chi"] = e->chi;
    if (e->phi) params["phi"] = *e->phi;
  } else {
    const auto& z = std::get<ZDLinear>(spec);
    params = {{"alpha", z.alpha}, {"beta", z.beta}, {"gamma", z.gamma}};
  }
  return {{"type", zd_spec_type(spec)}, {"params", params}};
}

StrategySpec parse_strategy(std::string_view token) {
  StrategySpec s;
  auto mem1 = [&](StrategyVector v, const char* name) {
    s.kind = StrategySpec::Kind::kMemoryOne;
    s.name = name;
    s.mem1 = v;
    return s;
  };
  if (token == "tft") return mem1(StrategyVector::tit_for_tat(), "tft");
  if (token == "allu") return mem1(StrategyVector::all_up(), "allu");
  if (token == "alld") return mem1(StrategyVector::all_down(), "alld");
  if (token == "random" || token == "randomizer") {
    return mem1(StrategyVector::randomizer(), "random");
  }
  if (token == "learner") {
    s.kind = StrategySpec::Kind::kLearner;
    s.name = "learner";
    return s;
  }
  if (token == "mem2-dd") {
    s.kind = StrategySpec::Kind::kMemoryTwo;
    s.name = "mem2-dd";
    return s;
  }
  const auto colon = token.find(':');
  const auto head = token.substr(0, colon);
  const auto body = colon == std::string_view::npos ? std::string_view{}
                                                    : token.substr(colon + 1);
  if (head == "mem1") {
    const auto v = number_list(body, "probability");
    if (v.size() != 4 && v.size() != 5) {
      throw InvalidArgument("mem1: needs p1,p2,p3,p4[,first_move]");
    }
    return mem1(StrategyVector({v[0], v[1], v[2], v[3]}, v.size() == 5 ? v[4] : 0.5),
                "mem1");
  }
  if (head == "extortion" || head == "mischief" || head == "linear") {
    s.kind = StrategySpec::Kind::kZd;
    s.name = std::string(head);
    s.zd = zd_spec_from_params(head, parse_params(body));
    return s;
  }
  throw InvalidArgument("unknown strategy '" + std::string(token) + "'");
}

StrategySpec strategy_spec_from_json(const json& j) {
  if (j.is_string()) return parse_strategy(j.get<std::string>());
  if (!j.is_object()) throw InvalidArgument("strategy must be a string or object");
  if (j.contains("memory_one")) {
    const json& m = j.at("memory_one");
    StrategySpec s;
    s.kind = StrategySpec::Kind::kMemoryOne;
    s.name = "mem1";
    if (m.is_array()) {
      s.mem1 = StrategyVector(vec4_from_json(m, "memory_one"));
    } else {
      const double first =
          m.contains("first_move") ? get_number(m, "first_move") : 0.5;
      s.mem1 = StrategyVector(vec4_from_json(m.at("p"), "memory_one.p"), first);
    }
    return s;
  }
  if (j.contains("type") && j.at("type").is_string()) {
    const auto t = j.at("type").get<std::string>();
    if (t != "extortion" && t != "mischief" && t != "linear") {
      return parse_strategy(t);
    }
  }
  StrategySpec s;
  s.kind = StrategySpec::Kind::kZd;
  s.zd = zd_spec_from_json(j);
  s.name = zd_spec_type(*s.zd);
  return s;
}

json strategy_spec_to_json(const StrategySpec& s) {
  switch (s.kind) {
    case StrategySpec::Kind::kZd:
      return zd_spec_to_json(*s.zd);
    case StrategySpec::Kind::kMemoryOne:
      if (s.name != "mem1") return s.name;
      return {{"memory_one",
               {{"p", to_json(s.mem1->p())}, {"first_move", s.mem1->first_move()}}}};
    default:
      return s.name;
  }
}

std::optional<StrategyVector> resolve_memory_one(const StrategySpec& s,
                                                 const StageGame& game,
                                                 Player side) {
  switch (s.kind) {
    case StrategySpec::Kind::kZd:
      return synthesize(game, *s.zd, side);
    case StrategySpec::Kind::kMemoryOne:
      return s.mem1;
    default:
      return std::nullopt;
  }
}

AgentPtr make_agent(const StrategySpec& s, const StageGame& game, Player side) {
  switch (s.kind) {
    case StrategySpec::Kind::kLearner:
      return std::make_unique<ReinforcementLearner>();
    case StrategySpec::Kind::kMemoryTwo:
      return std::make_unique<MemoryTwoAgent>(MemoryTwoAgent::down_after_two_downs());
    default:
      return make_memory_one(*resolve_memory_one(s, game, side), s.name);
  }
}

json trace_to_json(const GameTrace& tr) {
  json j;
  j["schema"] = kTraceSchema;
  j["seed"] = tr.seed;
  j["iterations"] = tr.iterations;
  j["t"] = tr.t;
  j["avg_x"] = tr.avg_x;
  j["avg_y"] = tr.avg_y;
  j["final"] = {tr.final_x, tr.final_y};
  if (!tr.outcomes.empty()) {
    json out = json::array();
    for (auto [a, b] : tr.outcomes) out.push_back(outcome_string(a, b));
    j["outcomes"] = std::move(out);
  }
  return j;
}

void write_trace_csv(std::ostream& os, const GameTrace& tr) {
  os << "t,avg_x,avg_y\n" << std::setprecision(17);
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    os << tr.t[i] << ',' << tr.avg_x[i] << ',' << tr.avg_y[i] << '\n';
  }
}

json batch_to_json(const BatchStats& b) {
  json j;
  j["schema"] = kBatchSchema;
  j["n_games"] = b.n_games;
  j["iterations"] = b.iterations;
  j["master_seed"] = b.master_seed;
  j["t"] = b.t;
  j["mean_x"] = b.mean_x;
  j["mean_y"] = b.mean_y;
  if (!b.msd_x.empty()) {
    j["msd_x"] = b.msd_x;
    j["msd_y"] = b.msd_y;
  }
  j["final_mean"] = {b.final_mean_x, b.final_mean_y};
  j["final_se"] = {b.final_se_x, b.final_se_y};
  return j;
}

void write_batch_csv(std::ostream& os, const BatchStats& b) {
  os << "t,avg_x,avg_y\n" << std::setprecision(17);
  for (std::size_t i = 0; i < b.t.size(); ++i) {
    os << b.t[i] << ',' << b.mean_x[i] << ',' << b.mean_y[i] << '\n';
  }
}

ConstraintLine constraint_line(const StageGame& game, const ZdSpec& spec,
                               std::string label, Player side) {
  ConstraintLine line;
  line.label = std::move(label);
  line.type = zd_spec_type(spec);
  try {
    line.strategy = synthesize(game, spec, side);
    line.linear = enforced_linear(game, spec, side);
    line.feasible = true;
  } catch (const InfeasibleError& e) {
    line.violations = e.violations();
    if (line.violations.empty()) line.violations.push_back(e.what());
    // The line does not depend on the scale, so any nonzero one will do.
    if (auto* m = std::get_if<MischiefSpec>(&spec)) {
      line.linear = mischief_linear(*m, m->beta.value_or(-1.0), side);
    } else if (auto* x = std::get_if<ExtortionSpec>(&spec)) {
      line.linear = extortion_linear(*x, x->phi.value_or(1.0), side);
    } else {
      line.linear = std::get<ZDLinear>(spec);
    }
  }
  if (!line.linear.is_zero()) {
    line.segment = clip_line(line.linear.alpha, line.linear.beta,
                             line.linear.gamma, payoff_region(game).hull);
  }
  return line;
}

json constraint_line_to_json(const ConstraintLine& l) {
  json o;
  o["label"] = l.label;
  o["type"] = l.type;
  o["alpha"] = l.linear.alpha;
  o["beta"] = l.linear.beta;
  o["gamma"] = l.linear.gamma;
  o["feasible"] = l.feasible;
  if (!l.violations.empty()) o["violations"] = l.violations;
  if (l.strategy) o["p"] = to_json(l.strategy->p());
  if (l.segment) {
    o["segment"] = {{l.segment->first.x, l.segment->first.y},
                    {l.segment->second.x, l.segment->second.y}};
  } else {
    o["segment"] = nullptr;
  }
  return o;
}

json region_to_json(const StageGame& game, const PayoffRegion& region,
                    const std::vector<ConstraintLine>& lines) {
  auto pts = [](const std::vector<Point2>& v) {
    json a = json::array();
    for (const auto& p : v) a.push_back({p.x, p.y});
    return a;
  };
  json j;
  j["schema"] = kRegionSchema;
  j["game"] = game_to_json(game);
  j["hull"] = pts(region.hull);
  j["nash_points"] = pts(region.nash_points);
  if (region.folk_anchor) {
    j["folk_anchor"] = {region.folk_anchor->x, region.folk_anchor->y};
  }
  j["folk_region"] = pts(region.folk_region);
  json ls = json::array();
  for (const auto& l : lines) ls.push_back(constraint_line_to_json(l));
  j["lines"] = std::move(ls);
  return j;
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidArgument("bad JSON in '" + path + "': " + e.what());
  }
}

}  // namespace zdlab
