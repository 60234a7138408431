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

#ifndef ZDLAB_IO_HPP_
#define ZDLAB_IO_HPP_

#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "zdlab/agents.hpp"
#include "zdlab/evolution.hpp"
#include "zdlab/game.hpp"
#include "zdlab/region.hpp"
#include "zdlab/sim.hpp"
#include "zdlab/zd.hpp"

namespace zdlab {

using json = nlohmann::json;

// Version tags written into every JSON document and checked on read.
inline constexpr const char* kTraceSchema = "zdlab.trace/1";
inline constexpr const char* kBatchSchema = "zdlab.batch/1";
inline constexpr const char* kRegionSchema = "zdlab.region/1";
inline constexpr const char* kEvolveSchema = "zdlab.evolve/1";
inline constexpr const char* kSynthSchema = "zdlab.synth/1";
inline constexpr const char* kPayoffsSchema = "zdlab.payoffs/1";
inline constexpr const char* kRespondSchema = "zdlab.respond/1";
inline constexpr const char* kSessionSchema = "zdlab.session/1";

json to_json(const Vec4& v);
Vec4 vec4_from_json(const json& j, std::string_view what);

// "pd" | {"kind": "symmetric"|"battle_of_sexes"|"raw", "payoffs": ...,
// "name"?}. Symmetric and BS payoffs are [R,S,T,P] / [F,C,L,D]; raw payoffs
// are {"x": [[..],[..]], "y": [[..],[..]]} indexed [a_X][a_Y].
StageGame game_from_json(const json& j);
json game_to_json(const StageGame& g);

// Command-line form: pd | sh | gc | bs | sym:R,S,T,P | bos:F,C,L,D |
// raw:x00,x01,x10,x11;y00,y01,y10,y11 | a JSON document.
StageGame parse_game(std::string_view token);

// "delta=1,chi=10" or "delta=1 chi=10".
std::map<std::string, double> parse_params(std::string_view text);

// type is "extortion", "mischief" or "linear". Throws InvalidArgument on
// missing or unknown keys.
ZdSpec zd_spec_from_params(std::string_view type,
                           const std::map<std::string, double>& params);

// {"type": t, "params": {...}}, {"type": t, ...params} or {t: {...params}}.
ZdSpec zd_spec_from_json(const json& j);
json zd_spec_to_json(const ZdSpec& spec);
std::string zd_spec_type(const ZdSpec& spec);

struct StrategySpec {
  enum class Kind { kZd, kMemoryOne, kLearner, kMemoryTwo };
  Kind kind = Kind::kMemoryOne;
  std::string name;  // tft, allu, alld, random, mem1, zd, learner, mem2-dd
  std::optional<ZdSpec> zd;
  std::optional<StrategyVector> mem1;
};

// tft | allu | alld | random | learner | mem2-dd | mem1:p1,p2,p3,p4[,first]
// | extortion:delta=..,chi=..[,phi=..] | mischief:target=..[,beta=..]
// | linear:alpha=..,beta=..,gamma=..
StrategySpec parse_strategy(std::string_view token);
StrategySpec strategy_spec_from_json(const json& j);
json strategy_spec_to_json(const StrategySpec& s);

// ZD specs are synthesized for `side`; throws InfeasibleError.
AgentPtr make_agent(const StrategySpec& s, const StageGame& game, Player side);
// The memory-one vector behind `s`, if it has one.
std::optional<StrategyVector> resolve_memory_one(const StrategySpec& s,
                                                 const StageGame& game,
                                                 Player side);

json trace_to_json(const GameTrace& tr);
void write_trace_csv(std::ostream& os, const GameTrace& tr);
json batch_to_json(const BatchStats& b);
void write_batch_csv(std::ostream& os, const BatchStats& b);

struct ConstraintLine {
  std::string label;
  std::string type;
  ZDLinear linear;
  bool feasible = false;
  std::vector<std::string> violations;
  std::optional<StrategyVector> strategy;
  std::optional<std::pair<Point2, Point2>> segment;  // clipped to the hull
};

// The enforced line alpha*pi_X + beta*pi_Y + gamma = 0 of a spec. Infeasible
// specs still get their line, flagged feasible=false.
ConstraintLine constraint_line(const StageGame& game, const ZdSpec& spec,
                               std::string label = {},
                               Player side = Player::kX);
json constraint_line_to_json(const ConstraintLine& line);
json region_to_json(const StageGame& game, const PayoffRegion& region,
                    const std::vector<ConstraintLine>& lines);

json load_json_file(const std::string& path);

}  // namespace zdlab

#endif  // ZDLAB_IO_HPP_
