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

#include "zdlab/service.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <random>

#include "zdlab/errors.hpp"
#include "zdlab/region.hpp"

namespace zdlab {
namespace {

std::string now_utc() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

json pair_json(double human, double machine) {
  return {{"human", human}, {"machine", machine}};
}

const json& field(const json& body, const char* name) {
  if (!body.contains(name)) {
    throw ApiError(422, std::string("missing field '") + name + "'");
  }
  return body.at(name);
}

Action action_from(const json& body) {
  if (!body.is_object()) throw ApiError(422, "body must be a JSON object");
  const json& a = field(body, "action");
  if (!a.is_string()) throw ApiError(422, "'action' must be \"up\" or \"down\"");
  auto parsed = parse_action(a.get<std::string>());
  if (!parsed) throw ApiError(422, "'action' must be \"up\" or \"down\"");
  return *parsed;
}

std::uint64_t random_seed() {
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

}  // namespace

json ApiError::body() const {
  json j = detail_;
  j["error"] = what();
  j["status"] = status_;
  return j;
}

std::string random_session_id() {
  std::random_device rd;
  static constexpr char kHex[] = "0123456789abcdef";
  std::string id;
  for (int w = 0; w < 4; ++w) {
    std::uint32_t v = rd();
    for (int i = 0; i < 8; ++i, v >>= 4) id.push_back(kHex[v & 0xf]);
  }
  return id;
}

Session::Session(std::string id, StageGame game, StrategySpec spec,
                 std::uint64_t seed)
    : id_(std::move(id)),
      game_(std::move(game)),
      spec_(std::move(spec)),
      seed_(seed),
      rng_(derive_seed(seed, 1)),
      created_at_(now_utc()) {
  // Same stream the simulator gives player Y for this seed.
  machine_p_ = resolve_memory_one(spec_, game_, Player::kY);
  machine_ = make_agent(spec_, game_, Player::kY);
  machine_->reset(game_, Player::kY);
  pending_ = machine_->decide(rng_);
}

json Session::play(Action human) {
  if (closed_) throw ApiError(409, "session is closed");
  const Action machine = pending_;
  const double px = game_.payoff(Player::kX, human, machine);
  const double py = game_.payoff(Player::kY, human, machine);
  machine_->observe(machine, human, py);
  history_.emplace_back(human, machine);
  sum_x_ += px;
  sum_y_ += py;
  pending_ = machine_->decide(rng_);

  const double t = static_cast<double>(history_.size());
  json j;
  j["session_id"] = id_;
  j["round"] = round();
  j["human_action"] = std::string(to_string(human));
  j["machine_action"] = std::string(to_string(machine));
  j["stage_payoffs"] = pair_json(px, py);
  j["running_averages"] = pair_json(sum_x_ / t, sum_y_ / t);
  return j;
}

json Session::disclosed_info() const {
  json j;
  j["human_player"] = "X";
  j["machine_player"] = "Y";
  j["strategy"] = strategy_spec_to_json(spec_);
  j["memory_one"] = machine_p_ ? json{{"p", to_json(machine_p_->p())},
                                      {"first_move", machine_p_->first_move()}}
                               : json(nullptr);
  const auto region = payoff_region(game_);
  json hull = json::array();
  for (const auto& p : region.hull) hull.push_back({p.x, p.y});
  j["hull"] = std::move(hull);
  if (spec_.zd) {
    const auto line = constraint_line(game_, *spec_.zd, spec_.name, Player::kY);
    json c = constraint_line_to_json(line);
    if (auto* e = std::get_if<ExtortionSpec>(&*spec_.zd)) {
      c["delta"] = e->delta;
      c["chi"] = e->chi;
    } else if (auto* m = std::get_if<MischiefSpec>(&*spec_.zd)) {
      c["target"] = m->target;
    }
    j["constraint"] = std::move(c);
  } else {
    j["constraint"] = nullptr;
  }
  return j;
}

json Session::state() const {
  json j;
  j["schema"] = kSessionSchema;
  j["session_id"] = id_;
  j["status"] = closed_ ? "closed" : "active";
  j["created_at"] = created_at_;
  j["seed"] = seed_;
  j["game"] = game_to_json(game_);
  j["round"] = round();
  json hist = json::array();
  long r = 0;
  for (auto [h, m] : history_) {
    hist.push_back({{"round", ++r},
                    {"human", std::string(to_string(h))},
                    {"machine", std::string(to_string(m))},
                    {"payoffs", pair_json(game_.payoff(Player::kX, h, m),
                                          game_.payoff(Player::kY, h, m))}});
  }
  j["history"] = std::move(hist);
  if (history_.empty()) {
    j["running_averages"] = nullptr;
  } else {
    const double t = static_cast<double>(history_.size());
    j["running_averages"] = pair_json(sum_x_ / t, sum_y_ / t);
  }
  j["disclosed_info"] = disclosed_info();
  return j;
}

json Session::snapshot() const {
  json moves = json::array();
  for (auto [h, m] : history_) moves.push_back(std::string(to_string(h)));
  return {{"schema", kSessionSchema},
          {"session_id", id_},
          {"game", game_to_json(game_)},
          {"strategy", strategy_spec_to_json(spec_)},
          {"seed", seed_},
          {"created_at", created_at_},
          {"status", closed_ ? "closed" : "active"},
          {"moves", std::move(moves)}};
}

std::unique_ptr<Session> Session::from_snapshot(const json& j) {
  auto s = std::make_unique<Session>(j.at("session_id").get<std::string>(),
                                     game_from_json(j.at("game")),
                                     strategy_spec_from_json(j.at("strategy")),
                                     j.at("seed").get<std::uint64_t>());
  s->created_at_ = j.value("created_at", s->created_at_);
  for (const auto& m : j.at("moves")) {
    auto a = parse_action(m.get<std::string>());
    if (!a) throw InvalidArgument("bad move in snapshot");
    s->play(*a);
  }
  s->closed_ = j.value("status", "active") == "closed";
  return s;
}

SessionStore::SessionStore(std::optional<std::filesystem::path> snapshot_dir,
                           IdGenerator ids)
    : dir_(std::move(snapshot_dir)), ids_(ids ? std::move(ids) : random_session_id) {
  if (!dir_) return;
  std::filesystem::create_directories(*dir_);
  for (const auto& f : std::filesystem::directory_iterator(*dir_)) {
    if (f.path().extension() != ".json") continue;
    auto entry = std::make_shared<Entry>();
    entry->session = Session::from_snapshot(load_json_file(f.path().string()));
    sessions_[entry->session->id()] = std::move(entry);
  }
}

std::shared_ptr<SessionStore::Entry> SessionStore::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw ApiError(404, "unknown session '" + id + "'");
  return it->second;
}

void SessionStore::persist(const Session& s) const {
  if (!dir_) return;
  const auto final_path = *dir_ / (s.id() + ".json");
  const auto tmp = *dir_ / (s.id() + ".json.tmp");
  {
    std::ofstream out(tmp);
    out << s.snapshot().dump();
  }
  std::filesystem::rename(tmp, final_path);
}

json SessionStore::create(const json& body) {
  if (!body.is_object()) throw ApiError(422, "body must be a JSON object");
  StageGame game = canonical_game(CanonicalGame::kPD);
  StrategySpec spec;
  std::uint64_t seed = 0;
  try {
    game = game_from_json(field(body, "game"));
    const json& strat = body.contains("strategy_spec") ? body.at("strategy_spec")
                                                       : field(body, "strategy");
    spec = strategy_spec_from_json(strat);
    if (body.contains("seed") && !body.at("seed").is_null()) {
      if (!body.at("seed").is_number_unsigned()) {
        throw InvalidArgument("'seed' must be a non-negative integer");
      }
      seed = body.at("seed").get<std::uint64_t>();
    } else {
      seed = random_seed();
    }
  } catch (const InvalidArgument& e) {
    throw ApiError(422, e.what());
  } catch (const json::exception& e) {
    throw ApiError(422, e.what());
  }

  std::unique_ptr<Session> session;
  try {
    session = std::make_unique<Session>(ids_(), game, spec, seed);
  } catch (const InfeasibleError& e) {
    throw ApiError(400, e.what(), {{"violations", e.violations()}});
  } catch (const DomainError& e) {
    throw ApiError(400, e.what());
  } catch (const InvalidArgument& e) {
    throw ApiError(422, e.what());
  }

  json out;
  out["session_id"] = session->id();
  out["seed"] = seed;
  out["game"] = game_to_json(session->game());
  out["disclosed_info"] = session->disclosed_info();
  persist(*session);
  auto entry = std::make_shared<Entry>();
  entry->session = std::move(session);
  std::unique_lock lock(mu_);
  sessions_[out["session_id"].get<std::string>()] = std::move(entry);
  return out;
}

json SessionStore::move(const std::string& id, const json& body) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  if (entry->session->closed()) throw ApiError(409, "session is closed");
  const Action a = action_from(body);
  json out = entry->session->play(a);
  persist(*entry->session);
  return out;
}

json SessionStore::get(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  return entry->session->state();
}

json SessionStore::close(const std::string& id) {
  auto entry = find(id);
  std::lock_guard lock(entry->mu);
  entry->session->close();
  persist(*entry->session);
  return entry->session->state();
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

}  // namespace zdlab
