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

#ifndef ZDLAB_SERVICE_HPP_
#define ZDLAB_SERVICE_HPP_

#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "zdlab/errors.hpp"
#include "zdlab/io.hpp"
#include "zdlab/rng.hpp"

namespace zdlab {

// Error carrying the HTTP status and the JSON body to send back.
class ApiError : public Error {
 public:
  ApiError(int status, const std::string& message, json detail = json::object())
      : Error(message), status_(status), detail_(std::move(detail)) {}
  int status() const { return status_; }
  json body() const;

 private:
  int status_;
  json detail_;
};

// One human (X) against one machine strategy (Y). The machine's move for the
// next round is drawn before the human's move for that round is accepted.
class Session {
 public:
  Session(std::string id, StageGame game, StrategySpec spec, std::uint64_t seed);

  const std::string& id() const { return id_; }
  const StageGame& game() const { return game_; }
  long round() const { return static_cast<long>(history_.size()); }
  bool closed() const { return closed_; }
  std::uint64_t seed() const { return seed_; }

  // Plays one round and returns the move response body.
  json play(Action human);
  void close() { closed_ = true; }

  json state() const;
  json disclosed_info() const;
  json snapshot() const;  // enough to rebuild by replay
  static std::unique_ptr<Session> from_snapshot(const json& j);

  // Only for tests: the committed machine move, not exposed over HTTP.
  Action committed_move() const { return pending_; }

 private:
  std::string id_;
  StageGame game_;
  StrategySpec spec_;
  std::uint64_t seed_;
  std::optional<StrategyVector> machine_p_;
  AgentPtr machine_;
  Rng rng_;
  Action pending_ = Action::kUp;
  std::vector<std::pair<Action, Action>> history_;
  double sum_x_ = 0.0, sum_y_ = 0.0;
  bool closed_ = false;
  std::string created_at_;
};

// In-memory session map with per-session locking. When `snapshot_dir` is
// set every change is written to <dir>/<id>.json and sessions found there
// are loaded on construction.
class SessionStore {
 public:
  using IdGenerator = std::function<std::string()>;

  explicit SessionStore(std::optional<std::filesystem::path> snapshot_dir = {},
                        IdGenerator ids = {});

  // Each returns the response body or throws ApiError.
  json create(const json& body);
  json move(const std::string& id, const json& body);
  json get(const std::string& id);
  json close(const std::string& id);

  std::size_t size() const;

 private:
  struct Entry {
    std::mutex mu;
    std::unique_ptr<Session> session;
  };
  std::shared_ptr<Entry> find(const std::string& id) const;
  void persist(const Session& s) const;

  mutable std::shared_mutex mu_;
  std::map<std::string, std::shared_ptr<Entry>> sessions_;
  std::optional<std::filesystem::path> dir_;
  IdGenerator ids_;
};

std::string random_session_id();

}  // namespace zdlab

#endif  // ZDLAB_SERVICE_HPP_
