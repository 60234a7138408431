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

#ifndef ZDLAB_HTTP_HPP_
#define ZDLAB_HTTP_HPP_

#include <string>

#include "zdlab/service.hpp"

namespace httplib {
class Server;
}

namespace zdlab {

// Registers the session routes and CORS handling on `server`.
//   POST /sessions               create, 201
//   GET  /sessions/{id}          state
//   POST /sessions/{id}/moves    play one round
//   POST /sessions/{id}/close    close
//   GET  /health
void mount_routes(httplib::Server& server, SessionStore& store,
                  const std::string& cors_origin = "*");

// Blocks until the server stops. Returns false if the bind failed.
bool serve_forever(SessionStore& store, const std::string& host, int port,
                   const std::string& cors_origin = "*");

}  // namespace zdlab

#endif  // ZDLAB_HTTP_HPP_
