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

#include "zdlab/http.hpp"

#include "httplib.h"

namespace zdlab {
namespace {

void send(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json; charset=utf-8");
}

// Runs `fn` and maps errors onto status codes.
template <typename F>
void guarded(httplib::Response& res, int ok_status, F&& fn) {
  try {
    send(res, ok_status, fn());
  } catch (const ApiError& e) {
    send(res, e.status(), e.body());
  } catch (const json::parse_error& e) {
    send(res, 422, {{"error", std::string("malformed JSON: ") + e.what()},
                    {"status", 422}});
  } catch (const std::exception& e) {
    send(res, 500, {{"error", e.what()}, {"status", 500}});
  }
}

json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return json::object();
  return json::parse(req.body);
}

}  // namespace

void mount_routes(httplib::Server& server, SessionStore& store,
                  const std::string& cors_origin) {
  server.set_default_headers({{"Access-Control-Allow-Origin", cors_origin},
                              {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                              {"Access-Control-Allow-Headers", "Content-Type"}});
  server.Options(R"(.*)", [](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
  });
  server.Get("/health", [](const httplib::Request&, httplib::Response& res) {
    send(res, 200, {{"status", "ok"}});
  });
  server.Post("/sessions", [&store](const httplib::Request& req,
                                    httplib::Response& res) {
    guarded(res, 201, [&] { return store.create(parse_body(req)); });
  });
  server.Get(R"(/sessions/([^/]+))", [&store](const httplib::Request& req,
                                              httplib::Response& res) {
    guarded(res, 200, [&] { return store.get(req.matches[1]); });
  });
  server.Post(R"(/sessions/([^/]+)/moves)", [&store](const httplib::Request& req,
                                                     httplib::Response& res) {
    guarded(res, 200, [&] { return store.move(req.matches[1], parse_body(req)); });
  });
  server.Post(R"(/sessions/([^/]+)/close)", [&store](const httplib::Request& req,
                                                     httplib::Response& res) {
    guarded(res, 200, [&] { return store.close(req.matches[1]); });
  });
}

bool serve_forever(SessionStore& store, const std::string& host, int port,
                   const std::string& cors_origin) {
  httplib::Server server;
  mount_routes(server, store, cors_origin);
  return server.listen(host, port);
}

}  // namespace zdlab
