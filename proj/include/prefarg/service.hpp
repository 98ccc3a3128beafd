// Copyright 2026 The prefarg Authors
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

// Session-oriented JSON API over HTTP/1.1.
//
//   GET  /packs
//   POST /sessions                    {pack}
//   GET  /sessions/{id}
//   POST /sessions/{id}/evidence      {assert, retract}
//   GET  /sessions/{id}/query         ?goal=&semantics=
//   GET  /sessions/{id}/explain       ?goal=&hints=
//   GET  /sessions/{id}/conflicts
//   POST /sessions/{id}/priorities    {label, higher, lower, when}
//   POST /sessions/{id}/abduce        {goal, tier, maxSize}
//
// Every session response carries the revision it was computed at. Errors
// are {code, message, span?, revision?}.

#pragma once

#include <map>
#include <memory>
#include <string>

#include "prefarg/session.hpp"

namespace prefarg {

struct ServiceOptions {
  std::string host = "127.0.0.1";
  int port = 7878;
  std::string allowOrigin;  // empty disables CORS headers
  std::string uiDir;        // static files served at / when set
  std::string snapshotDir;  // one <id>.arg per session when set
  SolverOptions solver;
};

struct Response {
  int status = 200;
  std::string body;
};

class Service {
 public:
  explicit Service(ServiceOptions options = {}, Clock clock = utcNow);
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Routes one request. `params` holds decoded query-string values.
  Response handle(const std::string& method, const std::string& path,
                  const std::map<std::string, std::string>& params, const std::string& body);

  SessionStore& store() { return store_; }
  const ServiceOptions& options() const { return options_; }

  /// Binds host:port (port 0 picks a free one) and returns the bound port,
  /// or -1 on failure.
  int bind();

  /// Serves until stop(); call after bind().
  bool run();

  void stop();

 private:
  struct Http;

  ServiceOptions options_;
  SessionStore store_;
  std::unique_ptr<Http> http_;
};

}  // namespace prefarg
