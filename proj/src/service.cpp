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

#include "prefarg/service.hpp"

#include <optional>
#include <sstream>
#include <vector>

#include "httplib.h"
#include "prefarg/dsl.hpp"
#include "prefarg/packs.hpp"
#include "prefarg/wire.hpp"

namespace prefarg {

using wire::Json;

struct Service::Http {
  httplib::Server server;
};

namespace {

// Raised inside a handler to produce an error response.
struct Failure {
  int status;
  std::string code;
  std::string message;
  std::optional<SourceSpan> span;
};

Response reply(int status, const Json& body) { return Response{status, wire::dump(body)}; }

Response failure(const Failure& f, std::optional<std::uint64_t> revision) {
  Json body{{"code", f.code}, {"message", f.message}};
  if (f.span) body["span"] = wire::toJson(*f.span);
  if (revision) body["revision"] = *revision;
  return reply(f.status, body);
}

std::vector<std::string> splitPath(const std::string& path) {
  std::vector<std::string> out;
  std::istringstream in(path);
  std::string part;
  while (std::getline(in, part, '/'))
    if (!part.empty()) out.push_back(part);
  return out;
}

Json parseBody(const std::string& body) {
  if (body.empty()) return Json::object();
  Json j = Json::parse(body, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw Failure{400, "bad-json", "request body must be a JSON object", {}};
  return j;
}

std::vector<Literal> groundLiterals(const Json& body, const char* key) {
  std::vector<Literal> out;
  if (!body.contains(key)) return out;
  const Json& arr = body[key];
  if (!arr.is_array()) throw Failure{400, "bad-request", std::string(key) + " must be an array of literals", {}};
  for (const auto& x : arr) {
    if (!x.is_string()) throw Failure{400, "bad-request", std::string(key) + " must be an array of literals", {}};
    out.push_back(parseGoal(x.get<std::string>(), true));
  }
  return out;
}

const std::string& param(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) throw Failure{400, "missing-parameter", "missing parameter " + key, {}};
  return it->second;
}

bool truthy(const std::map<std::string, std::string>& params, const std::string& key) {
  auto it = params.find(key);
  return it != params.end() && (it->second.empty() || it->second == "1" || it->second == "true");
}

Json rulesJson(const Theory& t) {
  Json out = Json::array();
  for (const auto& r : t.rules) {
    Json j{{"label", r.label}, {"head", wire::toJson(r.head)}, {"body", wire::toJson(r.body)}};
    j["layer"] = r.layer == Layer::None ? Json(nullptr) : Json(std::string(layerName(r.layer)));
    out.push_back(std::move(j));
  }
  return out;
}

Json stateJson(const Session& s) {
  std::lock_guard lock(s.mutex());
  const Theory& t = s.theory();
  Json priorities = Json::array();
  for (const auto& p : t.priorities) priorities.push_back(wire::toJson(p));
  Json abducibles = Json::array();
  for (const auto& a : t.abducibles)
    abducibles.push_back(Json{{"predicate", a.predicate}, {"arity", a.arity}, {"negated", a.negated}});
  Json log = Json::array();
  for (const auto& e : s.log())
    log.push_back(Json{{"revision", e.revision},
                       {"action", e.asserted ? "assert" : "retract"},
                       {"literal", wire::toJson(e.literal)},
                       {"at", e.at}});
  Json sorts = Json::object();
  for (const auto& [name, members] : t.sorts) sorts[name] = members;
  return Json{{"sessionId", s.id()},
              {"source", s.source()},
              {"revision", s.revision()},
              {"theory", dsl::print(t)},
              {"facts", wire::toJson(std::vector<Literal>(t.facts.begin(), t.facts.end()))},
              {"rules", rulesJson(t)},
              {"priorities", priorities},
              {"abducibles", abducibles},
              {"sorts", sorts},
              {"domain", t.domain},
              {"evidence", wire::toJson(s.evidence())},
              {"log", log}};
}

}  // namespace

Service::Service(ServiceOptions options, Clock clock)
    : options_(std::move(options)),
      store_(options_.snapshotDir, options_.solver, std::move(clock)),
      http_(std::make_unique<Http>()) {}

Service::~Service() { stop(); }

Response Service::handle(const std::string& method, const std::string& path,
                         const std::map<std::string, std::string>& params, const std::string& body) {
  const auto parts = splitPath(path);
  std::shared_ptr<Session> session;
  try {
    if (parts.size() == 1 && parts[0] == "packs" && method == "GET") return reply(200, Json{{"packs", listPacks()}});
    if (parts.empty() || parts[0] != "sessions") throw Failure{404, "not-found", "no route for " + path, {}};

    if (parts.size() == 1) {
      if (method == "GET") return reply(200, Json{{"sessions", store_.ids()}});
      if (method != "POST") throw Failure{405, "method-not-allowed", method + " " + path, {}};
      Json j = parseBody(body);
      if (!j.contains("pack") || !j["pack"].is_string())
        throw Failure{400, "bad-request", "pack must be a string", {}};
      session = store_.create(j["pack"].get<std::string>());
      store_.persist(*session);
      return reply(201, Json{{"sessionId", session->id()}, {"revision", session->revision()}});
    }

    session = store_.get(parts[1]);
    const std::string verb = parts.size() > 2 ? parts[2] : "";
    if (parts.size() > 3) throw Failure{404, "not-found", "no route for " + path, {}};

    if (verb.empty() && method == "GET") return reply(200, stateJson(*session));

    if (verb == "evidence" && method == "POST") {
      Json j = parseBody(body);
      auto asserts = groundLiterals(j, "assert");
      auto retracts = groundLiterals(j, "retract");
      auto rev = session->updateEvidence(asserts, retracts);
      store_.persist(*session);
      return reply(200, Json{{"revision", rev}});
    }

    if (verb == "priorities" && method == "POST") {
      Json j = parseBody(body);
      PriorityRule p;
      try {
        p = wire::priorityFromJson(j);
      } catch (const wire::WireError& e) {
        throw Failure{400, "bad-request", e.what(), {}};
      }
      auto rev = session->addPriority(std::move(p));
      store_.persist(*session);
      return reply(200, Json{{"revision", rev}});
    }

    if (verb == "query" && method == "GET") {
      Literal goal = parseGoal(param(params, "goal"), false);
      SessionView view = session->view();
      if (auto it = params.find("semantics"); it != params.end()) {
        if (it->second == "preferred") view.options.semantics = Semantics::Preferred;
        else if (it->second == "grounded") view.options.semantics = Semantics::Grounded;
        else throw Failure{400, "bad-parameter", "semantics must be grounded or preferred", {}};
      }
      GroundTheory gt;
      auto verdicts = view.query(goal, &gt);
      Json out = Json::array();
      for (const auto& v : verdicts) out.push_back(wire::toJson(v, gt));
      return reply(200, Json{{"revision", view.revision}, {"verdicts", out}});
    }

    if (verb == "explain" && method == "GET") {
      Literal goal = parseGoal(param(params, "goal"), true);
      SessionView view = session->view();
      auto e = view.explain(goal, truthy(params, "hints"));
      return reply(200, Json{{"revision", view.revision}, {"explanation", wire::toJson(e)}});
    }

    if (verb == "conflicts" && method == "GET") {
      SessionView view = session->view();
      auto reports = view.conflicts();
      return reply(200, Json{{"revision", view.revision},
                             {"conflicts", wire::toJson(reports)},
                             {"unresolved", countUnresolved(reports)}});
    }

    if (verb == "abduce" && method == "POST") {
      Json j = parseBody(body);
      if (!j.contains("goal") || !j["goal"].is_string()) throw Failure{400, "bad-request", "goal must be a string", {}};
      Literal goal = parseGoal(j["goal"].get<std::string>(), true);
      std::string tier = j.value("tier", std::string("sceptical"));
      if (tier != "sceptical" && tier != "credulous")
        throw Failure{400, "bad-request", "tier must be sceptical or credulous", {}};
      Json size = j.value("maxSize", Json(2));
      if (!size.is_number_unsigned() || size.get<std::size_t>() < 1 || size.get<std::size_t>() > 4)
        throw Failure{400, "bad-request", "maxSize must be an integer between 1 and 4", {}};
      SessionView view = session->view();
      auto result = view.abduce(goal, tier == "credulous" ? Tier::Credulous : Tier::Sceptical, size.get<std::size_t>());
      Json out = wire::toJson(result);
      out["revision"] = view.revision;
      return reply(200, out);
    }

    throw Failure{404, "not-found", "no route for " + method + " " + path, {}};
  } catch (const Failure& f) {
    return failure(f, session ? std::optional(session->revision()) : std::nullopt);
  } catch (const SessionError& e) {
    return failure(Failure{e.status(), e.code(), e.what(), e.span()},
                   session ? std::optional(session->revision()) : std::nullopt);
  } catch (const EvidenceError& e) {
    return failure(Failure{409, "contradiction", e.what(), {}}, session ? std::optional(session->revision()) : std::nullopt);
  } catch (const GroundingLimitError& e) {
    return failure(Failure{422, "limit-exceeded", e.what(), {}}, session ? std::optional(session->revision()) : std::nullopt);
  } catch (const ArgumentLimitError& e) {
    return failure(Failure{422, "limit-exceeded", e.what(), {}}, session ? std::optional(session->revision()) : std::nullopt);
  } catch (const std::exception& e) {
    return failure(Failure{500, "internal", e.what(), {}}, session ? std::optional(session->revision()) : std::nullopt);
  }
}

int Service::bind() {
  auto& svr = http_->server;
  if (!options_.uiDir.empty()) svr.set_mount_point("/", options_.uiDir);
  auto cors = [this](httplib::Response& res) {
    if (options_.allowOrigin.empty()) return;
    res.set_header("Access-Control-Allow-Origin", options_.allowOrigin);
    res.set_header("Vary", "Origin");
  };
  auto dispatch = [this, cors](const httplib::Request& req, httplib::Response& res) {
    std::map<std::string, std::string> params;
    for (const auto& [k, v] : req.params) params.emplace(k, v);
    Response r = handle(req.method, req.path, params, req.body);
    res.status = r.status;
    res.set_content(r.body, "application/json; charset=utf-8");
    cors(res);
  };
  svr.Get(".*", dispatch);
  svr.Post(".*", dispatch);
  svr.Options(".*", [this, cors](const httplib::Request&, httplib::Response& res) {
    res.status = 204;
    cors(res);
    if (!options_.allowOrigin.empty()) {
      res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
      res.set_header("Access-Control-Allow-Headers", "Content-Type");
    }
  });
  if (options_.port == 0) return svr.bind_to_any_port(options_.host);
  return svr.bind_to_port(options_.host, options_.port) ? options_.port : -1;
}

bool Service::run() { return http_->server.listen_after_bind(); }

void Service::stop() {
  if (http_ && http_->server.is_running()) http_->server.stop();
}

}  // namespace prefarg
