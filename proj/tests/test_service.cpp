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

#include <array>
#include <atomic>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <thread>

#include "doctest.h"
#include "httplib.h"
#include "json.hpp"
#include "prefarg/dsl.hpp"
#include "prefarg/packs.hpp"
#include "prefarg/service.hpp"

using namespace prefarg;
using nlohmann::json;

namespace {

std::string fixedClock() { return "2026-10-16T09:00:00Z"; }

struct Client {
  Service& svc;

  json call(const std::string& method, const std::string& path, const json& body = nullptr,
            const std::map<std::string, std::string>& params = {}, int* status = nullptr) {
    Response r = svc.handle(method, path, params, body.is_null() ? "" : body.dump());
    if (status) *status = r.status;
    return json::parse(r.body);
  }

  int status(const std::string& method, const std::string& path, const json& body = nullptr,
             const std::map<std::string, std::string>& params = {}) {
    int s = 0;
    call(method, path, body, params, &s);
    return s;
  }

  std::string create(const std::string& pack) {
    int s = 0;
    json j = call("POST", "/sessions", {{"pack", pack}}, {}, &s);
    REQUIRE(s == 201);
    return j.at("sessionId").get<std::string>();
  }

  json query(const std::string& id, const std::string& goal) {
    return call("GET", "/sessions/" + id + "/query", nullptr, {{"goal", goal}});
  }
};

const json* verdictFor(const json& doc, const std::string& goal) {
  for (const auto& v : doc.at("verdicts"))
    if (v.at("goal") == goal) return &v;
  return nullptr;
}

std::filesystem::path freshDir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("prefarg-" + name + "-" + std::to_string(::getpid()));
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("a treating doctor is denied private data through the service") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  json r = c.call("POST", "/sessions/" + id + "/evidence",
                  {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)"}}});
  CHECK(r.at("revision") == 1);
  json q = c.query(id, "access(x, d, S)");
  CHECK(q.at("revision") == 1);
  const json* denied = verdictFor(q, "access(x, d, denied)");
  REQUIRE(denied != nullptr);
  CHECK(denied->at("status") == "accepted-sceptically");
  CHECK(denied->at("exact") == true);
  REQUIRE(denied->at("arguments").size() == 1);
  CHECK(denied->at("arguments")[0].at("rules")[0].at("label") == "eh.r3");
  const json* permitted = verdictFor(q, "access(x, d, permitted)");
  REQUIRE(permitted != nullptr);
  CHECK(permitted->at("status") != "accepted-sceptically");
}

TEST_CASE("asserting then retracting a literal costs two revisions and restores the verdicts") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  c.call("POST", "/sessions/" + id + "/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)"}}});
  json before = c.query(id, "access(x, d, S)");
  const auto rev = before.at("revision").get<int>();
  c.call("POST", "/sessions/" + id + "/evidence", {{"assert", {"emerg(c)"}}});
  json during = c.query(id, "access(x, d, S)");
  CHECK(verdictFor(during, "access(x, d, permitted)")->at("status") == "accepted-sceptically");
  json r = c.call("POST", "/sessions/" + id + "/evidence", {{"retract", {"emerg(c)"}}});
  CHECK(r.at("revision") == rev + 2);
  json after = c.query(id, "access(x, d, S)");
  CHECK(after.at("revision") == rev + 2);
  CHECK(after.at("verdicts") == before.at("verdicts"));
}

TEST_CASE("mutations that would break the session are refused with the documented status") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  const std::string base = "/sessions/" + id;
  c.call("POST", base + "/evidence", {{"assert", {"treatD(d, c)"}}});

  json err = c.call("POST", base + "/priorities", {{"label", "x.p"}, {"higher", "eh.r5"}, {"lower", "eh.nope"}});
  CHECK(c.status("POST", base + "/priorities", {{"label", "x.p"}, {"higher", "eh.r5"}, {"lower", "eh.nope"}}) == 422);
  CHECK(err.at("code").is_string());
  CHECK(err.at("message").is_string());
  CHECK(err.at("revision") == 1);

  CHECK(c.status("POST", base + "/evidence", {{"assert", {"neg treatD(d, c)"}}}) == 409);
  CHECK(c.status("POST", base + "/evidence", {{"assert", {"emerg(c)", "neg emerg(c)"}}}) == 409);
  CHECK(c.status("POST", base + "/evidence", {{"retract", {"emerg(c)"}}}) == 422);
  CHECK(c.status("POST", base + "/evidence", {{"assert", {"emerg(C)"}}}) == 400);
  CHECK(c.status("POST", base + "/evidence", {{"assert", {"emerg(c"}}}) == 400);
  CHECK(c.status("POST", "/sessions", {{"pack", "no-such-pack"}}) == 404);
  CHECK(c.status("GET", "/sessions/s999/query", nullptr, {{"goal", "emerg(c)"}}) == 404);
  CHECK(c.status("GET", "/nowhere") == 404);
  CHECK(c.status("POST", base + "/abduce", {{"goal", "access(x, d, permitted)"}, {"maxSize", 9}}) == 400);
  Response raw = svc.handle("POST", base + "/evidence", {}, "{not json");
  CHECK(raw.status == 400);

  // Nothing above changed the session.
  json state = c.call("GET", base);
  CHECK(state.at("revision") == 1);
  CHECK(state.at("evidence") == json::array({"treatD(d, c)"}));
}

TEST_CASE("parse errors in literals come back with a span") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  int s = 0;
  json err = c.call("GET", "/sessions/" + id + "/explain", nullptr, {{"goal", "access(x, d"}}, &s);
  CHECK(s == 400);
  REQUIRE(err.contains("span"));
  CHECK(err.at("span").at("startCol").get<int>() >= 1);
}

TEST_CASE("every session endpoint reports the revision it answered at") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth_nopriorities");
  const std::string base = "/sessions/" + id;
  c.call("POST", base + "/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pinfo(x)", "intens(c)"}}});
  json conflicts = c.call("GET", base + "/conflicts");
  CHECK(conflicts.at("revision") == 1);
  CHECK(conflicts.at("unresolved") == 7);
  const json suggestion = conflicts.at("conflicts")[0].at("suggestion");
  json r = c.call("POST", base + "/priorities", suggestion);
  CHECK(r.at("revision") == 2);
  CHECK(c.call("GET", base + "/conflicts").at("unresolved") == 6);
  json explained = c.call("GET", base + "/explain", nullptr, {{"goal", "access(x, d, denied)"}, {"hints", "1"}});
  CHECK(explained.at("revision") == 2);
  CHECK(explained.at("explanation").at("goal") == "access(x, d, denied)");
  json abduced = c.call("POST", base + "/abduce", {{"goal", "access(x, d, permitted)"}, {"maxSize", 1}});
  CHECK(abduced.at("revision") == 2);
  CHECK(abduced.at("answers").is_array());
  json state = c.call("GET", base);
  CHECK(state.at("revision") == 2);
  CHECK(state.at("log").size() == 4);
}

TEST_CASE("abduction over the service finds the avoidance assumption") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("attribution-fig2");
  c.call("POST", "/sessions/" + id + "/evidence",
         {{"assert", {"sourceIP(a, ip1)", "geoloc(ip1, c1)", "spoofed(ip1)"}}});
  json r = c.call("POST", "/sessions/" + id + "/abduce", {{"goal", "perform(a, c1)"}, {"tier", "sceptical"}, {"maxSize", 1}});
  bool found = false;
  for (const auto& a : r.at("answers"))
    if (a.at("assume") == json::array({"avoid(a, c1)"})) found = true;
  CHECK(found);
}

TEST_CASE("packs and sessions can be listed") {
  Service svc({}, fixedClock);
  Client c{svc};
  json packs = c.call("GET", "/packs");
  for (const char* p : {"attribution-text", "attribution-fig2", "attribution-ladder", "ehealth", "ehealth-nopriorities"})
    CHECK(std::find(packs.at("packs").begin(), packs.at("packs").end(), p) != packs.at("packs").end());
  const auto a = c.create("ehealth");
  const auto b = c.create("attribution-fig2");
  CHECK(a != b);
  CHECK(c.call("GET", "/sessions").at("sessions") == json::array({a, b}));
}

TEST_CASE("identical histories give byte-identical responses") {
  auto replay = [] {
    Service svc({}, fixedClock);
    std::vector<std::string> bodies;
    auto go = [&](const std::string& m, const std::string& p, const json& b, std::map<std::string, std::string> q = {}) {
      bodies.push_back(svc.handle(m, p, q, b.is_null() ? "" : b.dump()).body);
    };
    go("POST", "/sessions", {{"pack", "ehealth"}});
    go("POST", "/sessions/s1/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)", "intens(c)"}}});
    go("GET", "/sessions/s1/query", nullptr, {{"goal", "access(x, d, S)"}});
    go("POST", "/sessions/s1/evidence", {{"assert", {"perm(c, pdata)"}}});
    go("GET", "/sessions/s1/explain", nullptr, {{"goal", "access(x, d, permitted)"}, {"hints", "true"}});
    go("GET", "/sessions/s1/conflicts", nullptr);
    go("POST", "/sessions/s1/abduce", {{"goal", "access(x, d, denied)"}});
    go("GET", "/sessions/s1", nullptr);
    return bodies;
  };
  const auto first = replay();
  const auto second = replay();
  CHECK(first == second);
}

TEST_CASE("responses never report a revision lower than an earlier one") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  const std::string base = "/sessions/" + id;
  const std::array<const char*, 5> lits{"emerg(c)", "intens(c)", "uncon(c)", "pdata(x)", "owner(c, x)"};
  std::mt19937 rng(3);
  long last = 0;
  std::set<std::string> active;
  for (int i = 0; i < 80; ++i) {
    const std::string l = lits[rng() % lits.size()];
    json r;
    switch (rng() % 4) {
      case 0: r = c.call("POST", base + "/evidence", {{"assert", {l}}}); break;
      case 1: r = c.call("POST", base + "/evidence", {{"retract", {l}}}); break;
      case 2: r = c.query(id, "access(x, d, S)"); break;
      default: r = c.call("POST", base + "/priorities", {{"label", "x.p" + std::to_string(i)}, {"higher", "eh.r5"}, {"lower", "eh.bad"}});
    }
    REQUIRE(r.contains("revision"));
    CHECK(r.at("revision").get<long>() >= last);
    last = r.at("revision").get<long>();
  }
}

TEST_CASE("a snapshot restores theory, evidence, log and revision") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth_nopriorities");
  const std::string base = "/sessions/" + id;
  c.call("POST", base + "/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)", "emerg(c)"}}});
  c.call("POST", base + "/evidence", {{"retract", {"emerg(c)"}}});
  c.call("POST", base + "/priorities", {{"label", "x.p53"}, {"higher", "eh.r5"}, {"lower", "eh.r3"}, {"when", {"emerg(Patient)"}}});
  auto original = svc.store().get(id);
  const std::string text = original->snapshot();
  auto restored = Session::restore(id, text, {}, fixedClock);
  CHECK(restored->revision() == original->revision());
  CHECK(restored->evidence() == original->evidence());
  CHECK(restored->source() == original->source());
  CHECK(structurallyEqual(restored->theory(), original->theory()));
  REQUIRE(restored->log().size() == original->log().size());
  for (std::size_t i = 0; i < original->log().size(); ++i) {
    CHECK(restored->log()[i].literal == original->log()[i].literal);
    CHECK(restored->log()[i].asserted == original->log()[i].asserted);
    CHECK(restored->log()[i].revision == original->log()[i].revision);
    CHECK(restored->log()[i].at == original->log()[i].at);
  }
  CHECK(restored->snapshot() == text);
  const Literal goal = *dsl::parseLiteral("access(x, d, S)");
  CHECK(restored->view().query(goal).size() == original->view().query(goal).size());
}

TEST_CASE("sessions persist to the snapshot directory on every mutation") {
  const auto dir = freshDir("snap");
  ServiceOptions o;
  o.snapshotDir = dir.string();
  Service svc(o, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  c.call("POST", "/sessions/" + id + "/evidence", {{"assert", {"emerg(c)"}}});
  std::ifstream in(dir / (id + ".arg"));
  REQUIRE(in.good());
  std::stringstream text;
  text << in.rdbuf();
  CHECK(text.str() == svc.store().get(id)->snapshot());
  CHECK(text.str().find("emerg(c)") != std::string::npos);
  std::filesystem::remove_all(dir);
}

TEST_CASE("concurrent writers and readers see a consistent, serialized history") {
  Service svc({}, fixedClock);
  Client setup{svc};
  const auto id = setup.create("ehealth");
  const std::string base = "/sessions/" + id;
  setup.call("POST", base + "/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)"}}});
  std::atomic<int> bad{0};
  std::vector<std::thread> threads;
  for (int w = 0; w < 4; ++w)
    threads.emplace_back([&, w] {
      Client c{svc};
      const std::string lit = "perm(c, k" + std::to_string(w) + ")";
      long last = 0;
      for (int i = 0; i < 10; ++i) {
        json r = c.call("POST", base + "/evidence", {{(i % 2 ? "retract" : "assert"), {lit}}});
        if (!r.contains("revision") || r.at("revision").get<long>() <= last) ++bad;
        last = r.at("revision").get<long>();
      }
    });
  for (int q = 0; q < 2; ++q)
    threads.emplace_back([&] {
      Client c{svc};
      long last = 0;
      for (int i = 0; i < 20; ++i) {
        json r = c.query(id, "access(x, d, S)");
        if (r.at("revision").get<long>() < last) ++bad;
        if (verdictFor(r, "access(x, d, denied)")->at("status") != "accepted-sceptically") ++bad;
        last = r.at("revision").get<long>();
      }
    });
  for (auto& t : threads) t.join();
  CHECK(bad == 0);
  auto s = svc.store().get(id);
  CHECK(s->revision() == 1 + 4 * 10);
  CHECK(s->log().size() == 3 + 4 * 10);
  CHECK(s->evidence().size() == 3);
}

TEST_CASE("the HTTP server answers over a real socket with CORS headers") {
  ServiceOptions o;
  o.port = 0;
  o.allowOrigin = "http://localhost:5173";
  Service svc(o, fixedClock);
  const int port = svc.bind();
  REQUIRE(port > 0);
  std::thread server([&] { svc.run(); });
  httplib::Client http("127.0.0.1", port);
  http.set_connection_timeout(5);

  auto created = http.Post("/sessions", R"J({"pack":"ehealth"})J", "application/json");
  REQUIRE(created);
  CHECK(created->status == 201);
  CHECK(created->get_header_value("Access-Control-Allow-Origin") == "http://localhost:5173");
  const std::string id = json::parse(created->body).at("sessionId");

  auto ev = http.Post(("/sessions/" + id + "/evidence").c_str(),
                      R"J({"assert":["treatD(d, c)","owner(c, x)","pdata(x)"]})J", "application/json");
  REQUIRE(ev);
  CHECK(ev->status == 200);
  auto q = http.Get(("/sessions/" + id + "/query?goal=" + httplib::detail::encode_query_param("access(x, d, S)")).c_str());
  REQUIRE(q);
  CHECK(q->status == 200);
  CHECK(q->get_header_value("Content-Type").find("application/json") == 0);
  CHECK(verdictFor(json::parse(q->body), "access(x, d, denied)")->at("status") == "accepted-sceptically");

  auto pre = http.Options(("/sessions/" + id + "/evidence").c_str());
  REQUIRE(pre);
  CHECK(pre->status == 204);
  CHECK(pre->get_header_value("Access-Control-Allow-Methods").find("POST") != std::string::npos);

  auto missing = http.Get("/sessions/s42");
  REQUIRE(missing);
  CHECK(missing->status == 404);
  CHECK(json::parse(missing->body).at("code") == "unknown-session");

  svc.stop();
  server.join();
}

#ifdef PREFARG_CLI
TEST_CASE("the command line and the service agree on verdicts") {
  Service svc({}, fixedClock);
  Client c{svc};
  const auto id = c.create("ehealth");
  c.call("POST", "/sessions/" + id + "/evidence", {{"assert", {"treatD(d, c)", "owner(c, x)", "pdata(x)", "intens(c)"}}});
  json fromService = c.query(id, "access(x, d, S)");
  const std::string cmd = std::string(PREFARG_CLI) +
                          " query ehealth -a 'treatD(d, c)' -a 'owner(c, x)' -a 'pdata(x)' -a 'intens(c)'"
                          " -g 'access(x, d, S)' --json";
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::array<char, 4096> buf{};
  while (std::size_t n = fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  CHECK(pclose(p) == 0);
  CHECK(json::parse(out).at("verdicts") == fromService.at("verdicts"));
}
#endif
