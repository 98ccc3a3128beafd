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

#include "prefarg/wire.hpp"

#include "prefarg/dsl.hpp"

namespace prefarg::wire {

Json toJson(const Literal& l) { return l.toString(); }

Literal literalFromJson(const Json& j) {
  if (!j.is_string()) throw WireError("expected a literal string");
  Diagnostic d;
  auto l = dsl::parseLiteral(j.get<std::string>(), &d);
  if (!l) throw WireError("bad literal '" + j.get<std::string>() + "': " + d.message);
  return *l;
}

Json toJson(const std::vector<Literal>& ls) {
  Json out = Json::array();
  for (const auto& l : ls) out.push_back(toJson(l));
  return out;
}

std::vector<Literal> literalsFromJson(const Json& j) {
  if (j.is_null()) return {};
  if (!j.is_array()) throw WireError("expected an array of literals");
  std::vector<Literal> out;
  for (const auto& x : j) out.push_back(literalFromJson(x));
  return out;
}

Json toJson(const SourceSpan& s) {
  return Json{{"file", s.file},
              {"startLine", s.startLine},
              {"startCol", s.startCol},
              {"endLine", s.endLine},
              {"endCol", s.endCol}};
}

Json toJson(const Diagnostic& d) {
  Json out{{"message", d.message}};
  if (!d.label.empty()) out["label"] = d.label;
  if (!d.hint.empty()) out["expected"] = d.hint;
  if (d.span) out["span"] = toJson(*d.span);
  return out;
}

Json toJson(const Argument& a, const GroundTheory& gt) {
  Json rules = Json::array();
  Json facts = Json::array();
  for (std::size_t i : a.support) {
    const auto& r = gt.rules[i];
    if (r.isFact) {
      facts.push_back(toJson(r.head));
      continue;
    }
    rules.push_back(Json{{"label", r.label}, {"head", toJson(r.head)}, {"body", toJson(r.body)}});
  }
  Json prios = Json::array();
  for (std::size_t p : a.prioritySupport) prios.push_back(gt.priorities[p].label);
  return Json{{"conclusion", toJson(a.conclusion)}, {"rules", rules}, {"facts", facts}, {"priorities", prios}};
}

Json toJson(const Verdict& v, const GroundTheory& gt) {
  Json args = Json::array();
  for (const auto& a : v.witnesses) args.push_back(toJson(a, gt));
  return Json{{"goal", toJson(v.query)},
              {"status", std::string(statusName(v.status))},
              {"exact", v.exact},
              {"arguments", args}};
}

namespace {

Outcome outcomeFromName(const std::string& s) {
  if (s == "repelled") return Outcome::Repelled;
  if (s == "defeats") return Outcome::Defeats;
  if (s == "mutual") return Outcome::Mutual;
  throw WireError("unknown outcome " + s);
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw WireError(std::string("missing field ") + key);
  return j.at(key);
}

}  // namespace

Json toJson(const Explanation& e) {
  Json rules = Json::array();
  for (const auto& r : e.rules)
    rules.push_back(Json{{"label", r.label}, {"head", toJson(r.head)}, {"body", toJson(r.body)}});
  Json conflicts = Json::array();
  for (const auto& c : e.conflicts) {
    Json k{{"against", c.against},
           {"conclusion", toJson(c.conclusion)},
           {"at", toJson(c.at)},
           {"outcome", std::string(outcomeName(c.outcome))},
           {"bySpecificity", c.bySpecificity},
           {"pivotal", toJson(c.pivotal)}};
    if (c.decidedBy.empty())
      k["decidedBy"] = "undecided";
    else
      k["decidedBy"] = c.decidedBy;
    conflicts.push_back(std::move(k));
  }
  Json hints = Json::array();
  for (const auto& h : e.hints) hints.push_back(Json{{"assume", toJson(h.assume)}});
  Json out{{"goal", toJson(e.goal)},
           {"status", std::string(statusName(e.status))},
           {"exact", e.exact},
           {"winner", Json{{"rules", rules}, {"evidence", toJson(e.evidence)}}},
           {"conflicts", conflicts},
           {"hints", hints}};
  if (e.hintGoal) out["hintGoal"] = toJson(*e.hintGoal);
  return out;
}

Explanation explanationFromJson(const Json& j) {
  try {
    Explanation e;
    e.goal = literalFromJson(field(j, "goal"));
    auto st = parseStatus(field(j, "status").get<std::string>());
    if (!st) throw WireError("unknown status");
    e.status = *st;
    e.exact = j.value("exact", true);
    const Json& w = field(j, "winner");
    for (const auto& r : field(w, "rules"))
      e.rules.push_back(ExplainedRule{field(r, "label").get<std::string>(), literalFromJson(field(r, "head")),
                                      literalsFromJson(field(r, "body"))});
    e.evidence = literalsFromJson(w.value("evidence", Json::array()));
    for (const auto& k : field(j, "conflicts")) {
      Counter c;
      c.against = field(k, "against").get<std::string>();
      c.conclusion = literalFromJson(field(k, "conclusion"));
      c.at = literalFromJson(field(k, "at"));
      c.outcome = outcomeFromName(field(k, "outcome").get<std::string>());
      c.bySpecificity = k.value("bySpecificity", false);
      c.pivotal = literalsFromJson(k.value("pivotal", Json::array()));
      const Json& d = field(k, "decidedBy");
      if (d.is_array()) c.decidedBy = d.get<std::vector<std::string>>();
      e.conflicts.push_back(std::move(c));
    }
    for (const auto& h : field(j, "hints")) e.hints.push_back(Hint{literalsFromJson(field(h, "assume"))});
    if (j.contains("hintGoal")) e.hintGoal = literalFromJson(j.at("hintGoal"));
    return e;
  } catch (const nlohmann::json::exception& ex) {
    throw WireError(ex.what());
  }
}

Json toJson(const PriorityRule& p) {
  return Json{{"label", p.label}, {"higher", p.higher}, {"lower", p.lower}, {"when", toJson(p.body)},
              {"level", p.level}};
}

PriorityRule priorityFromJson(const Json& j) {
  try {
    PriorityRule p;
    p.label = field(j, "label").get<std::string>();
    p.higher = field(j, "higher").get<std::string>();
    p.lower = field(j, "lower").get<std::string>();
    p.body = literalsFromJson(j.value("when", Json::array()));
    return p;
  } catch (const nlohmann::json::exception& ex) {
    throw WireError(ex.what());
  }
}

Json toJson(const ConflictReport& r) {
  Json out{{"ruleA", r.ruleA},
           {"ruleB", r.ruleB},
           {"headA", toJson(r.headA)},
           {"headB", toJson(r.headB)},
           {"unifier", r.unifier},
           {"witness", toJson(r.witness)}};
  if (r.resolved)
    out["resolution"] = Json{{"winner", r.winner}, {"decidedBy", r.decidedBy}, {"bySpecificity", r.bySpecificity}};
  else
    out["resolution"] = "unresolved";
  out["suggestion"] = r.suggestion ? toJson(*r.suggestion) : Json(nullptr);
  return out;
}

Json toJson(const std::vector<ConflictReport>& reports) {
  Json out = Json::array();
  for (const auto& r : reports) out.push_back(toJson(r));
  return out;
}

Json toJson(const AbductiveAnswer& a) {
  return Json{{"assume", toJson(a.delta)}, {"status", std::string(statusName(a.resultingStatus))}};
}

Json toJson(const AbductionResult& r) {
  Json answers = Json::array();
  for (const auto& a : r.answers) answers.push_back(toJson(a));
  return Json{{"answers", answers}, {"truncated", r.truncated}, {"explored", r.explored}};
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

}  // namespace prefarg::wire
