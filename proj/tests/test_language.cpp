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

#include <random>
#include <sstream>

#include "doctest.h"
#include "oracle/random_theory.hpp"
#include "prefarg/dsl.hpp"
#include "prefarg/grounder.hpp"
#include "prefarg/packs.hpp"
#include "prefarg/solver.hpp"
#include "support.hpp"

using namespace prefarg;

namespace {

std::set<std::pair<Literal, std::vector<Literal>>> instanceSet(const GroundTheory& gt) {
  std::set<std::pair<Literal, std::vector<Literal>>> out;
  for (const auto& r : gt.rules)
    if (!r.isFact) out.insert({r.head, r.body});
  return out;
}

}  // namespace

TEST_CASE("every shipped pack survives print then parse unchanged") {
  for (const auto& name : listPacks()) {
    CAPTURE(name);
    Theory t = loadPack(name);
    std::string text = dsl::print(t);
    auto back = dsl::parse(text);
    REQUIRE(back.ok());
    CHECK(structurallyEqual(t, *back.theory));
    CHECK(dsl::print(*back.theory) == text);
  }
}

TEST_CASE("500 random theories survive print then parse unchanged") {
  std::mt19937 rng(500);
  for (int i = 0; i < 500; ++i) {
    Theory t = oracle::randomTheory(rng);
    std::string text = dsl::print(t);
    auto back = dsl::parse(text);
    INFO(text);
    REQUIRE(back.ok());
    CHECK(structurallyEqual(t, *back.theory));
  }
}

TEST_CASE("parse errors carry spans inside the input") {
  std::mt19937 rng(99);
  std::size_t failures = 0;
  for (const auto& name : listPacks()) {
    const std::string base = packSource(name);
    for (int i = 0; i < 120; ++i) {
      const std::string text = support::mutate(base, i, rng);
      auto r = dsl::parse(text, "mutated.arg");
      for (const auto& d : r.diagnostics) {
        ++failures;
        REQUIRE(d.span.has_value());
        INFO(d.toString());
        CHECK(support::spanInside(*d.span, text));
      }
    }
  }
  CHECK(failures > 100);
}

TEST_CASE("diagnostics point at the offending token") {
  auto r = dsl::parse("rule a.r1: p(X) <- q(X).\nrule a.r2: p(X) <- q(X)\nrule a.r3: r.\n", "t.arg");
  REQUIRE(r.diagnostics.size() == 1);
  const auto& d = r.diagnostics.front();
  REQUIRE(d.span);
  CHECK(d.span->file == "t.arg");
  CHECK(d.span->startLine == 3);
  std::string shown = dsl::renderDiagnostic(d, "rule a.r1: p(X) <- q(X).\nrule a.r2: p(X) <- q(X)\nrule a.r3: r.\n");
  CHECK(shown.find("t.arg:3:") != std::string::npos);
  CHECK(shown.find('^') != std::string::npos);
}

TEST_CASE("priorities may not refer forward") {
  auto r = dsl::parse("prefer x.p: x.a > x.b.\nrule x.a: p.\nrule x.b: neg p.\n");
  CHECK_FALSE(r.ok());
  auto ok = dsl::parse("rule x.a: p.\nrule x.b: neg p.\nprefer x.p: x.a > x.b.\n");
  CHECK(ok.ok());
  auto reordered = dsl::parse("rule x.b: neg p.\nrule x.a: p.\nprefer x.p: x.a > x.b.\n");
  CHECK(structurallyEqual(*ok.theory, *reordered.theory));
}

TEST_CASE("literals parse with negation and variables") {
  auto l = dsl::parseLiteral("neg perform(a, Country)");
  REQUIRE(l);
  CHECK(l->negated);
  CHECK_FALSE(l->isGround());
  CHECK(l->toString() == "neg perform(a, Country)");
  Diagnostic d;
  CHECK_FALSE(dsl::parseLiteral("perform(a,", &d));
  REQUIRE(d.span);
  CHECK(d.span->startCol >= 1);
}

TEST_CASE("a literal and its complement are always incompatible, symmetrically") {
  Theory t = loadPack("ehealth");
  std::vector<Literal> lits;
  for (const auto& d : {"d", "c", "x"})
    for (const auto& u : {"d", "c"})
      for (const auto& s : {"permitted", "denied"}) lits.push_back(atom("access", {d, u, s}));
  lits.push_back(atom("emerg", {"c"}));
  for (const auto& a : lits) {
    CHECK(incompatible(a, complement(a), t));
    for (const auto& b : lits) CHECK(incompatible(a, b, t) == incompatible(b, a, t));
  }
  CHECK(incompatible(atom("access", {"x", "d", "permitted"}), atom("access", {"x", "d", "denied"}), t));
  CHECK_FALSE(incompatible(atom("access", {"x", "d", "permitted"}), atom("access", {"x", "c", "denied"}), t));
}

TEST_CASE("validate is deterministic and reports dangling labels") {
  Theory t = loadPack("attribution-fig2");
  t.priorities.push_back(PriorityRule{"attr.bad", "attr.nope", "attr.a1", {}, 1});
  auto first = validate(t);
  auto second = validate(t);
  REQUIRE(first.size() == second.size());
  for (std::size_t i = 0; i < first.size(); ++i) CHECK(first[i].toString() == second[i].toString());
  CHECK_FALSE(first.empty());
}

TEST_CASE("grounding is monotone in the domain") {
  Theory t = loadPack("ehealth");
  GroundTheory small = ground(t, {"x"}, {});
  GroundTheory large = ground(t, {"x", "y", "z"}, {});
  auto a = instanceSet(small), b = instanceSet(large);
  CHECK(std::includes(b.begin(), b.end(), a.begin(), a.end()));
  CHECK(b.size() > a.size());
}

TEST_CASE("grounding a ground theory again changes nothing") {
  for (const auto& name : listPacks()) {
    CAPTURE(name);
    Theory t = loadPack(name);
    t.facts.insert(atom("owner", {"c", "x"}));
    t.refreshDomain();
    GroundTheory once = ground(t, {"x"}, {});
    GroundTheory twice = ground(once.asTheory(), {}, {});
    CHECK(instanceSet(once) == instanceSet(twice));
    CHECK(once.priorities.size() == twice.priorities.size());
    CHECK(once.facts == twice.facts);
  }
}

TEST_CASE("sort pruning keeps every instance whose body the facts satisfy") {
  Theory sorted = loadPack("ehealth");
  for (const auto& f : {atom("treatD", {"d", "c"}), atom("owner", {"c", "x"}), atom("pdata", {"x"}),
                        atom("emerg", {"c"}), atom("famD", {"d", "c"})})
    sorted.facts.insert(f);
  sorted.refreshDomain();
  Theory unsorted = sorted;
  unsorted.sorts.clear();
  GroundTheory a = ground(sorted, {}, {});
  GroundTheory b = ground(unsorted, {}, {});
  auto closure = deriveClosure(b.facts, b.rules);
  auto kept = instanceSet(a);
  std::size_t live = 0;
  for (const auto& r : b.rules) {
    if (r.isFact || r.body.empty()) continue;
    bool holds = std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) { return closure.count(l) > 0; });
    if (!holds) continue;
    ++live;
    CHECK(kept.count({r.head, r.body}) == 1);
  }
  CHECK(live > 0);
}

TEST_CASE("unsafe default rules ground over the declared sorts") {
  Theory t = loadPack("attribution-fig2");
  GroundTheory gt = ground(t, {"ip1"}, {});
  std::set<Literal> defaults;
  for (const auto& r : gt.rules)
    if (r.label == "attr.a1") defaults.insert(r.head);
  CHECK(defaults == std::set<Literal>{atom("perform", {"a", "c1"}, true), atom("perform", {"a", "c2"}, true)});
}

TEST_CASE("grounding honours the instance cap") {
  Theory t = loadPack("ehealth");
  GroundOptions o;
  o.maxInstances = 10;
  CHECK_THROWS_AS(ground(t, {"x"}, o), GroundingLimitError);
}

TEST_CASE("reachable grounding keeps exactly the instances whose bodies are derivable") {
  std::mt19937 rng(7);
  std::size_t compared = 0;
  for (int n = 0; n < 120; ++n) {
    const Theory t = oracle::randomTheory(rng);
    GroundOptions reach;
    reach.reachableOnly = true;
    GroundTheory full, part;
    try {
      full = ground(t, {}, {});
      part = ground(t, {}, reach);
    } catch (const GroundingLimitError&) {
      continue;
    }
    ++compared;
    CAPTURE(dsl::print(t));
    const auto closure = deriveClosure(full.facts, full.rules);
    std::set<std::pair<Literal, std::vector<Literal>>> live;
    for (const auto& r : full.rules) {
      if (r.isFact) continue;
      if (std::all_of(r.body.begin(), r.body.end(), [&](const Literal& l) { return closure.count(l) > 0; }))
        live.insert({r.head, r.body});
    }
    CHECK(instanceSet(part) == live);
    CHECK(deriveClosure(part.facts, part.rules) == closure);
  }
  CHECK(compared > 80);
}

TEST_CASE("verdicts do not depend on how much of the theory is instantiated") {
  std::mt19937 rng(11);
  for (int n = 0; n < 60; ++n) {
    const Theory t = oracle::randomTheory(rng);
    GroundTheory full;
    try {
      full = ground(t, {}, {});
    } catch (const GroundingLimitError&) {
      continue;
    }
    CAPTURE(dsl::print(t));
    try {
      const Analysis whole(full, {});
      const Analysis focused(t, {}, {});
      for (const auto& l : deriveClosure(full.facts, full.rules)) {
        CAPTURE(l.toString());
        CHECK(whole.verdict(l).status == focused.verdict(l).status);
      }
    } catch (const GraphTooLargeError&) {
    }
  }
}
