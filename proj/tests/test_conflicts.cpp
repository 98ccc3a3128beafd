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

#include "doctest.h"
#include "oracle/random_theory.hpp"
#include "prefarg/conflicts.hpp"
#include "prefarg/dsl.hpp"
#include "prefarg/grounder.hpp"
#include "prefarg/packs.hpp"

using namespace prefarg;

namespace {

using Pair = std::pair<std::string, std::string>;

std::set<Pair> unresolvedPairs(const std::vector<ConflictReport>& reports) {
  std::set<Pair> out;
  for (const auto& r : reports)
    if (!r.resolved) out.insert({r.ruleA, r.ruleB});
  return out;
}

const ArgumentRule& ruleNamed(const Theory& t, const std::string& label) {
  const ArgumentRule* r = t.findRule(label);
  REQUIRE(r != nullptr);
  return *r;
}

}  // namespace

TEST_CASE("the unprioritised e-health policy has exactly seven open conflicts") {
  const auto reports = detectConflicts(loadPack("ehealth_nopriorities"));
  const std::set<Pair> expected{{"eh.r3", "eh.r5"},     {"eh.r4", "eh.r6"},     {"eh.r7b", "eh.r8"},
                                {"eh.r10a", "eh.r11"}, {"eh.r10b", "eh.r12"}, {"eh.r10a", "eh.r13"},
                                {"eh.r10a", "eh.r14"}};
  CHECK(unresolvedPairs(reports) == expected);
  CHECK(countUnresolved(reports) == 7);
}

TEST_CASE("specificity suggests the more specific rule in each open conflict") {
  const Theory t = loadPack("ehealth_nopriorities");
  std::map<Pair, PriorityRule> byPair;
  for (const auto& r : detectConflicts(t)) {
    REQUIRE(r.suggestion.has_value());
    byPair[{r.ruleA, r.ruleB}] = *r.suggestion;
  }
  const auto& s11 = byPair.at({"eh.r10a", "eh.r11"});
  CHECK(s11.higher == "eh.r11");
  CHECK(s11.lower == "eh.r10a");
  CHECK(s11.label == "eh.pref_r11_r10a");
  const auto& s14 = byPair.at({"eh.r10a", "eh.r14"});
  CHECK(s14.higher == "eh.r14");
  CHECK(s14.label == "eh.pref_r14_r10a");
  for (const auto& [pair, s] : byPair) {
    CAPTURE(s.label);
    // The preferred rule's body strictly contains the other's premises.
    const auto& hi = ruleNamed(t, s.higher);
    const auto& lo = ruleNamed(t, s.lower);
    CHECK(hi.body.size() > lo.body.size());
  }
}

TEST_CASE("the shipped priorities close every open conflict") {
  const Theory full = loadPack("ehealth");
  Theory t = loadPack("ehealth_nopriorities");
  for (const auto& p : full.priorities) t = applyResolution(t, p);
  const auto reports = detectConflicts(t);
  CHECK(reports.size() == 7);
  CHECK(countUnresolved(reports) == 0);
  for (const auto& r : reports) {
    CAPTURE(r.ruleA + "/" + r.ruleB);
    CHECK(r.decidedBy.size() == 1);
    CHECK_FALSE(r.bySpecificity);
  }
  CHECK(countUnresolved(detectConflicts(full)) == 0);
}

TEST_CASE("accepting every suggestion closes every open conflict") {
  Theory t = loadPack("ehealth_nopriorities");
  for (const auto& r : detectConflicts(t)) t = applyResolution(t, *r.suggestion);
  CHECK(countUnresolved(detectConflicts(t)) == 0);
}

TEST_CASE("applying a suggestion resolves that conflict in favour of the suggested rule") {
  const Theory t = loadPack("ehealth_nopriorities");
  for (const auto& r : detectConflicts(t)) {
    CAPTURE(r.ruleA + "/" + r.ruleB);
    const Theory next = applyResolution(t, *r.suggestion);
    const auto after = detectConflicts(next);
    auto it = std::find_if(after.begin(), after.end(),
                           [&](const ConflictReport& x) { return x.ruleA == r.ruleA && x.ruleB == r.ruleB; });
    REQUIRE(it != after.end());
    CHECK(it->resolved);
    CHECK(it->winner == r.suggestion->higher);
    CHECK(countUnresolved(after) == countUnresolved(detectConflicts(t)) - 1);
  }
}

TEST_CASE("applying a resolution only ever adds one priority") {
  const Theory t = loadPack("ehealth_nopriorities");
  const auto reports = detectConflicts(t);
  const Theory next = applyResolution(t, *reports.front().suggestion);
  CHECK(next.rules == t.rules);
  CHECK(next.facts == t.facts);
  CHECK(next.incompatibilities == t.incompatibilities);
  REQUIRE(next.priorities.size() == t.priorities.size() + 1);
  CHECK(next.priorities.back() == *reports.front().suggestion);
}

TEST_CASE("resolutions naming unknown rules or reusing labels are refused") {
  const Theory t = loadPack("ehealth_nopriorities");
  CHECK_THROWS_AS(applyResolution(t, PriorityRule{"x.p", "eh.r11", "eh.nope", {}, 1}), TheoryError);
  CHECK_THROWS_AS(applyResolution(t, PriorityRule{"eh.r11", "eh.r11", "eh.r10a", {}, 1}), TheoryError);
  const Theory once = applyResolution(t, PriorityRule{"x.p", "eh.r11", "eh.r10a", {}, 1});
  CHECK_THROWS_AS(applyResolution(once, PriorityRule{"x.p", "eh.r13", "eh.r10a", {}, 1}), TheoryError);
}

TEST_CASE("reported pairs always have incompatible heads and ordered labels") {
  std::mt19937 rng(20261016);
  std::size_t seen = 0;
  std::size_t tooLarge = 0;
  for (int n = 0; n < 150; ++n) {
    const Theory t = oracle::randomTheory(rng);
    std::vector<ConflictReport> reports;
    try {
      reports = detectConflicts(t);
    } catch (const GroundingLimitError&) {
      ++tooLarge;
      continue;
    }
    for (const auto& r : reports) {
      ++seen;
      CAPTURE(dsl::print(t));
      CHECK(r.ruleA < r.ruleB);
      CHECK(incompatible(r.headA, r.headB, t));
      CHECK(t.findRule(r.ruleA) != nullptr);
      CHECK(t.findRule(r.ruleB) != nullptr);
      if (r.resolved) {
        CHECK((r.winner == r.ruleA || r.winner == r.ruleB));
        CHECK_FALSE(r.decidedBy.empty());
      }
    }
  }
  CHECK(seen > 0);
  CHECK(tooLarge < 15);
}

TEST_CASE("conflict detection is deterministic") {
  const Theory t = loadPack("ehealth_nopriorities");
  const auto a = detectConflicts(t);
  const auto b = detectConflicts(t);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].ruleA == b[i].ruleA);
    CHECK(a[i].ruleB == b[i].ruleB);
    CHECK(a[i].witness == b[i].witness);
    CHECK(a[i].unifier == b[i].unifier);
  }
}
