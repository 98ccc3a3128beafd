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

#include "prefarg/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <map>
#include <set>

#include "prefarg/dsl.hpp"
#include "prefarg/packs.hpp"

namespace prefarg {

namespace {

Diagnostic error(std::string message, std::optional<SourceSpan> span) {
  Diagnostic d;
  d.message = std::move(message);
  d.span = std::move(span);
  return d;
}

Theory merge(Theory base, const Theory& extras) {
  base.facts.insert(extras.facts.begin(), extras.facts.end());
  base.rules.insert(base.rules.end(), extras.rules.begin(), extras.rules.end());
  base.priorities.insert(base.priorities.end(), extras.priorities.begin(), extras.priorities.end());
  base.incompatibilities.insert(base.incompatibilities.end(), extras.incompatibilities.begin(),
                                extras.incompatibilities.end());
  base.abducibles.insert(extras.abducibles.begin(), extras.abducibles.end());
  for (const auto& [name, members] : extras.sorts) base.sorts[name].insert(members.begin(), members.end());
  base.refreshDomain();
  return base;
}

}  // namespace

Scenario parseScenarioText(std::string_view text, const std::string& file) {
  auto parsed = dsl::parseScenario(text, file);
  if (!parsed.ok()) throw TheoryError(parsed.diagnostics);

  Scenario s;
  s.name = file.empty() ? "scenario" : std::filesystem::path(file).stem().string();
  s.packs = parsed.packs;
  s.extras = parsed.extras;
  std::vector<Diagnostic> errors;
  if (s.packs.empty()) errors.push_back(error("scenario names no pack", std::nullopt));

  int maxStage = 0;
  for (const auto& st : parsed.stages) maxStage = std::max(maxStage, st.stage);
  s.stages.resize(static_cast<std::size_t>(maxStage));
  std::set<int> declared;
  for (const auto& st : parsed.stages) {
    declared.insert(st.stage);
    auto& bucket = s.stages[static_cast<std::size_t>(st.stage - 1)];
    bucket.insert(bucket.end(), st.literals.begin(), st.literals.end());
  }
  for (int k = 1; k <= maxStage; ++k)
    if (!declared.count(k)) errors.push_back(error("stage " + std::to_string(k) + " is missing", std::nullopt));

  std::map<Literal, std::set<int>> covered;
  for (const auto& e : parsed.expectations) {
    auto status = parseStatus(e.status);
    if (!status) {
      errors.push_back(error("unknown status " + e.status +
                                 " (expected accepted, accepted-credulous, rejected or no-argument)",
                             e.span));
      continue;
    }
    if (e.stage > maxStage) {
      errors.push_back(error("expectation refers to undeclared stage " + std::to_string(e.stage), e.span));
      continue;
    }
    if (!covered[e.goal].insert(e.stage).second) {
      errors.push_back(error("duplicate expectation for " + e.goal.toString() + " at stage " +
                                 std::to_string(e.stage), e.span));
      continue;
    }
    s.expectations.push_back(Expectation{e.stage, e.goal, *status, e.span});
  }
  for (const auto& [goal, stages] : covered)
    for (int k = 1; k <= maxStage; ++k)
      if (!stages.count(k))
        errors.push_back(error("no expectation for " + goal.toString() + " at stage " + std::to_string(k),
                               std::nullopt));
  if (!errors.empty()) throw TheoryError(std::move(errors));
  std::stable_sort(s.expectations.begin(), s.expectations.end(),
                   [](const Expectation& a, const Expectation& b) { return a.stage < b.stage; });
  return s;
}

bool ScenarioReport::passed() const {
  return disagreements.empty() &&
         std::all_of(checks.begin(), checks.end(), [](const ScenarioCheck& c) { return c.passed(); });
}

bool ScenarioReport::stagePassed(int stage) const {
  return std::all_of(checks.begin(), checks.end(),
                     [&](const ScenarioCheck& c) { return c.stage != stage || c.passed(); });
}

ScenarioReport runScenario(const Scenario& s, const SolverOptions& options, const PackResolver& resolve) {
  ScenarioReport report;
  std::map<std::pair<int, Literal>, std::pair<std::string, Status>> first;
  for (const auto& pack : s.packs) {
    Theory theory = merge(resolve ? resolve(pack) : resolveTheory(pack), s.extras);
    std::vector<Literal> evidence;
    for (std::size_t k = 0; k < s.stages.size(); ++k) {
      const int stage = static_cast<int>(k) + 1;
      evidence.insert(evidence.end(), s.stages[k].begin(), s.stages[k].end());
      std::vector<Literal> goals;
      for (const auto& e : s.expectations)
        if (e.stage == stage) goals.push_back(e.goal);
      Analysis analysis(theory, evidence, options, goals);
      for (const auto& e : s.expectations) {
        if (e.stage != stage) continue;
        ScenarioCheck c{pack, stage, e.goal, e.expected, analysis.verdict(e.goal).status};
        auto [it, fresh] = first.try_emplace({stage, e.goal}, pack, c.actual);
        if (!fresh && it->second.second != c.actual)
          report.disagreements.push_back("stage " + std::to_string(stage) + ": " + e.goal.toString() + " is " +
                                         std::string(statusName(it->second.second)) + " under " +
                                         it->second.first + " but " + std::string(statusName(c.actual)) +
                                         " under " + pack);
        report.checks.push_back(std::move(c));
      }
    }
  }
  return report;
}

}  // namespace prefarg
