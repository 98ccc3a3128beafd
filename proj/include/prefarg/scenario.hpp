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

// Staged golden scenarios. Evidence accumulates stage by stage and every
// expectation is checked against each listed pack; when several packs are
// listed their verdicts must also agree with each other.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg {

struct Expectation {
  int stage = 0;
  Literal goal;
  Status expected = Status::NoArgument;
  std::optional<SourceSpan> span;
};

struct Scenario {
  std::string name;
  std::vector<std::string> packs;
  Theory extras;  // statements written in the scenario file itself
  std::vector<std::vector<Literal>> stages;  // stages[0] is stage 1
  std::vector<Expectation> expectations;
};

/// Parses a scenario; throws TheoryError on syntax errors, unknown status
/// names, gaps in stage numbering or a goal missing an expectation at some
/// stage.
Scenario parseScenarioText(std::string_view text, const std::string& file = "");

struct ScenarioCheck {
  std::string pack;
  int stage = 0;
  Literal goal;
  Status expected = Status::NoArgument;
  Status actual = Status::NoArgument;
  bool passed() const { return expected == actual; }
};

struct ScenarioReport {
  std::vector<ScenarioCheck> checks;
  std::vector<std::string> disagreements;  // encoding mismatches between packs

  bool passed() const;
  /// Whether every check of one stage passed across all packs.
  bool stagePassed(int stage) const;
};

using PackResolver = std::function<Theory(const std::string&)>;

/// Runs every stage cumulatively. Packs are resolved through `resolve`
/// (default: shipped packs or files on disk).
ScenarioReport runScenario(const Scenario& s, const SolverOptions& options = {},
                           const PackResolver& resolve = {});

}  // namespace prefarg
