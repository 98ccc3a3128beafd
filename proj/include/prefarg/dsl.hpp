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

// The `.arg` rule language.
//
//   % comment
//   sort country = {c1, c2}.
//   abducible avoid/2.            abducible fperm/2 neg.
//   conflict access(D, U, permitted) ~ access(D, U, denied).
//   fact geoloc(ip1, c1).
//   rule attr.a1: neg perform(Attack, Country).
//   rule attr.a2: perform(Attack, Country) <- sourceIP(Attack, IP), geoloc(IP, Country).
//   layer attr.a2: tactical.
//   prefer attr.b1: attr.a2 > attr.a1 [when <literals>].
//
// Lowercase identifiers are constants, predicates and labels; identifiers
// starting with an uppercase letter or `_` are variables. A `.` directly
// between identifier characters is part of the identifier, which is how
// labels are namespaced (`eh.r5`). Priority levels are inferred from the
// referenced labels, which must be declared earlier in the file.
//
// Scenario files (`.scn`) accept the same statements plus
//   pack "attribution-text".
//   stage 1: sourceIP(a, ip1), geoloc(ip1, c1).
//   expect 1: perform(a, c1) => accepted.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefarg/kernel.hpp"

namespace prefarg::dsl {

struct ParseResult {
  std::optional<Theory> theory;
  std::map<std::string, SourceSpan> labelSpans;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return theory.has_value() && diagnostics.empty(); }
};

/// Parses a whole theory. Stops at the first error.
ParseResult parse(std::string_view text, std::string file = "");

/// Canonical text: sorts, abducibles, conflicts, facts, rules by label,
/// layer tags, then priorities by level and label. LF line endings.
std::string print(const Theory& theory);

/// Parses a single literal (wire syntax for goals and evidence). Variables
/// are allowed; callers decide whether a ground literal is required.
std::optional<Literal> parseLiteral(std::string_view text, Diagnostic* error = nullptr);

/// Parses a priority statement body `label: higher > lower [when ...]`
/// without the leading `prefer` keyword, as used by the REPL.
std::optional<PriorityRule> parsePriority(std::string_view text, Diagnostic* error = nullptr);

struct StageStatement {
  int stage = 0;
  std::vector<Literal> literals;
  SourceSpan span;
};

struct ExpectStatement {
  int stage = 0;
  Literal goal;
  std::string status;
  SourceSpan span;
};

struct ScenarioParse {
  Theory extras;  // any plain theory statements in the scenario file
  std::vector<std::string> packs;
  std::vector<StageStatement> stages;
  std::vector<ExpectStatement> expectations;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return diagnostics.empty(); }
};

ScenarioParse parseScenario(std::string_view text, std::string file = "");

/// Renders a diagnostic with the offending source line and a caret marker.
std::string renderDiagnostic(const Diagnostic& d, std::string_view text);

}  // namespace prefarg::dsl
