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

// Static detection of rule pairs that can reach incompatible conclusions,
// whether some priority decides them, and specificity-based suggestions.
//
// A pair is reported when the heads unify into an incompatible pair, the
// unified bodies do not contradict each other, and the bodies either nest
// (one is contained in the other) or share no predicate. Bodies that only
// partly overlap describe distinct situations that happen to share a
// premise, e.g. a treating doctor asking for private data versus the same
// doctor asking for a prescription. A nested pair is also skipped when a
// third rule with the weaker rule's conclusion sits strictly between them,
// since the conflict is then reported against that closer rule.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg {

struct ConflictReport {
  std::string ruleA;  // ruleA < ruleB
  std::string ruleB;
  Literal headA;  // heads under the unifier, variables left open
  Literal headB;
  std::map<std::string, std::string> unifier;  // ruleB variables carry a trailing '
  std::vector<Literal> witness;  // both bodies with fresh constants, sorted
  bool resolved = false;
  std::string winner;  // label of the preferred rule when resolved
  std::vector<std::string> decidedBy;
  bool bySpecificity = false;
  std::optional<PriorityRule> suggestion;
};

std::vector<ConflictReport> detectConflicts(const Theory& theory, const SolverOptions& options = {});

std::size_t countUnresolved(const std::vector<ConflictReport>& reports);

/// For an unresolved report whose unified bodies nest strictly, a priority
/// preferring the rule with the larger body.
std::optional<PriorityRule> suggestPriority(const Theory& theory, const ConflictReport& report);

/// Appends a priority after checking the label is fresh and the references
/// exist; the level is derived from the references. Throws TheoryError.
Theory applyResolution(Theory theory, PriorityRule decision);

}  // namespace prefarg
