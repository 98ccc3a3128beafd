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

// Justifications for verdicts: the argument standing for the goal, every
// argument attacking it with the priority that settled the clash, and
// optionally which assumptions would flip the outcome.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "prefarg/abduction.hpp"
#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg {

struct ExplainedRule {
  std::string label;
  Literal head;
  std::vector<Literal> body;

  bool operator==(const ExplainedRule&) const = default;
};

enum class Outcome {
  Repelled,  // the attack fails against the explained argument
  Defeats,   // the counter-argument wins the clash
  Mutual,    // no priority decides; both sides defeat each other
};

std::string_view outcomeName(Outcome o);

struct Counter {
  std::string against;  // top rule label of the counter-argument, or "fact"
  Literal conclusion;
  Literal at;  // conflict point inside the explained argument
  Outcome outcome = Outcome::Mutual;
  std::vector<std::string> decidedBy;  // empty when undecided
  bool bySpecificity = false;
  std::vector<Literal> pivotal;  // evidence the deciding priorities rest on that the loser lacks

  bool operator==(const Counter&) const = default;
};

struct Hint {
  std::vector<Literal> assume;

  bool operator==(const Hint&) const = default;
};

struct Explanation {
  Literal goal;
  Status status = Status::NoArgument;
  bool exact = true;
  std::vector<ExplainedRule> rules;  // winner's rule instances, leaves first
  std::vector<Literal> evidence;     // facts the winner rests on
  std::vector<Counter> conflicts;
  std::vector<Hint> hints;
  std::optional<Literal> hintGoal;  // the literal hints aim at

  bool operator==(const Explanation&) const = default;
};

struct ExplainOptions {
  bool hints = false;
  std::size_t hintSize = 2;
  SolverOptions solver;
};

/// Explains a ground goal. The explained argument is an accepted one when
/// the goal is accepted, otherwise the strongest attempt. Ties prefer an
/// argument whose own rule is named by the priorities deciding its clashes,
/// then the smallest support, then label order.
Explanation explainVerdict(const Theory& theory, const std::vector<Literal>& evidence, const Literal& goal,
                           const ExplainOptions& options = {});

/// Plain-text report: conclusion, evidence used, rules fired, one line per
/// conflict and any hints.
std::string renderText(const Explanation& e);

}  // namespace prefarg
