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

// Argument construction, preference comparison and acceptance.
//
// An argument is a subset-minimal set of ground rule instances deriving a
// conclusion. Argument a attacks b when a's conclusion is incompatible with
// b's conclusion or with any sub-conclusion of b. The attack is a defeat
// unless b is strictly preferred at that conflict point.
//
// Preference between two incompatible conclusions is decided in a context
// (evidence plus what both arguments derive):
//   * a fact always beats a defeasible rule;
//   * a level-1 priority `H > L` speaks for H's conclusion against L's
//     conclusion when the bodies of H, L and of the priority hold;
//   * when both sides have applicable priorities, level-2 priorities between
//     those priority instances decide, and so on upward;
//   * a tie that no higher level breaks goes to the side holding a priority
//     whose context strictly contains the context of every opposing one;
//   * otherwise the conflict is undecided and both directions defeat.

#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "prefarg/grounder.hpp"
#include "prefarg/kernel.hpp"

namespace prefarg {

enum class Status { AcceptedSceptically, AcceptedCredulously, Rejected, NoArgument };

std::string_view statusName(Status s);

/// Accepts the canonical names plus the scenario shorthands `accepted`
/// and `accepted-credulous`.
std::optional<Status> parseStatus(std::string_view name);

enum class Semantics { Grounded, Preferred };

struct SolverOptions {
  GroundOptions grounding;
  std::size_t maxArguments = 50000;
  std::size_t maxPreferredNodes = 20;
  Semantics semantics = Semantics::Grounded;
};

class ArgumentLimitError : public std::runtime_error {
 public:
  explicit ArgumentLimitError(std::size_t limit);
};

class GraphTooLargeError : public std::runtime_error {
 public:
  GraphTooLargeError(std::size_t nodes, std::size_t limit);
};

class EvidenceError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Least fixpoint of forward rule application over the given instances.
std::set<Literal> deriveClosure(const std::set<Literal>& facts,
                                const std::vector<GroundRule>& instances);

struct Argument {
  Literal conclusion;
  std::vector<std::size_t> support;  // indices into GroundTheory::rules, ascending
  std::size_t topRule = 0;
  std::vector<std::size_t> prioritySupport;  // indices into GroundTheory::priorities

  bool operator==(const Argument& o) const {
    return conclusion == o.conclusion && support == o.support;
  }
};

/// Heads of every instance in the argument's support.
std::set<Literal> subConclusions(const Argument& a, const GroundTheory& gt);

/// The support instance concluding `literal`, if any.
std::optional<std::size_t> instanceFor(const Argument& a, const Literal& literal,
                                       const GroundTheory& gt);

/// The part of `a` deriving `literal`, when `literal` is a sub-conclusion.
std::optional<Argument> subArgument(const Argument& a, const Literal& literal, const GroundTheory& gt);

/// All minimal arguments, or only those concluding `goal`.
std::vector<Argument> buildArguments(const GroundTheory& gt, const std::optional<Literal>& goal,
                                     const SolverOptions& options = {});

enum class Winner { Attacker, Target, Undecided };

struct Comparison {
  Winner winner = Winner::Undecided;
  std::vector<std::string> decidedBy;  // top level first
  std::vector<std::size_t> instances;  // deciding ground priorities, top level first
  bool bySpecificity = false;
  bool strict = false;  // decided because one side is a fact
};

/// Lookup structure over the ground priorities of one instantiation.
class PriorityIndex {
 public:
  explicit PriorityIndex(const GroundTheory& gt);

  /// Compares conclusion `a` against conclusion `b` by priorities alone.
  Comparison compare(const Literal& a, const Literal& b, const std::set<Literal>& context) const;

  /// Facts ∪ bodies a priority instance needs, recursively through levels.
  const std::vector<Literal>& contextOf(std::size_t priority) const { return ctx_[priority]; }

 private:
  Comparison decide(const std::vector<std::size_t>& sa, const std::vector<std::size_t>& sb,
                    const std::set<Literal>& context) const;
  bool applicable(std::size_t priority, const std::set<Literal>& context) const;

  const GroundTheory& gt_;
  std::vector<std::vector<Literal>> ctx_;
  std::map<std::pair<Literal, Literal>, std::vector<std::size_t>> byConclusions_;
  std::map<std::pair<std::size_t, std::size_t>, std::vector<std::size_t>> byReferences_;
};

/// Compares conclusion `a` against incompatible conclusion `b`.
Comparison compareConclusions(const Literal& a, const Literal& b, const GroundTheory& gt,
                              const std::set<Literal>& context);

/// Compares attacker `a` with the sub-argument of `b` concluding `at`.
Comparison compareAtConflict(const Argument& a, const Argument& b, const Literal& at,
                             const GroundTheory& gt, const std::set<Literal>& context);

/// Same, picking the first conflict point where a attacks b (or b attacks
/// a, with the result expressed from a's side).
Comparison compareAtConflict(const Argument& a, const Argument& b, const GroundTheory& gt,
                             const std::set<Literal>& context);

struct Attack {
  std::size_t attacker = 0;
  std::size_t target = 0;
  Literal at;
};

struct Defeat {
  std::size_t attacker = 0;
  std::size_t target = 0;
  Literal at;
  Comparison why;
};

struct DefeatGraph {
  std::vector<Argument> nodes;
  std::vector<Attack> attacks;
  std::vector<Defeat> defeats;

  /// defeaters[i] lists the nodes defeating node i, ascending, no repeats.
  std::vector<std::vector<std::size_t>> defeaters() const;
};

DefeatGraph buildDefeatGraph(const GroundTheory& gt, std::vector<Argument> args);

struct Verdict {
  Literal query;
  Status status = Status::NoArgument;
  std::vector<Argument> witnesses;
  bool exact = true;  // false when preferred enumeration fell back to grounded
};

/// Everything computed for one theory + evidence: the instantiation, its
/// arguments, the defeat graph and the grounded extension.
class Analysis {
 public:
  Analysis(const Theory& theory, const std::vector<Literal>& evidence,
           const SolverOptions& options = {}, const std::vector<Literal>& sortHints = {});
  Analysis(GroundTheory gt, const SolverOptions& options);
  ~Analysis();
  Analysis(Analysis&&) noexcept;
  Analysis& operator=(Analysis&&) noexcept;

  const GroundTheory& groundTheory() const { return gt_; }
  const std::set<Literal>& closure() const { return closure_; }
  const DefeatGraph& graph() const { return graph_; }
  const std::vector<std::size_t>& grounded() const { return grounded_; }
  const SolverOptions& options() const { return options_; }

  std::vector<std::size_t> argumentsFor(const Literal& literal) const;

  /// Preferred extensions of the component containing `nodes`, or nullopt
  /// when that component is beyond the exact-enumeration limit.
  std::optional<std::vector<std::vector<std::size_t>>> preferredFor(
      const std::vector<std::size_t>& nodes) const;

  Verdict verdict(const Literal& groundGoal) const;

  /// Ground instances of `goal` worth reporting: those with an argument for
  /// them or for an incompatible literal. A ground goal is always reported.
  std::vector<Literal> instancesOf(const Literal& goal) const;

  /// Context of `a` attacking `b` at `at`: facts, the sub-conclusions of
  /// `a` and those of the part of `b` deriving `at`.
  std::set<Literal> contextFor(const Argument& a, const Argument& b, const Literal& at) const;

 private:
  void build();

  SolverOptions options_;
  GroundTheory gt_;
  std::set<Literal> closure_;
  DefeatGraph graph_;
  std::vector<std::size_t> grounded_;
};

/// Ground-checks evidence against the theory's facts and itself.
void checkEvidence(const Theory& theory, const std::vector<Literal>& evidence);

/// Decides every reported ground instance of `goal`. Evidence literals are
/// facts for this query only.
std::vector<Verdict> query(const Theory& theory, const std::vector<Literal>& evidence,
                           const Literal& goal, const SolverOptions& options = {});

}  // namespace prefarg
