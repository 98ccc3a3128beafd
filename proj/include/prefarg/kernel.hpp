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

// Core vocabulary of the engine: terms, literals, labelled rules, leveled
// priority rules and theories. All values are plain immutable-after-build
// data; nothing in here touches I/O.

#pragma once

#include <compare>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace prefarg {

struct Term {
  enum class Kind { Constant, Variable };

  Kind kind = Kind::Constant;
  std::string name;

  static Term constant(std::string name) { return {Kind::Constant, std::move(name)}; }
  static Term variable(std::string name) { return {Kind::Variable, std::move(name)}; }

  bool isVariable() const { return kind == Kind::Variable; }
  bool isConstant() const { return kind == Kind::Constant; }

  auto operator<=>(const Term&) const = default;
  bool operator==(const Term&) const = default;
};

/// A predicate applied to terms, optionally carrying explicit (strong)
/// negation. Printed in the rule-language syntax, e.g. `neg perform(a, c1)`.
struct Literal {
  std::string predicate;
  std::vector<Term> args;
  bool negated = false;

  std::size_t arity() const { return args.size(); }
  bool isGround() const;
  std::string toString() const;

  auto operator<=>(const Literal&) const = default;
  bool operator==(const Literal&) const = default;
};

/// Builds a ground literal from constant names.
Literal atom(std::string predicate, std::vector<std::string> constants, bool negated = false);

/// Flips the negation marker only. complement(complement(l)) == l.
Literal complement(const Literal& l);

/// Q-Model evidence layer a rule draws on.
enum class Layer { None, Tactical, Operational, Strategic };

std::string_view layerName(Layer layer);
std::optional<Layer> parseLayer(std::string_view name);

struct ArgumentRule {
  std::string label;
  Literal head;
  std::vector<Literal> body;
  Layer layer = Layer::None;

  bool operator==(const ArgumentRule&) const = default;
};

/// `higher > lower [when body]`. Level 1 relates argument rules, level k
/// relates level k-1 priority rules.
struct PriorityRule {
  std::string label;
  std::string higher;
  std::string lower;
  std::vector<Literal> body;
  int level = 1;

  bool operator==(const PriorityRule&) const = default;
};

/// Declared contraries beyond syntactic negation. Variables shared between
/// the two patterns must bind identically. Symmetric by construction.
struct IncompatibilityDecl {
  Literal left;
  Literal right;

  bool operator==(const IncompatibilityDecl&) const = default;
};

struct AbducibleDecl {
  std::string predicate;
  std::size_t arity = 0;
  bool negated = false;

  auto operator<=>(const AbducibleDecl&) const = default;
  bool operator==(const AbducibleDecl&) const = default;
};

/// A variable binds to a sort when its name, lowercased and stripped of
/// trailing digits, equals the sort name (`Country2` -> `country`).
std::string sortOfVariable(std::string_view variable);

struct Theory {
  std::set<Literal> facts;
  std::vector<ArgumentRule> rules;
  std::vector<PriorityRule> priorities;
  std::vector<IncompatibilityDecl> incompatibilities;
  std::set<AbducibleDecl> abducibles;
  std::map<std::string, std::set<std::string>> sorts;
  std::set<std::string> domain;

  /// Recomputes `domain` as every constant mentioned anywhere in the theory.
  void refreshDomain();

  const ArgumentRule* findRule(std::string_view label) const;
  const PriorityRule* findPriority(std::string_view label) const;
  bool hasLabel(std::string_view label) const;

  /// Sort restriction for a variable name, if one is declared.
  const std::set<std::string>* sortFor(std::string_view variable) const;
};

/// Order-insensitive equality on rules, priorities and declarations.
bool structurallyEqual(const Theory& a, const Theory& b);

/// True iff b is the complement of a, or (a, b) matches a declared
/// incompatibility (in either orientation) under one substitution.
bool incompatible(const Literal& a, const Literal& b, const Theory& theory);
bool incompatible(const Literal& a, const Literal& b,
                  const std::vector<IncompatibilityDecl>& declarations);

struct SourceSpan {
  std::string file;
  int startLine = 1;
  int startCol = 1;
  int endLine = 1;
  int endCol = 1;

  bool operator==(const SourceSpan&) const = default;
};

struct Diagnostic {
  std::string message;
  std::string label;  // offending rule label, if any
  std::optional<SourceSpan> span;
  std::string hint;   // expected-token hint for parse errors

  std::string toString() const;
};

/// Checks every well-formedness invariant; an empty result means clean.
std::vector<Diagnostic> validate(const Theory& theory);

/// Thrown by operations that require a validated theory.
class TheoryError : public std::runtime_error {
 public:
  explicit TheoryError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

/// Variables of a literal list in first-occurrence order.
std::vector<std::string> variablesOf(const std::vector<Literal>& literals);
void collectVariables(const Literal& l, std::vector<std::string>& out);

using Substitution = std::map<std::string, std::string>;

/// Applies a variable->constant substitution; unbound variables stay.
Literal substitute(const Literal& l, const Substitution& s);

/// One-way matching of a pattern onto a ground literal, extending `s`.
bool match(const Literal& pattern, const Literal& ground, Substitution& s);

std::string joinLiterals(const std::vector<Literal>& literals, std::string_view sep = ", ");

}  // namespace prefarg
