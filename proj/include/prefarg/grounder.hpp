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

#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefarg/kernel.hpp"

namespace prefarg {

/// One instantiation of a rule schema. Facts appear as body-less instances
/// with `isFact` set; they are strict and never lose a comparison.
struct GroundRule {
  std::string label;  // schema label, or "fact" for facts
  int schema = -1;    // index into Theory::rules, -1 for facts
  bool isFact = false;
  Literal head;
  std::vector<Literal> body;
  Substitution subst;
};

/// One instantiation of a priority schema. For level 1 `higher`/`lower`
/// index GroundTheory::rules; for level k they index level k-1 entries of
/// GroundTheory::priorities.
struct GroundPriority {
  std::string label;
  int schema = -1;  // index into Theory::priorities
  int level = 1;
  std::size_t higher = 0;
  std::size_t lower = 0;
  std::vector<Literal> body;
  Substitution subst;
};

struct GroundTheory {
  std::set<Literal> facts;
  std::vector<GroundRule> rules;  // facts first, then rule instances
  std::vector<GroundPriority> priorities;  // ordered by level
  std::vector<IncompatibilityDecl> incompatibilities;
  std::set<std::string> domain;
  std::map<std::string, std::set<std::string>> sorts;

  /// Re-expresses the instantiation as a variable-free theory. Instance
  /// labels are `<schema>_g<n>`.
  Theory asTheory() const;
};

struct GroundOptions {
  std::size_t maxInstances = 200000;
  /// Literals whose constants should join the sorts of the positions they
  /// occupy, e.g. a query goal mentioning a country no fact names yet.
  std::vector<Literal> sortHints;
  /// Emit only rule instances whose bodies some derivation from the facts
  /// reaches. Arguments and verdicts are unchanged; the instantiation is
  /// much smaller. Unsuitable when facts will be added afterwards.
  bool reachableOnly = false;
};

class GroundingLimitError : public std::runtime_error {
 public:
  GroundingLimitError(std::string schema, std::size_t limit);
  const std::string& schema() const { return schema_; }

 private:
  std::string schema_;
};

/// Sorts extended with every constant occurring at a position where some
/// rule places a sorted variable.
std::map<std::string, std::set<std::string>> inferSorts(const Theory& theory,
                                                        const std::vector<Literal>& extra);

/// Instantiates every rule over domain ∪ extraConstants. Head variables not
/// bound by the body range over their sort when one is declared. Instance
/// order is by schema label, then by substitution.
GroundTheory ground(const Theory& theory, const std::set<std::string>& extraConstants = {},
                    const GroundOptions& options = {});

}  // namespace prefarg
