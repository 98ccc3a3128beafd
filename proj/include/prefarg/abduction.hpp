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

// Minimal sets of abducible assumptions under which a goal is accepted.

#pragma once

#include <cstddef>
#include <vector>

#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg {

enum class Tier { Sceptical, Credulous };

struct AbductiveAnswer {
  std::vector<Literal> delta;  // sorted
  Status resultingStatus = Status::AcceptedSceptically;
};

struct AbductionOptions {
  Tier tier = Tier::Sceptical;
  std::size_t maxSize = 2;
  std::size_t maxCandidateSets = 100000;
  SolverOptions solver;
};

struct AbductionResult {
  std::vector<AbductiveAnswer> answers;
  bool truncated = false;
  std::size_t explored = 0;
};

/// Whether `status` meets `tier`.
bool reaches(Status status, Tier tier);

/// Declared abducibles grounded over the domain (sorted positions range over
/// their sort), minus literals already known, literals incompatible with
/// the facts or evidence, and literals no rule, priority or conflict
/// declaration mentions. Sorted.
std::vector<Literal> abducibleCandidates(const Theory& theory, const std::vector<Literal>& evidence,
                                         const Literal& goal);

/// Every subset-minimal consistent delta of at most `maxSize` literals
/// making `goal` reach the tier, ordered by size then lexicographically.
/// When the goal already reaches the tier the only answer is the empty delta.
AbductionResult abduce(const Theory& theory, const std::vector<Literal>& evidence, const Literal& goal,
                       const AbductionOptions& options = {});

}  // namespace prefarg
