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

#include "prefarg/abduction.hpp"

#include <algorithm>

#include "prefarg/grounder.hpp"

namespace prefarg {

bool reaches(Status status, Tier tier) {
  if (status == Status::AcceptedSceptically) return true;
  return tier == Tier::Credulous && status == Status::AcceptedCredulously;
}

namespace {

// Sort of argument `pos` of `predicate`, taken from the first rule or
// priority literal placing a sorted variable there.
const std::set<std::string>* positionSort(const std::string& predicate, std::size_t arity, std::size_t pos,
                                          const Theory& theory,
                                          const std::map<std::string, std::set<std::string>>& sorts) {
  auto probe = [&](const Literal& l) -> const std::set<std::string>* {
    if (l.predicate != predicate || l.args.size() != arity || !l.args[pos].isVariable()) return nullptr;
    auto it = sorts.find(sortOfVariable(l.args[pos].name));
    return it == sorts.end() ? nullptr : &it->second;
  };
  for (const auto& r : theory.rules) {
    if (auto s = probe(r.head)) return s;
    for (const auto& b : r.body)
      if (auto s = probe(b)) return s;
  }
  for (const auto& p : theory.priorities)
    for (const auto& b : p.body)
      if (auto s = probe(b)) return s;
  return nullptr;
}

bool matchesAny(const Literal& l, const Literal& pattern) {
  Substitution s;
  return match(pattern, l, s);
}

// Whether assuming `l` could change any verdict: some rule or priority
// consumes it, it is the goal, or it contradicts something a rule or the
// goal could conclude. Minimal answers never contain other literals.
bool relevant(const Literal& l, const Theory& theory, const Literal& goal) {
  if (l == goal || incompatible(l, goal, theory)) return true;
  const Literal neg = complement(l);
  for (const auto& r : theory.rules) {
    if (matchesAny(neg, r.head)) return true;
    for (const auto& b : r.body)
      if (matchesAny(l, b)) return true;
  }
  for (const auto& p : theory.priorities)
    for (const auto& b : p.body)
      if (matchesAny(l, b)) return true;
  for (const auto& d : theory.incompatibilities)
    if (matchesAny(l, d.left) || matchesAny(l, d.right)) return true;
  return false;
}

bool consistent(const std::vector<Literal>& delta, const Theory& theory) {
  for (std::size_t i = 0; i < delta.size(); ++i)
    for (std::size_t j = i + 1; j < delta.size(); ++j)
      if (incompatible(delta[i], delta[j], theory)) return false;
  return true;
}

}  // namespace

std::vector<Literal> abducibleCandidates(const Theory& theory, const std::vector<Literal>& evidence,
                                         const Literal& goal) {
  std::set<Literal> known = theory.facts;
  known.insert(evidence.begin(), evidence.end());
  std::set<std::string> domain = theory.domain;
  for (const auto& l : known)
    for (const auto& t : l.args) domain.insert(t.name);
  for (const auto& t : goal.args)
    if (t.isConstant()) domain.insert(t.name);
  std::vector<Literal> hints(evidence.begin(), evidence.end());
  hints.push_back(goal);
  const auto sorts = inferSorts(theory, hints);

  std::vector<Literal> out;
  for (const auto& decl : theory.abducibles) {
    std::vector<std::vector<std::string>> ranges;
    for (std::size_t i = 0; i < decl.arity; ++i) {
      const auto* s = positionSort(decl.predicate, decl.arity, i, theory, sorts);
      ranges.emplace_back(s ? s->begin() : domain.begin(), s ? s->end() : domain.end());
      if (ranges.back().empty()) break;
    }
    if (ranges.size() != decl.arity) continue;
    std::vector<std::size_t> idx(decl.arity, 0);
    for (;;) {
      Literal l;
      l.predicate = decl.predicate;
      l.negated = decl.negated;
      for (std::size_t i = 0; i < decl.arity; ++i) l.args.push_back(Term::constant(ranges[i][idx[i]]));
      bool clash = known.count(l) > 0 ||
                   std::any_of(known.begin(), known.end(), [&](const Literal& k) { return incompatible(l, k, theory); });
      if (!clash && relevant(l, theory, goal)) out.push_back(std::move(l));
      std::size_t k = decl.arity;
      bool done = true;
      while (k > 0) {
        --k;
        if (++idx[k] < ranges[k].size()) {
          done = false;
          break;
        }
        idx[k] = 0;
      }
      if (done) break;
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Status of the goal once the delta joins the evidence; the same path a
// query takes.
Status statusWith(const Theory& theory, std::vector<Literal> evidence, const std::vector<Literal>& delta,
                  const Literal& goal, const SolverOptions& options) {
  evidence.insert(evidence.end(), delta.begin(), delta.end());
  return Analysis(theory, evidence, options, {goal}).verdict(goal).status;
}

}  // namespace

AbductionResult abduce(const Theory& theory, const std::vector<Literal>& evidence, const Literal& goal,
                       const AbductionOptions& options) {
  if (!goal.isGround()) throw std::invalid_argument("abduction goal must be ground: " + goal.toString());
  checkEvidence(theory, evidence);
  AbductionResult result;

  ++result.explored;
  Status now = statusWith(theory, evidence, {}, goal, options.solver);
  if (reaches(now, options.tier)) {
    result.answers.push_back(AbductiveAnswer{{}, now});
    return result;
  }

  // Nothing can ever conclude a goal no rule heads and no assumption names.
  const bool derivable =
      std::any_of(theory.rules.begin(), theory.rules.end(),
                  [&](const ArgumentRule& r) {
                    return r.head.predicate == goal.predicate && r.head.negated == goal.negated;
                  }) ||
      theory.abducibles.count(AbducibleDecl{goal.predicate, goal.arity(), goal.negated}) > 0;
  if (!derivable) return result;

  const auto candidates = abducibleCandidates(theory, evidence, goal);
  const std::size_t n = candidates.size();
  for (std::size_t size = 1; size <= options.maxSize && size <= n; ++size) {
    std::vector<std::size_t> pick(size);
    for (std::size_t i = 0; i < size; ++i) pick[i] = i;
    for (;;) {
      std::vector<Literal> delta;
      for (std::size_t i : pick) delta.push_back(candidates[i]);
      bool redundant = std::any_of(result.answers.begin(), result.answers.end(), [&](const AbductiveAnswer& a) {
        return std::includes(delta.begin(), delta.end(), a.delta.begin(), a.delta.end());
      });
      if (!redundant && consistent(delta, theory)) {
        if (result.explored >= options.maxCandidateSets) {
          result.truncated = true;
          return result;
        }
        ++result.explored;
        Status s = statusWith(theory, evidence, delta, goal, options.solver);
        if (reaches(s, options.tier)) result.answers.push_back(AbductiveAnswer{delta, s});
      }
      // Next combination in lexicographic order.
      std::size_t k = size;
      bool done = true;
      while (k > 0) {
        --k;
        if (pick[k] < n - size + k) {
          ++pick[k];
          for (std::size_t j = k + 1; j < size; ++j) pick[j] = pick[j - 1] + 1;
          done = false;
          break;
        }
      }
      if (done) break;
    }
  }
  return result;
}

}  // namespace prefarg
