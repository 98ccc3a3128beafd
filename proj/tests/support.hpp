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

// Helpers shared by the unit tests and the acceptance runner.

#pragma once

#include <algorithm>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "oracle/oracle.hpp"
#include "oracle/random_theory.hpp"
#include "prefarg/abduction.hpp"
#include "prefarg/dsl.hpp"
#include "prefarg/solver.hpp"

namespace support {

using namespace prefarg;

/// Counts status disagreements between engine and oracle on one theory,
/// describing the last one in `report`.
inline std::size_t oracleMismatches(const Theory& t, const oracle::Model& m, Semantics sem, std::string* report) {
  SolverOptions o;
  o.semantics = sem;
  o.maxPreferredNodes = 30;
  Analysis an(t, {}, o);
  std::size_t bad = 0;
  for (const auto& l : m.queryable()) {
    Verdict v = an.verdict(l);
    Status want = m.status(l, sem);
    if (!v.exact || v.status != want) {
      ++bad;
      if (report) {
        std::ostringstream os;
        os << l.toString() << ": engine " << statusName(v.status) << (v.exact ? "" : " (inexact)") << ", oracle "
           << statusName(want) << "\n"
           << dsl::print(t);
        *report = os.str();
      }
    }
  }
  return bad;
}

/// Whether a span lies within the text, start before end.
inline bool spanInside(const SourceSpan& s, const std::string& text) {
  std::vector<std::size_t> lengths;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) lengths.push_back(line.size());
  if (lengths.empty() || text.back() == '\n') lengths.push_back(0);
  auto ok = [&](int l, int c) {
    return l >= 1 && static_cast<std::size_t>(l) <= lengths.size() && c >= 1 &&
           static_cast<std::size_t>(c) <= lengths[static_cast<std::size_t>(l) - 1] + 1;
  };
  bool ordered = s.startLine < s.endLine || (s.startLine == s.endLine && s.startCol <= s.endCol);
  return ok(s.startLine, s.startCol) && ok(s.endLine, s.endCol) && ordered;
}

/// Random single-point corruptions of a text: deletions, junk insertions
/// and truncations in turn.
inline std::string mutate(const std::string& base, int i, std::mt19937& rng) {
  static const char junk[] = "(){}<>.,:;~|=!?%\"' \nXYZ neg rule prefer 123";
  std::string text = base;
  switch (i % 3) {
    case 0: text.erase(oracle::pick(rng, text.size()), 1 + oracle::pick(rng, 4)); break;
    case 1: text.insert(oracle::pick(rng, text.size()), 1, junk[oracle::pick(rng, sizeof junk - 1)]); break;
    default: text.resize(oracle::pick(rng, text.size())); break;
  }
  return text;
}

inline Status statusWith(const Theory& t, std::vector<Literal> ev, const std::vector<Literal>& delta, const Literal& goal) {
  ev.insert(ev.end(), delta.begin(), delta.end());
  return Analysis(t, ev, {}, {goal}).verdict(goal).status;
}

inline bool consistent(const Theory& t, const std::vector<Literal>& delta) {
  for (std::size_t i = 0; i < delta.size(); ++i)
    for (std::size_t j = i + 1; j < delta.size(); ++j)
      if (incompatible(delta[i], delta[j], t)) return false;
  return true;
}

inline bool subsetOf(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Every declared abducible over every constant in sight, minus what is
// already known or contradicts it. No sorts, no relevance filtering.
inline std::vector<Literal> rawCandidates(const Theory& t, const std::vector<Literal>& ev, const Literal& goal) {
  std::set<std::string> consts = t.domain;
  std::set<Literal> known = t.facts;
  known.insert(ev.begin(), ev.end());
  for (const auto& l : known)
    for (const auto& a : l.args) consts.insert(a.name);
  for (const auto& a : goal.args) consts.insert(a.name);
  std::vector<Literal> out;
  for (const auto& d : t.abducibles) {
    std::vector<std::vector<std::string>> tuples{{}};
    for (std::size_t i = 0; i < d.arity; ++i) {
      std::vector<std::vector<std::string>> next;
      for (const auto& tup : tuples)
        for (const auto& c : consts) {
          next.push_back(tup);
          next.back().push_back(c);
        }
      tuples = std::move(next);
    }
    for (const auto& tup : tuples) {
      Literal l;
      l.predicate = d.predicate;
      l.negated = d.negated;
      for (const auto& c : tup) l.args.push_back(Term::constant(c));
      if (known.count(l)) continue;
      if (std::any_of(known.begin(), known.end(), [&](const Literal& k) { return incompatible(l, k, t); })) continue;
      out.push_back(l);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Every consistent subset of the candidates up to maxSize that reaches
// the tier, reduced to the subset-minimal ones.
inline std::set<std::vector<Literal>> exhaustiveAnswers(const Theory& t, const std::vector<Literal>& ev,
                                                        const Literal& goal, Tier tier, std::size_t maxSize,
                                                        const std::vector<Literal>& cands) {
  std::vector<std::vector<Literal>> hits;
  std::vector<Literal> cur;
  std::function<void(std::size_t)> walk = [&](std::size_t from) {
    if (consistent(t, cur) && reaches(statusWith(t, ev, cur, goal), tier)) hits.push_back(cur);
    if (cur.size() == maxSize) return;
    for (std::size_t i = from; i < cands.size(); ++i) {
      cur.push_back(cands[i]);
      walk(i + 1);
      cur.pop_back();
    }
  };
  walk(0);
  std::set<std::vector<Literal>> out;
  for (const auto& h : hits) {
    bool minimal = std::none_of(hits.begin(), hits.end(),
                                [&](const auto& o) { return o.size() < h.size() && subsetOf(o, h); });
    if (minimal) out.insert(h);
  }
  return out;
}

}  // namespace support
