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

#include "prefarg/grounder.hpp"

#include <algorithm>
#include <numeric>
#include <tuple>
#include <unordered_map>

namespace prefarg {

GroundingLimitError::GroundingLimitError(std::string schema, std::size_t limit)
    : std::runtime_error("grounding of " + schema + " exceeds the instance limit of " +
                         std::to_string(limit)),
      schema_(std::move(schema)) {}

namespace {

void hintSorts(const Literal& ground, const Literal& pattern, const Theory& theory,
               std::map<std::string, std::set<std::string>>& sorts) {
  if (ground.predicate != pattern.predicate || ground.args.size() != pattern.args.size()) return;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& g = ground.args[i];
    if (!p.isVariable() || !g.isConstant()) continue;
    auto it = theory.sorts.find(sortOfVariable(p.name));
    if (it != theory.sorts.end()) sorts[it->first].insert(g.name);
  }
}

}  // namespace

std::map<std::string, std::set<std::string>> inferSorts(const Theory& theory,
                                                        const std::vector<Literal>& extra) {
  auto sorts = theory.sorts;
  if (sorts.empty()) return sorts;
  auto visit = [&](const Literal& g) {
    for (const auto& r : theory.rules) {
      hintSorts(g, r.head, theory, sorts);
      for (const auto& b : r.body) hintSorts(g, b, theory, sorts);
    }
    for (const auto& p : theory.priorities)
      for (const auto& b : p.body) hintSorts(g, b, theory, sorts);
  };
  for (const auto& f : theory.facts) visit(f);
  for (const auto& l : extra) visit(l);
  return sorts;
}

namespace {

class Grounder {
 public:
  Grounder(const Theory& theory, const std::set<std::string>& extra, const GroundOptions& options)
      : theory_(theory), options_(options) {
    domain_ = theory.domain;
    domain_.insert(extra.begin(), extra.end());
    for (const auto& f : theory.facts)
      for (const auto& t : f.args) domain_.insert(t.name);
    for (const auto& l : options.sortHints)
      for (const auto& t : l.args)
        if (t.isConstant()) domain_.insert(t.name);
    sorts_ = inferSorts(theory, options.sortHints);
  }

  GroundTheory run() {
    GroundTheory gt;
    gt.facts = theory_.facts;
    gt.incompatibilities = theory_.incompatibilities;
    gt.domain = domain_;
    gt.sorts = sorts_;
    for (const auto& f : theory_.facts) {
      GroundRule g;
      g.label = "fact";
      g.isFact = true;
      g.head = f;
      gt.rules.push_back(std::move(g));
    }

    std::vector<std::size_t> order(theory_.rules.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return theory_.rules[a].label < theory_.rules[b].label;
    });
    if (options_.reachableOnly) {
      saturate(order);
      for (std::size_t idx : order) groundReachable(static_cast<int>(idx), gt);
    } else {
      for (std::size_t idx : order) groundRule(static_cast<int>(idx), gt);
    }

    std::vector<std::size_t> porder(theory_.priorities.size());
    std::iota(porder.begin(), porder.end(), 0);
    std::sort(porder.begin(), porder.end(), [&](std::size_t a, std::size_t b) {
      const auto& pa = theory_.priorities[a];
      const auto& pb = theory_.priorities[b];
      return std::tie(pa.level, pa.label) < std::tie(pb.level, pb.label);
    });
    for (std::size_t idx : porder) groundPriority(static_cast<int>(idx), gt);
    return gt;
  }

 private:
  std::vector<std::string> rangeFor(const std::string& var, bool boundByBody) const {
    if (!boundByBody) {
      auto it = sorts_.find(sortOfVariable(var));
      if (it != sorts_.end()) return {it->second.begin(), it->second.end()};
    }
    return {domain_.begin(), domain_.end()};
  }

  void charge(std::size_t n, const std::string& schema) {
    total_ += n;
    if (total_ > options_.maxInstances) throw GroundingLimitError(schema, options_.maxInstances);
  }

  // Calls fn with every substitution of `vars` (sorted by name) over the
  // given ranges, in lexicographic order.
  template <typename Fn>
  void enumerate(const std::vector<std::string>& vars,
                 const std::vector<std::vector<std::string>>& ranges, Substitution base, Fn fn) const {
    for (const auto& r : ranges)
      if (r.empty()) return;
    std::vector<std::size_t> idx(vars.size(), 0);
    for (;;) {
      Substitution s = base;
      for (std::size_t i = 0; i < vars.size(); ++i) s[vars[i]] = ranges[i][idx[i]];
      fn(s);
      std::size_t k = vars.size();
      while (k > 0) {
        --k;
        if (++idx[k] < ranges[k].size()) break;
        idx[k] = 0;
        if (k == 0) return;
      }
      if (vars.empty()) return;
    }
  }

  void groundRule(int schema, GroundTheory& gt) {
    const ArgumentRule& r = theory_.rules[static_cast<std::size_t>(schema)];
    std::vector<std::string> vars;
    collectVariables(r.head, vars);
    for (const auto& b : r.body) collectVariables(b, vars);
    std::sort(vars.begin(), vars.end());
    std::vector<std::string> bodyVars = variablesOf(r.body);
    std::vector<std::vector<std::string>> ranges;
    std::size_t count = 1;
    for (const auto& v : vars) {
      bool bound = std::find(bodyVars.begin(), bodyVars.end(), v) != bodyVars.end();
      ranges.push_back(rangeFor(v, bound));
      count *= ranges.back().size();
      if (count > options_.maxInstances) throw GroundingLimitError(r.label, options_.maxInstances);
    }
    charge(count, r.label);
    auto& bucket = bySchema_[r.label];
    enumerate(vars, ranges, {}, [&](const Substitution& s) {
      GroundRule g;
      g.label = r.label;
      g.schema = schema;
      g.head = substitute(r.head, s);
      for (const auto& b : r.body) g.body.push_back(substitute(b, s));
      g.subst = s;
      bucket.push_back(gt.rules.size());
      gt.rules.push_back(std::move(g));
    });
  }

  // Extends `s` over body[i..] by matching against derivable literals, then
  // over the head-only variables; calls fn with each complete substitution.
  template <typename Fn>
  void joinBody(const ArgumentRule& r, std::size_t i, const Substitution& s, Fn& fn) const {
    if (i == r.body.size()) {
      std::vector<std::string> free;
      collectVariables(r.head, free);
      std::sort(free.begin(), free.end());
      free.erase(std::unique(free.begin(), free.end()), free.end());
      free.erase(std::remove_if(free.begin(), free.end(), [&](const std::string& v) { return s.count(v) > 0; }),
                 free.end());
      std::vector<std::vector<std::string>> ranges;
      for (const auto& v : free) ranges.push_back(rangeFor(v, false));
      enumerate(free, ranges, s, fn);
      return;
    }
    const Literal& b = r.body[i];
    auto it = derivable_.find(std::make_tuple(b.predicate, b.negated, b.args.size()));
    if (it == derivable_.end()) return;
    for (const auto& g : it->second) {
      Substitution next = s;
      if (match(b, g, next)) joinBody(r, i + 1, next, fn);
    }
  }

  void addDerivable(const Literal& l, bool& changed) {
    if (derivable_[std::make_tuple(l.predicate, l.negated, l.args.size())].insert(l).second) changed = true;
  }

  // Least set of literals some chain of rule instances can reach from the
  // facts.
  void saturate(const std::vector<std::size_t>& order) {
    bool changed = false;
    for (const auto& f : theory_.facts) addDerivable(f, changed);
    do {
      changed = false;
      for (std::size_t idx : order) {
        const ArgumentRule& r = theory_.rules[idx];
        std::vector<Literal> heads;
        auto collect = [&](const Substitution& s) { heads.push_back(substitute(r.head, s)); };
        joinBody(r, 0, {}, collect);
        for (const auto& h : heads) addDerivable(h, changed);
      }
    } while (changed);
  }

  // Like groundRule, restricted to instances whose bodies are derivable.
  void groundReachable(int schema, GroundTheory& gt) {
    const ArgumentRule& r = theory_.rules[static_cast<std::size_t>(schema)];
    std::vector<std::string> vars;
    collectVariables(r.head, vars);
    for (const auto& b : r.body) collectVariables(b, vars);
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    std::vector<Substitution> found;
    auto collect = [&](const Substitution& s) { found.push_back(s); };
    joinBody(r, 0, {}, collect);
    // Same order as full enumeration: lexicographic over the sorted variables.
    std::sort(found.begin(), found.end(), [&](const Substitution& a, const Substitution& b) {
      for (const auto& v : vars) {
        const auto& x = a.at(v);
        const auto& y = b.at(v);
        if (x != y) return x < y;
      }
      return false;
    });
    found.erase(std::unique(found.begin(), found.end()), found.end());
    charge(found.size(), r.label);
    auto& bucket = bySchema_[r.label];
    for (const auto& s : found) {
      GroundRule g;
      g.label = r.label;
      g.schema = schema;
      g.head = substitute(r.head, s);
      for (const auto& b : r.body) g.body.push_back(substitute(b, s));
      g.subst = s;
      bucket.push_back(gt.rules.size());
      gt.rules.push_back(std::move(g));
    }
  }

  const Substitution& substOf(const GroundTheory& gt, int level, std::size_t i) const {
    return level == 0 ? gt.rules[i].subst : gt.priorities[i].subst;
  }

  void groundPriority(int schema, GroundTheory& gt) {
    const PriorityRule& p = theory_.priorities[static_cast<std::size_t>(schema)];
    const auto& highs = bySchema_[p.higher];
    const auto& lows = bySchema_[p.lower];
    int refLevel = p.level - 1;

    // Join on the variables the two referenced schemas share.
    std::vector<std::string> shared;
    if (!highs.empty() && !lows.empty()) {
      const auto& hs = substOf(gt, refLevel, highs.front());
      const auto& ls = substOf(gt, refLevel, lows.front());
      for (const auto& [v, c] : hs)
        if (ls.count(v)) shared.push_back(v);
    }
    auto keyOf = [&](const Substitution& s) {
      std::string key;
      for (const auto& v : shared) {
        key += s.at(v);
        key += '\x1f';
      }
      return key;
    };
    std::unordered_map<std::string, std::vector<std::size_t>> lowIndex;
    for (std::size_t l : lows) lowIndex[keyOf(substOf(gt, refLevel, l))].push_back(l);

    std::vector<GroundPriority> out;
    for (std::size_t h : highs) {
      const auto& hs = substOf(gt, refLevel, h);
      auto it = lowIndex.find(keyOf(hs));
      if (it == lowIndex.end()) continue;
      for (std::size_t l : it->second) {
        Substitution merged = hs;
        for (const auto& kv : substOf(gt, refLevel, l)) merged.insert(kv);
        std::vector<std::string> free;
        for (const auto& v : variablesOf(p.body))
          if (!merged.count(v)) free.push_back(v);
        std::sort(free.begin(), free.end());
        std::vector<std::vector<std::string>> ranges(free.size(), {domain_.begin(), domain_.end()});
        enumerate(free, ranges, merged, [&](const Substitution& s) {
          GroundPriority g;
          g.label = p.label;
          g.schema = schema;
          g.level = p.level;
          g.higher = h;
          g.lower = l;
          for (const auto& b : p.body) g.body.push_back(substitute(b, s));
          g.subst = s;
          out.push_back(std::move(g));
          charge(1, p.label);
        });
      }
    }
    std::stable_sort(out.begin(), out.end(),
                     [](const GroundPriority& a, const GroundPriority& b) { return a.subst < b.subst; });
    auto& bucket = bySchema_[p.label];
    for (auto& g : out) {
      bucket.push_back(gt.priorities.size());
      gt.priorities.push_back(std::move(g));
    }
  }

  const Theory& theory_;
  const GroundOptions& options_;
  std::set<std::string> domain_;
  std::map<std::string, std::set<std::string>> sorts_;
  std::map<std::string, std::vector<std::size_t>> bySchema_;
  std::map<std::tuple<std::string, bool, std::size_t>, std::set<Literal>> derivable_;
  std::size_t total_ = 0;
};

}  // namespace

GroundTheory ground(const Theory& theory, const std::set<std::string>& extraConstants,
                    const GroundOptions& options) {
  return Grounder(theory, extraConstants, options).run();
}

Theory GroundTheory::asTheory() const {
  Theory t;
  t.facts = facts;
  t.incompatibilities = incompatibilities;
  t.sorts = sorts;
  std::vector<std::string> ruleLabels(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (rules[i].isFact) continue;
    ruleLabels[i] = rules[i].label + "_g" + std::to_string(i);
    t.rules.push_back(ArgumentRule{ruleLabels[i], rules[i].head, rules[i].body, Layer::None});
  }
  std::vector<std::string> prioLabels(priorities.size());
  for (std::size_t i = 0; i < priorities.size(); ++i) {
    const auto& p = priorities[i];
    prioLabels[i] = p.label + "_g" + std::to_string(i);
    const auto& refs = p.level == 1 ? ruleLabels : prioLabels;
    t.priorities.push_back(PriorityRule{prioLabels[i], refs[p.higher], refs[p.lower], p.body, p.level});
  }
  t.refreshDomain();
  t.domain.insert(domain.begin(), domain.end());
  return t;
}

}  // namespace prefarg
