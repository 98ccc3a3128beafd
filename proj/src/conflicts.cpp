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

#include "prefarg/conflicts.hpp"

#include <algorithm>
#include <cctype>
#include <functional>

#include "prefarg/grounder.hpp"

namespace prefarg {

namespace {

// Variables are renamed apart with a side marker: '1' for the first rule,
// '2' for the second, 'd' for declaration patterns.
std::string tag(const std::string& var, char side) { return var + "#" + side; }

std::string baseName(const std::string& tagged) { return tagged.substr(0, tagged.find('#')); }

Literal renamed(const Literal& l, char side) {
  Literal out = l;
  for (auto& t : out.args)
    if (t.isVariable()) t.name = tag(t.name, side);
  return out;
}

class Unifier {
 public:
  explicit Unifier(const Theory& theory) : theory_(theory) {}

  Term walk(Term t) const {
    while (t.isVariable()) {
      auto it = bind_.find(t.name);
      if (it == bind_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool unify(const Literal& a, const Literal& b) {
    if (a.predicate != b.predicate || a.args.size() != b.args.size() || a.negated != b.negated) return false;
    for (std::size_t i = 0; i < a.args.size(); ++i)
      if (!unifyTerms(a.args[i], b.args[i])) return false;
    return true;
  }

  Literal apply(const Literal& l) const {
    Literal out = l;
    for (auto& t : out.args) t = walk(t);
    return out;
  }

 private:
  const std::set<std::string>* sortOf(const Term& v) const { return theory_.sortFor(baseName(v.name)); }

  bool unifyTerms(const Term& x, const Term& y) {
    Term a = walk(x);
    Term b = walk(y);
    if (a == b) return true;
    if (a.isConstant() && b.isConstant()) return false;
    if (a.isConstant()) std::swap(a, b);
    // a is a variable here.
    const auto* sa = sortOf(a);
    if (b.isConstant()) {
      if (sa && !sa->count(b.name)) return false;
      bind_[a.name] = b;
      return true;
    }
    const auto* sb = sortOf(b);
    if (sa && sb) {
      bool meet = std::any_of(sa->begin(), sa->end(), [&](const std::string& c) { return sb->count(c) > 0; });
      if (!meet) return false;
    }
    // Keep the sorted variable as the representative.
    if (sa && !sb)
      bind_[b.name] = a;
    else
      bind_[a.name] = b;
    return true;
  }

  const Theory& theory_;
  std::map<std::string, Term> bind_;
};

std::optional<Unifier> unifyIncompatible(const Literal& ha, const Literal& hb, const Theory& theory) {
  {
    Unifier u(theory);
    if (u.unify(ha, complement(hb))) return u;
  }
  for (const auto& d : theory.incompatibilities) {
    const Literal l = renamed(d.left, 'd');
    const Literal r = renamed(d.right, 'd');
    Unifier u(theory);
    if (u.unify(ha, l) && u.unify(hb, r)) return u;
    Unifier v(theory);
    if (v.unify(ha, r) && v.unify(hb, l)) return v;
  }
  return std::nullopt;
}

std::string lower(const std::string& s) {
  std::string out;
  for (char c : s) out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

std::string localName(const std::string& label) {
  auto dot = label.rfind('.');
  return dot == std::string::npos ? label : label.substr(dot + 1);
}

std::string nameSpace(const std::string& label) {
  auto dot = label.rfind('.');
  return dot == std::string::npos ? "" : label.substr(0, dot + 1);
}

// Extends `s` so every pattern maps into `pool`; calls `found` per solution
// until it returns true.
bool matchInto(const std::vector<Literal>& patterns, std::size_t i, const std::set<Literal>& pool,
               Substitution& s, const std::function<bool(const Substitution&)>& found) {
  if (i == patterns.size()) return found(s);
  for (const auto& g : pool) {
    Substitution next = s;
    if (match(patterns[i], g, next) && matchInto(patterns, i + 1, pool, next, found)) return true;
  }
  return false;
}

bool subsetOf(const std::set<Literal>& a, const std::set<Literal>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

struct Candidate {
  const ArgumentRule* a;
  const ArgumentRule* b;
  Literal headA, headB;            // with open variables
  Literal groundA, groundB;        // with fresh constants
  std::set<Literal> bodyA, bodyB;  // ground
  bool aInB = false;
  bool bInA = false;
  std::map<std::string, std::string> unifier;
};

// Hands out fresh constants w_<name>, numbered on clash.
class FreshNames {
 public:
  explicit FreshNames(std::set<std::string> taken) : used_(std::move(taken)) {}

  std::string operator()(const std::string& tagged) {
    auto it = fresh_.find(tagged);
    if (it != fresh_.end()) return it->second;
    std::string base = "w_" + lower(baseName(tagged));
    std::string name = base;
    for (int n = 2; used_.count(name); ++n) name = base + std::to_string(n);
    used_.insert(name);
    return fresh_[tagged] = name;
  }

  Literal close(const Literal& l) {
    Literal out = l;
    for (auto& t : out.args)
      if (t.isVariable()) t = Term::constant((*this)(t.name));
    return out;
  }

 private:
  std::set<std::string> used_;
  std::map<std::string, std::string> fresh_;
};

std::optional<Candidate> pairUp(const ArgumentRule& ra, const ArgumentRule& rb, const Theory& theory) {
  const Literal ha = renamed(ra.head, '1');
  const Literal hb = renamed(rb.head, '2');
  auto u = unifyIncompatible(ha, hb, theory);
  if (!u) return std::nullopt;

  Candidate c;
  c.a = &ra;
  c.b = &rb;
  std::vector<Literal> body1, body2;
  for (const auto& l : ra.body) body1.push_back(u->apply(renamed(l, '1')));
  for (const auto& l : rb.body) body2.push_back(u->apply(renamed(l, '2')));
  const Literal ua = u->apply(ha);
  const Literal ub = u->apply(hb);

  // Variables show their source name; a prime is added only when two
  // distinct variables would otherwise print alike.
  std::map<std::string, std::string> shown;
  std::set<std::string> taken;
  auto open = [&](const Literal& l) {
    Literal out = l;
    for (auto& t : out.args) {
      if (!t.isVariable()) continue;
      auto it = shown.find(t.name);
      if (it == shown.end()) {
        std::string name = baseName(t.name);
        while (taken.count(name)) name += "'";
        taken.insert(name);
        it = shown.emplace(t.name, name).first;
      }
      t.name = it->second;
    }
    return out;
  };
  c.headA = open(ua);
  c.headB = open(ub);

  // Head variables get the same fresh constant on both sides.
  FreshNames heads(theory.domain);
  c.groundA = heads.close(ua);
  c.groundB = heads.close(ub);
  auto closeHeadVars = [&](const std::vector<Literal>& body) {
    std::vector<std::string> headVars;
    collectVariables(ua, headVars);
    collectVariables(ub, headVars);
    std::vector<Literal> out;
    for (const auto& l : body) {
      Literal x = l;
      for (auto& t : x.args)
        if (t.isVariable() && std::find(headVars.begin(), headVars.end(), t.name) != headVars.end())
          t = Term::constant(heads(t.name));
      out.push_back(std::move(x));
    }
    return out;
  };
  const auto partA = closeHeadVars(body1);
  const auto partB = closeHeadVars(body2);

  // Does the smaller body embed into the larger one once its remaining
  // variables are bound to the larger body's terms?
  auto embed = [&](const std::vector<Literal>& small, const std::vector<Literal>& big,
                   std::set<Literal>& smallOut, std::set<Literal>& bigOut) {
    FreshNames names = heads;
    std::set<Literal> pool;
    for (const auto& l : big) pool.insert(names.close(l));
    Substitution s;
    Substitution found;
    bool ok = matchInto(small, 0, pool, s, [&](const Substitution& full) {
      found = full;
      return true;
    });
    if (!ok) return false;
    smallOut.clear();
    for (const auto& l : small) smallOut.insert(substitute(l, found));
    bigOut = pool;
    return true;
  };
  if (embed(partA, partB, c.bodyA, c.bodyB)) {
    c.aInB = true;
    c.bInA = c.bodyA == c.bodyB;
  } else if (embed(partB, partA, c.bodyB, c.bodyA)) {
    c.bInA = true;
  } else {
    FreshNames names = heads;
    for (const auto& l : partA) c.bodyA.insert(names.close(l));
    for (const auto& l : partB) c.bodyB.insert(names.close(l));
  }

  for (const auto& side : {std::make_pair(&ra, '1'), std::make_pair(&rb, '2')}) {
    std::vector<std::string> vars;
    collectVariables(side.first->head, vars);
    for (const auto& v : vars) {
      Term t = u->walk(Term::variable(tag(v, side.second)));
      // Keys name the first rule's variables plainly and the second's primed.
      std::string key = side.second == '1' ? v : v + "'";
      c.unifier[key] = t.isVariable() ? open(Literal{"v", {t}, false}).args[0].name : t.name;
    }
  }
  return c;
}

bool contradictory(const std::set<Literal>& a, const std::set<Literal>& b, const Theory& theory) {
  std::vector<Literal> all(a.begin(), a.end());
  all.insert(all.end(), b.begin(), b.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (incompatible(all[i], all[j], theory)) return true;
  return false;
}

bool predicateDisjoint(const std::set<Literal>& a, const std::set<Literal>& b) {
  std::set<std::string> pa;
  for (const auto& l : a) pa.insert(l.predicate);
  return std::none_of(b.begin(), b.end(), [&](const Literal& l) { return pa.count(l.predicate) > 0; });
}

// A rule concluding `head` whose body sits strictly between `weak` and
// `strong`.
bool shadowed(const Literal& head, const std::set<Literal>& weak, const std::set<Literal>& strong,
              const ArgumentRule& skipA, const ArgumentRule& skipB, const Theory& theory) {
  for (const auto& r : theory.rules) {
    if (&r == &skipA || &r == &skipB) continue;
    Substitution s;
    if (!match(r.head, head, s)) continue;
    bool hit = matchInto(r.body, 0, strong, s, [&](const Substitution& full) {
      std::set<Literal> mid;
      for (const auto& b : r.body) mid.insert(substitute(b, full));
      return subsetOf(weak, mid) && mid.size() > weak.size();
    });
    if (hit) return true;
  }
  return false;
}

}  // namespace

std::vector<ConflictReport> detectConflicts(const Theory& theory, const SolverOptions& options) {
  std::vector<const ArgumentRule*> rules;
  for (const auto& r : theory.rules) rules.push_back(&r);
  std::sort(rules.begin(), rules.end(),
            [](const ArgumentRule* a, const ArgumentRule* b) { return a->label < b->label; });

  std::vector<ConflictReport> out;
  for (std::size_t i = 0; i < rules.size(); ++i) {
    for (std::size_t j = i + 1; j < rules.size(); ++j) {
      auto c = pairUp(*rules[i], *rules[j], theory);
      if (!c) continue;
      if (contradictory(c->bodyA, c->bodyB, theory)) continue;
      const bool aInB = c->aInB;
      const bool bInA = c->bInA;
      if (!aInB && !bInA && !predicateDisjoint(c->bodyA, c->bodyB)) continue;
      if (aInB && !bInA && shadowed(c->groundA, c->bodyA, c->bodyB, *c->a, *c->b, theory)) continue;
      if (bInA && !aInB && shadowed(c->groundB, c->bodyB, c->bodyA, *c->a, *c->b, theory)) continue;

      ConflictReport rep;
      rep.ruleA = c->a->label;
      rep.ruleB = c->b->label;
      rep.headA = c->headA;
      rep.headB = c->headB;
      rep.unifier = c->unifier;
      std::set<Literal> witness = c->bodyA;
      witness.insert(c->bodyB.begin(), c->bodyB.end());
      rep.witness.assign(witness.begin(), witness.end());

      // Decide the pair in the witness context: the witness plus the two
      // competing conclusions.
      Theory t = theory;
      t.facts.insert(witness.begin(), witness.end());
      t.refreshDomain();
      t.domain.insert(theory.domain.begin(), theory.domain.end());
      GroundOptions go = options.grounding;
      go.sortHints = {c->groundA, c->groundB};
      GroundTheory gt = ground(t, {}, go);
      std::set<Literal> ctx = witness;
      ctx.insert(c->groundA);
      ctx.insert(c->groundB);
      Comparison cmp = PriorityIndex(gt).compare(c->groundA, c->groundB, ctx);
      if (cmp.winner != Winner::Undecided) {
        rep.resolved = true;
        rep.winner = cmp.winner == Winner::Attacker ? rep.ruleA : rep.ruleB;
        rep.decidedBy = cmp.decidedBy;
        rep.bySpecificity = cmp.bySpecificity;
      } else {
        rep.suggestion = suggestPriority(theory, rep);
      }
      out.push_back(std::move(rep));
    }
  }
  return out;
}

std::size_t countUnresolved(const std::vector<ConflictReport>& reports) {
  return static_cast<std::size_t>(
      std::count_if(reports.begin(), reports.end(), [](const ConflictReport& r) { return !r.resolved; }));
}

std::optional<PriorityRule> suggestPriority(const Theory& theory, const ConflictReport& report) {
  if (report.resolved) return std::nullopt;
  const ArgumentRule* a = theory.findRule(report.ruleA);
  const ArgumentRule* b = theory.findRule(report.ruleB);
  if (!a || !b) return std::nullopt;
  auto c = pairUp(*a, *b, theory);
  if (!c) return std::nullopt;
  const ArgumentRule* higher = nullptr;
  const ArgumentRule* lower = nullptr;
  if (c->bInA && c->bodyA.size() > c->bodyB.size()) {
    higher = a;
    lower = b;
  } else if (c->aInB && c->bodyB.size() > c->bodyA.size()) {
    higher = b;
    lower = a;
  } else {
    return std::nullopt;
  }
  PriorityRule p;
  const std::string base = nameSpace(higher->label) + "pref_" + localName(higher->label) + "_" + localName(lower->label);
  p.label = base;
  for (int n = 2; theory.hasLabel(p.label); ++n) p.label = base + "_" + std::to_string(n);
  p.higher = higher->label;
  p.lower = lower->label;
  p.level = 1;
  return p;
}

Theory applyResolution(Theory theory, PriorityRule decision) {
  auto fail = [&](std::string message) {
    Diagnostic d;
    d.message = std::move(message);
    d.label = decision.label;
    throw TheoryError({d});
  };
  if (theory.hasLabel(decision.label)) fail("duplicate label " + decision.label);
  auto levelOf = [&](const std::string& label) -> int {
    if (theory.findRule(label)) return 0;
    if (const auto* p = theory.findPriority(label)) return p->level;
    fail("unknown label " + label);
    return -1;
  };
  const int lh = levelOf(decision.higher);
  const int ll = levelOf(decision.lower);
  if (lh != ll) fail("priority " + decision.label + " relates labels of different levels");
  if (decision.higher == decision.lower) fail("irreflexivity violated in " + decision.label);
  decision.level = lh + 1;
  theory.priorities.push_back(std::move(decision));
  theory.refreshDomain();
  auto diags = validate(theory);
  if (!diags.empty()) throw TheoryError(std::move(diags));
  return theory;
}

}  // namespace prefarg
