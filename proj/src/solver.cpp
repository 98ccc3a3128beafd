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

#include "prefarg/solver.hpp"

#include <algorithm>
#include <unordered_map>

#include "prefarg/semantics.hpp"

namespace prefarg {

std::string_view statusName(Status s) {
  switch (s) {
    case Status::AcceptedSceptically: return "accepted-sceptically";
    case Status::AcceptedCredulously: return "accepted-credulously";
    case Status::Rejected: return "rejected";
    case Status::NoArgument: return "no-argument";
  }
  return "no-argument";
}

std::optional<Status> parseStatus(std::string_view name) {
  if (name == "accepted" || name == "accepted-sceptically") return Status::AcceptedSceptically;
  if (name == "accepted-credulous" || name == "accepted-credulously")
    return Status::AcceptedCredulously;
  if (name == "rejected") return Status::Rejected;
  if (name == "no-argument") return Status::NoArgument;
  return std::nullopt;
}

ArgumentLimitError::ArgumentLimitError(std::size_t limit)
    : std::runtime_error("argument construction exceeds the limit of " + std::to_string(limit)) {}

GraphTooLargeError::GraphTooLargeError(std::size_t nodes, std::size_t limit)
    : std::runtime_error("undecided component has " + std::to_string(nodes) +
                         " arguments, above the exact limit of " + std::to_string(limit)) {}

std::set<Literal> deriveClosure(const std::set<Literal>& facts,
                                const std::vector<GroundRule>& instances) {
  std::set<Literal> closure = facts;
  std::vector<bool> fired(instances.size(), false);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (fired[i]) continue;
      const auto& r = instances[i];
      bool ready = std::all_of(r.body.begin(), r.body.end(),
                               [&](const Literal& b) { return closure.count(b) > 0; });
      if (!ready) continue;
      fired[i] = true;
      if (closure.insert(r.head).second) changed = true;
    }
  }
  return closure;
}

std::set<Literal> subConclusions(const Argument& a, const GroundTheory& gt) {
  std::set<Literal> out;
  for (std::size_t i : a.support) out.insert(gt.rules[i].head);
  return out;
}

std::optional<std::size_t> instanceFor(const Argument& a, const Literal& literal,
                                       const GroundTheory& gt) {
  for (std::size_t i : a.support)
    if (gt.rules[i].head == literal) return i;
  return std::nullopt;
}

namespace {

using Support = std::vector<std::size_t>;

bool isSubset(const Support& small, const Support& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

// One instance per concluded literal; anything else is either circular or
// carries a redundant derivation.
bool headsUnique(const Support& s, const GroundTheory& gt) {
  std::vector<const Literal*> heads;
  heads.reserve(s.size());
  for (std::size_t i : s) heads.push_back(&gt.rules[i].head);
  std::sort(heads.begin(), heads.end(), [](const Literal* a, const Literal* b) { return *a < *b; });
  for (std::size_t i = 1; i < heads.size(); ++i)
    if (*heads[i] == *heads[i - 1]) return false;
  return true;
}

std::vector<std::size_t> prioritySupportOf(const Support& support, const GroundTheory& gt,
                                           const std::set<Literal>& facts) {
  std::set<Literal> ctx = facts;
  for (std::size_t i : support) ctx.insert(gt.rules[i].head);
  std::set<std::size_t> chosenRules(support.begin(), support.end());
  std::set<std::size_t> chosen;
  for (std::size_t p = 0; p < gt.priorities.size(); ++p) {
    const auto& gp = gt.priorities[p];
    bool refOk = gp.level == 1 ? chosenRules.count(gp.higher) > 0 : chosen.count(gp.higher) > 0;
    if (!refOk) continue;
    if (std::all_of(gp.body.begin(), gp.body.end(),
                    [&](const Literal& b) { return ctx.count(b) > 0; }))
      chosen.insert(p);
  }
  return {chosen.begin(), chosen.end()};
}

}  // namespace

std::optional<Argument> subArgument(const Argument& a, const Literal& literal, const GroundTheory& gt) {
  auto top = instanceFor(a, literal, gt);
  if (!top) return std::nullopt;
  std::set<std::size_t> keep{*top};
  std::vector<std::size_t> todo{*top};
  while (!todo.empty()) {
    std::size_t i = todo.back();
    todo.pop_back();
    for (const auto& b : gt.rules[i].body) {
      auto j = instanceFor(a, b, gt);
      if (j && keep.insert(*j).second) todo.push_back(*j);
    }
  }
  Argument out;
  out.conclusion = literal;
  out.support.assign(keep.begin(), keep.end());
  out.topRule = *top;
  out.prioritySupport = prioritySupportOf(out.support, gt, gt.facts);
  return out;
}

std::vector<Argument> buildArguments(const GroundTheory& gt, const std::optional<Literal>& goal,
                                     const SolverOptions& options) {
  const std::set<Literal> closure = deriveClosure(gt.facts, gt.rules);
  std::vector<std::size_t> applicable;
  for (std::size_t i = 0; i < gt.rules.size(); ++i) {
    const auto& r = gt.rules[i];
    if (std::all_of(r.body.begin(), r.body.end(),
                    [&](const Literal& b) { return closure.count(b) > 0; }))
      applicable.push_back(i);
  }

  std::map<Literal, std::vector<Support>> supports;
  std::size_t total = 0;
  auto add = [&](const Literal& head, Support s) {
    auto& list = supports[head];
    for (const auto& e : list)
      if (isSubset(e, s)) return false;
    std::size_t before = list.size();
    list.erase(std::remove_if(list.begin(), list.end(), [&](const Support& e) { return isSubset(s, e); }),
               list.end());
    total -= before - list.size();
    list.push_back(std::move(s));
    if (++total > options.maxArguments) throw ArgumentLimitError(options.maxArguments);
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t idx : applicable) {
      const auto& r = gt.rules[idx];
      std::vector<std::vector<Support>> lists;
      bool missing = false;
      std::size_t combos = 1;
      for (const auto& b : r.body) {
        auto it = supports.find(b);
        if (it == supports.end() || it->second.empty()) {
          missing = true;
          break;
        }
        lists.push_back(it->second);
        combos *= lists.back().size();
        if (combos > 8 * options.maxArguments) throw ArgumentLimitError(options.maxArguments);
      }
      if (missing) continue;
      std::vector<std::size_t> pick(lists.size(), 0);
      for (;;) {
        Support s{idx};
        for (std::size_t k = 0; k < lists.size(); ++k) {
          const auto& part = lists[k][pick[k]];
          s.insert(s.end(), part.begin(), part.end());
        }
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        if (headsUnique(s, gt) && add(r.head, std::move(s))) changed = true;
        std::size_t k = lists.size();
        bool done = true;
        while (k > 0) {
          --k;
          if (++pick[k] < lists[k].size()) {
            done = false;
            break;
          }
          pick[k] = 0;
        }
        if (done) break;
      }
    }
  }

  std::vector<Argument> out;
  for (const auto& [head, list] : supports) {
    if (goal && head != *goal) continue;
    for (const auto& s : list) {
      Argument a;
      a.conclusion = head;
      a.support = s;
      a.topRule = *instanceFor(a, head, gt);
      a.prioritySupport = prioritySupportOf(s, gt, gt.facts);
      out.push_back(std::move(a));
    }
  }
  std::sort(out.begin(), out.end(), [](const Argument& a, const Argument& b) {
    if (a.conclusion != b.conclusion) return a.conclusion < b.conclusion;
    if (a.support.size() != b.support.size()) return a.support.size() < b.support.size();
    return a.support < b.support;
  });
  return out;
}

PriorityIndex::PriorityIndex(const GroundTheory& gt) : gt_(gt) {
  ctx_.resize(gt.priorities.size());
  for (std::size_t p = 0; p < gt.priorities.size(); ++p) {
    const auto& gp = gt.priorities[p];
    std::vector<Literal> c = gp.body;
    if (gp.level == 1) {
      const auto& h = gt.rules[gp.higher];
      const auto& l = gt.rules[gp.lower];
      c.insert(c.end(), h.body.begin(), h.body.end());
      c.insert(c.end(), l.body.begin(), l.body.end());
      byConclusions_[{h.head, l.head}].push_back(p);
    } else {
      // Priorities are ordered by level, so referenced contexts exist.
      c.insert(c.end(), ctx_[gp.higher].begin(), ctx_[gp.higher].end());
      c.insert(c.end(), ctx_[gp.lower].begin(), ctx_[gp.lower].end());
      byReferences_[{gp.higher, gp.lower}].push_back(p);
    }
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    ctx_[p] = std::move(c);
  }
}

bool PriorityIndex::applicable(std::size_t priority, const std::set<Literal>& context) const {
  const auto& c = ctx_[priority];
  return std::all_of(c.begin(), c.end(), [&](const Literal& l) { return context.count(l) > 0; });
}

namespace {

std::vector<std::string> labelsOf(const std::vector<std::size_t>& ids, const GroundTheory& gt) {
  std::set<std::string> labels;
  for (std::size_t i : ids) labels.insert(gt.priorities[i].label);
  return {labels.begin(), labels.end()};
}

bool strictSubset(const std::vector<Literal>& a, const std::vector<Literal>& b) {
  return a.size() < b.size() && std::includes(b.begin(), b.end(), a.begin(), a.end());
}

Winner flip(Winner w) {
  if (w == Winner::Attacker) return Winner::Target;
  if (w == Winner::Target) return Winner::Attacker;
  return w;
}

}  // namespace

Comparison PriorityIndex::decide(const std::vector<std::size_t>& sa, const std::vector<std::size_t>& sb,
                                 const std::set<Literal>& context) const {
  Comparison c;
  if (sa.empty() && sb.empty()) return c;
  if (sb.empty()) {
    c.winner = Winner::Attacker;
    c.decidedBy = labelsOf(sa, gt_);
    c.instances = sa;
    return c;
  }
  if (sa.empty()) {
    c.winner = Winner::Target;
    c.decidedBy = labelsOf(sb, gt_);
    c.instances = sb;
    return c;
  }

  std::vector<std::size_t> ta, tb;
  auto collect = [&](std::size_t h, std::size_t l, std::vector<std::size_t>& into) {
    auto it = byReferences_.find({h, l});
    if (it == byReferences_.end()) return;
    for (std::size_t q : it->second)
      if (applicable(q, context)) into.push_back(q);
  };
  for (std::size_t h : sa)
    for (std::size_t l : sb) {
      collect(h, l, ta);
      collect(l, h, tb);
    }
  auto tidy = [](std::vector<std::size_t>& v) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  };
  tidy(ta);
  tidy(tb);

  Comparison up = decide(ta, tb, context);
  if (up.winner != Winner::Undecided) {
    const auto& won = up.winner == Winner::Attacker ? ta : tb;
    std::vector<std::size_t> referenced;
    for (std::size_t q : won) referenced.push_back(gt_.priorities[q].higher);
    std::sort(referenced.begin(), referenced.end());
    referenced.erase(std::unique(referenced.begin(), referenced.end()), referenced.end());
    up.instances.insert(up.instances.end(), referenced.begin(), referenced.end());
    for (const auto& l : labelsOf(referenced, gt_))
      if (std::find(up.decidedBy.begin(), up.decidedBy.end(), l) == up.decidedBy.end())
        up.decidedBy.push_back(l);
    return up;
  }

  // Nothing above settles it: prefer the side whose priority rests on a
  // strictly larger context than every opposing priority.
  auto dominates = [&](const std::vector<std::size_t>& mine, const std::vector<std::size_t>& theirs)
      -> std::optional<std::size_t> {
    for (std::size_t p : mine) {
      bool all = std::all_of(theirs.begin(), theirs.end(),
                             [&](std::size_t q) { return strictSubset(ctx_[q], ctx_[p]); });
      if (all) return p;
    }
    return std::nullopt;
  };
  auto da = dominates(sa, sb);
  auto db = dominates(sb, sa);
  if (da.has_value() != db.has_value()) {
    c.winner = da ? Winner::Attacker : Winner::Target;
    c.decidedBy = {gt_.priorities[da ? *da : *db].label};
    c.instances = {da ? *da : *db};
    c.bySpecificity = true;
  }
  return c;
}

Comparison PriorityIndex::compare(const Literal& a, const Literal& b,
                                  const std::set<Literal>& context) const {
  auto side = [&](const Literal& x, const Literal& y) {
    std::vector<std::size_t> out;
    auto it = byConclusions_.find({x, y});
    if (it == byConclusions_.end()) return out;
    for (std::size_t p : it->second)
      if (applicable(p, context)) out.push_back(p);
    return out;
  };
  return decide(side(a, b), side(b, a), context);
}

Comparison compareConclusions(const Literal& a, const Literal& b, const GroundTheory& gt,
                              const std::set<Literal>& context) {
  Comparison c;
  if (gt.facts.count(b)) {
    c.winner = Winner::Target;
    c.strict = true;
    return c;
  }
  if (gt.facts.count(a)) {
    c.winner = Winner::Attacker;
    c.strict = true;
    return c;
  }
  return PriorityIndex(gt).compare(a, b, context);
}

namespace {

Comparison compareWith(const PriorityIndex& index, const Argument& a, const Argument& b,
                       const Literal& at, const GroundTheory& gt, const std::set<Literal>& context) {
  Comparison c;
  auto target = instanceFor(b, at, gt);
  if (target && gt.rules[*target].isFact) {
    c.winner = Winner::Target;
    c.strict = true;
    return c;
  }
  if (gt.rules[a.topRule].isFact) {
    c.winner = Winner::Attacker;
    c.strict = true;
    return c;
  }
  return index.compare(a.conclusion, at, context);
}

}  // namespace

Comparison compareAtConflict(const Argument& a, const Argument& b, const Literal& at,
                             const GroundTheory& gt, const std::set<Literal>& context) {
  return compareWith(PriorityIndex(gt), a, b, at, gt, context);
}

Comparison compareAtConflict(const Argument& a, const Argument& b, const GroundTheory& gt,
                             const std::set<Literal>& context) {
  for (const auto& q : subConclusions(b, gt))
    if (incompatible(a.conclusion, q, gt.incompatibilities))
      return compareAtConflict(a, b, q, gt, context);
  for (const auto& q : subConclusions(a, gt))
    if (incompatible(b.conclusion, q, gt.incompatibilities)) {
      Comparison c = compareAtConflict(b, a, q, gt, context);
      c.winner = flip(c.winner);
      return c;
    }
  return {};
}

std::vector<std::vector<std::size_t>> DefeatGraph::defeaters() const {
  std::vector<std::vector<std::size_t>> out(nodes.size());
  for (const auto& d : defeats) out[d.target].push_back(d.attacker);
  for (auto& v : out) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return out;
}

DefeatGraph buildDefeatGraph(const GroundTheory& gt, std::vector<Argument> args) {
  DefeatGraph g;
  g.nodes = std::move(args);
  PriorityIndex index(gt);

  std::map<Literal, std::vector<std::size_t>> byConclusion;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) byConclusion[g.nodes[i].conclusion].push_back(i);

  // Conclusions incompatible with each literal that some argument concludes
  // or uses. Only concluded literals can attack.
  std::map<Literal, std::vector<Literal>> attackersOf;
  auto rivals = [&](const Literal& q) -> const std::vector<Literal>& {
    auto it = attackersOf.find(q);
    if (it != attackersOf.end()) return it->second;
    std::vector<Literal> out;
    if (gt.incompatibilities.empty()) {
      if (byConclusion.count(complement(q))) out.push_back(complement(q));
    } else {
      for (const auto& [c, ids] : byConclusion)
        if (incompatible(c, q, gt.incompatibilities)) out.push_back(c);
    }
    return attackersOf.emplace(q, std::move(out)).first->second;
  };

  std::vector<std::set<Literal>> subs(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) subs[i] = subConclusions(g.nodes[i], gt);

  // The target side of the context only covers the derivation of the
  // conflict point. An attack that fails to defeat is then always answered
  // by the target's sub-argument defeating the attacker, which keeps every
  // admissible set free of incompatible literals.

  for (std::size_t b = 0; b < g.nodes.size(); ++b) {
    for (const auto& q : subs[b]) {
      const auto& rs = rivals(q);
      if (rs.empty()) continue;
      const auto part = subConclusions(*subArgument(g.nodes[b], q, gt), gt);
      for (const auto& c : rs) {
        for (std::size_t a : byConclusion[c]) {
          g.attacks.push_back(Attack{a, b, q});
          std::set<Literal> context = gt.facts;
          context.insert(subs[a].begin(), subs[a].end());
          context.insert(part.begin(), part.end());
          Comparison why = compareWith(index, g.nodes[a], g.nodes[b], q, gt, context);
          if (why.winner != Winner::Target) g.defeats.push_back(Defeat{a, b, q, std::move(why)});
        }
      }
    }
  }
  return g;
}

void checkEvidence(const Theory& theory, const std::vector<Literal>& evidence) {
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    const Literal& e = evidence[i];
    if (!e.isGround()) throw EvidenceError("evidence " + e.toString() + " is not ground");
    for (const auto& f : theory.facts)
      if (incompatible(e, f, theory))
        throw EvidenceError("evidence " + e.toString() + " contradicts fact " + f.toString());
    for (std::size_t j = 0; j < i; ++j)
      if (incompatible(e, evidence[j], theory))
        throw EvidenceError("evidence " + e.toString() + " contradicts evidence " +
                            evidence[j].toString());
  }
}

namespace {

GroundTheory groundWithEvidence(const Theory& theory, const std::vector<Literal>& evidence,
                                const SolverOptions& options, const std::vector<Literal>& hints) {
  checkEvidence(theory, evidence);
  Theory t = theory;
  t.facts.insert(evidence.begin(), evidence.end());
  t.refreshDomain();
  t.domain.insert(theory.domain.begin(), theory.domain.end());
  std::set<std::string> extra;
  for (const auto& h : hints)
    for (const auto& a : h.args)
      if (a.isConstant()) extra.insert(a.name);
  GroundOptions go = options.grounding;
  go.sortHints.insert(go.sortHints.end(), hints.begin(), hints.end());
  go.reachableOnly = true;
  return ground(t, extra, go);
}

}  // namespace

Analysis::Analysis(const Theory& theory, const std::vector<Literal>& evidence,
                   const SolverOptions& options, const std::vector<Literal>& sortHints)
    : options_(options), gt_(groundWithEvidence(theory, evidence, options, sortHints)) {
  build();
}

Analysis::Analysis(GroundTheory gt, const SolverOptions& options)
    : options_(options), gt_(std::move(gt)) {
  build();
}

Analysis::~Analysis() = default;
Analysis::Analysis(Analysis&&) noexcept = default;
Analysis& Analysis::operator=(Analysis&&) noexcept = default;

namespace {

// Drops rule instances whose bodies the closure never satisfies and the
// priorities that can never apply. No argument can use either.
void pruneUnreachable(GroundTheory& gt, const std::set<Literal>& closure) {
  auto holds = [&](const std::vector<Literal>& body) {
    return std::all_of(body.begin(), body.end(), [&](const Literal& l) { return closure.count(l) > 0; });
  };
  constexpr std::size_t kGone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> ruleMap(gt.rules.size(), kGone);
  std::vector<GroundRule> rules;
  for (std::size_t i = 0; i < gt.rules.size(); ++i)
    if (gt.rules[i].isFact || holds(gt.rules[i].body)) {
      ruleMap[i] = rules.size();
      rules.push_back(std::move(gt.rules[i]));
    }
  if (rules.size() == gt.rules.size() && gt.priorities.empty()) {
    gt.rules = std::move(rules);
    return;
  }
  std::vector<std::size_t> prioMap(gt.priorities.size(), kGone);
  std::vector<GroundPriority> prios;
  for (std::size_t i = 0; i < gt.priorities.size(); ++i) {
    auto& p = gt.priorities[i];
    const auto& ref = p.level == 1 ? ruleMap : prioMap;
    if (ref[p.higher] == kGone || ref[p.lower] == kGone || !holds(p.body)) continue;
    p.higher = ref[p.higher];
    p.lower = ref[p.lower];
    prioMap[i] = prios.size();
    prios.push_back(std::move(p));
  }
  gt.rules = std::move(rules);
  gt.priorities = std::move(prios);
}

}  // namespace

void Analysis::build() {
  closure_ = deriveClosure(gt_.facts, gt_.rules);
  pruneUnreachable(gt_, closure_);
  graph_ = buildDefeatGraph(gt_, buildArguments(gt_, std::nullopt, options_));
  grounded_ = groundedExtension(graph_);
}

std::vector<std::size_t> Analysis::argumentsFor(const Literal& literal) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < graph_.nodes.size(); ++i)
    if (graph_.nodes[i].conclusion == literal) out.push_back(i);
  return out;
}

std::optional<std::vector<std::vector<std::size_t>>> Analysis::preferredFor(
    const std::vector<std::size_t>& nodes) const {
  try {
    return preferredExtensions(graph_, options_.maxPreferredNodes, &nodes);
  } catch (const GraphTooLargeError&) {
    return std::nullopt;
  }
}

std::set<Literal> Analysis::contextFor(const Argument& a, const Argument& b, const Literal& at) const {
  std::set<Literal> ctx = gt_.facts;
  for (const auto& l : subConclusions(a, gt_)) ctx.insert(l);
  if (auto part = subArgument(b, at, gt_))
    for (const auto& l : subConclusions(*part, gt_)) ctx.insert(l);
  return ctx;
}

Verdict Analysis::verdict(const Literal& goal) const {
  Verdict v;
  v.query = goal;
  const auto ids = argumentsFor(goal);
  if (ids.empty()) return v;
  auto pick = [&](auto pred) {
    for (std::size_t i : ids)
      if (pred(i)) v.witnesses.push_back(graph_.nodes[i]);
  };
  auto inGrounded = [&](std::size_t i) {
    return std::binary_search(grounded_.begin(), grounded_.end(), i);
  };

  bool anyGrounded = std::any_of(ids.begin(), ids.end(), inGrounded);
  if (options_.semantics == Semantics::Grounded && anyGrounded) {
    v.status = Status::AcceptedSceptically;
    pick(inGrounded);
    return v;
  }

  auto prefs = preferredFor(ids);
  if (!prefs) {
    // Too large to enumerate: read the grounded labelling instead.
    v.exact = false;
    auto labels = groundedLabelling(graph_);
    if (anyGrounded) {
      v.status = Status::AcceptedSceptically;
      pick(inGrounded);
    } else if (std::any_of(ids.begin(), ids.end(), [&](std::size_t i) { return labels[i] == Label::Undec; })) {
      v.status = Status::AcceptedCredulously;
      pick([&](std::size_t i) { return labels[i] == Label::Undec; });
    } else {
      v.status = Status::Rejected;
      pick([](std::size_t) { return true; });
    }
    return v;
  }

  std::size_t containing = 0;
  std::set<std::size_t> members;
  for (const auto& ext : *prefs) {
    bool has = false;
    for (std::size_t i : ids)
      if (std::binary_search(ext.begin(), ext.end(), i)) {
        has = true;
        members.insert(i);
      }
    if (has) ++containing;
  }
  if (containing > 0 && containing == prefs->size())
    v.status = Status::AcceptedSceptically;
  else if (containing > 0)
    v.status = Status::AcceptedCredulously;
  else
    v.status = Status::Rejected;
  if (v.status == Status::Rejected)
    pick([](std::size_t) { return true; });
  else
    pick([&](std::size_t i) { return members.count(i) > 0; });
  return v;
}

std::vector<Literal> Analysis::instancesOf(const Literal& goal) const {
  if (goal.isGround()) return {goal};
  std::set<Literal> found;
  auto consider = [&](const Literal& l) {
    Substitution s;
    if (l.isGround() && match(goal, l, s)) found.insert(l);
  };
  std::set<Literal> concluded;
  for (const auto& n : graph_.nodes) concluded.insert(n.conclusion);
  for (const auto& c : concluded) {
    consider(c);
    consider(complement(c));
    for (const auto& d : gt_.incompatibilities) {
      Substitution s;
      if (match(d.left, c, s)) consider(substitute(d.right, s));
      s.clear();
      if (match(d.right, c, s)) consider(substitute(d.left, s));
    }
  }
  return {found.begin(), found.end()};
}

std::vector<Verdict> query(const Theory& theory, const std::vector<Literal>& evidence,
                           const Literal& goal, const SolverOptions& options) {
  Analysis analysis(theory, evidence, options, {goal});
  std::vector<Verdict> out;
  for (const auto& g : analysis.instancesOf(goal)) out.push_back(analysis.verdict(g));
  return out;
}

}  // namespace prefarg
