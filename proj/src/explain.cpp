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

#include "prefarg/explain.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace prefarg {

std::string_view outcomeName(Outcome o) {
  switch (o) {
    case Outcome::Repelled: return "repelled";
    case Outcome::Defeats: return "defeats";
    case Outcome::Mutual: return "mutual";
  }
  return "mutual";
}

namespace {

std::vector<std::string> supportLabels(const Argument& a, const GroundTheory& gt) {
  std::vector<std::string> out;
  for (std::size_t i : a.support) out.push_back(gt.rules[i].label);
  std::sort(out.begin(), out.end());
  return out;
}

struct Clash {
  std::size_t counter;
  Literal at;
  Comparison cmp;
};

std::vector<Clash> clashesWith(std::size_t node, const Analysis& an) {
  const auto& g = an.graph();
  std::vector<Clash> out;
  std::set<std::pair<std::size_t, Literal>> seen;
  for (const auto& at : g.attacks) {
    if (at.target != node || at.attacker == node) continue;
    if (!seen.insert({at.attacker, at.at}).second) continue;
    const auto& a = g.nodes[at.attacker];
    const auto& b = g.nodes[node];
    out.push_back(Clash{at.attacker, at.at, compareAtConflict(a, b, at.at, an.groundTheory(), an.contextFor(a, b, at.at))});
  }
  return out;
}

// Whether a clash was settled by a level-1 priority naming this argument's
// own top rule.
bool citesOwnRule(const Argument& a, const std::vector<Clash>& clashes, const GroundTheory& gt) {
  for (const auto& c : clashes) {
    if (c.cmp.winner != Winner::Target) continue;
    for (std::size_t p : c.cmp.instances)
      if (gt.priorities[p].level == 1 && gt.priorities[p].higher == a.topRule) return true;
  }
  return false;
}

std::vector<Literal> pivotalPremises(const Comparison& cmp, const Argument& loser, const GroundTheory& gt,
                                     const PriorityIndex& index) {
  std::set<Literal> used;
  for (std::size_t i : loser.support) used.insert(gt.rules[i].head);
  std::set<Literal> out;
  for (std::size_t p : cmp.instances)
    for (const auto& l : index.contextOf(p))
      if (gt.facts.count(l) && !used.count(l)) out.insert(l);
  return {out.begin(), out.end()};
}

}  // namespace

Explanation explainVerdict(const Theory& theory, const std::vector<Literal>& evidence, const Literal& goal,
                           const ExplainOptions& options) {
  if (!goal.isGround()) throw std::invalid_argument("explanation goal must be ground: " + goal.toString());
  Analysis an(theory, evidence, options.solver, {goal});
  const GroundTheory& gt = an.groundTheory();
  const PriorityIndex index(gt);
  const Verdict v = an.verdict(goal);

  Explanation e;
  e.goal = goal;
  e.status = v.status;
  e.exact = v.exact;

  if (!v.witnesses.empty()) {
    // Rank candidate arguments.
    struct Ranked {
      std::size_t node;
      bool cited;
      std::size_t size;
      std::vector<std::string> labels;
      std::vector<Clash> clashes;
    };
    std::vector<Ranked> ranked;
    for (const auto& w : v.witnesses) {
      std::size_t node = 0;
      for (std::size_t i : an.argumentsFor(goal))
        if (an.graph().nodes[i] == w) node = i;
      auto clashes = clashesWith(node, an);
      ranked.push_back(Ranked{node, citesOwnRule(w, clashes, gt), w.support.size(), supportLabels(w, gt),
                              std::move(clashes)});
    }
    std::sort(ranked.begin(), ranked.end(), [](const Ranked& a, const Ranked& b) {
      if (a.cited != b.cited) return a.cited;
      if (a.size != b.size) return a.size < b.size;
      if (a.labels != b.labels) return a.labels < b.labels;
      return a.node < b.node;
    });
    const Ranked& best = ranked.front();
    const Argument& win = an.graph().nodes[best.node];

    // Leaves first: order instances by derivation depth.
    std::map<Literal, int> depth;
    for (std::size_t i : win.support)
      if (gt.rules[i].isFact) depth[gt.rules[i].head] = 0;
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t i : win.support) {
        const auto& r = gt.rules[i];
        if (r.isFact || depth.count(r.head)) continue;
        int d = 0;
        bool ready = true;
        for (const auto& b : r.body) {
          auto it = depth.find(b);
          if (it == depth.end()) {
            ready = false;
            break;
          }
          d = std::max(d, it->second + 1);
        }
        if (ready) {
          depth[r.head] = d;
          changed = true;
        }
      }
    }
    std::vector<std::size_t> order(win.support.begin(), win.support.end());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return std::tie(depth[gt.rules[a].head], gt.rules[a].label, gt.rules[a].head) <
             std::tie(depth[gt.rules[b].head], gt.rules[b].label, gt.rules[b].head);
    });
    for (std::size_t i : order) {
      const auto& r = gt.rules[i];
      if (r.isFact)
        e.evidence.push_back(r.head);
      else
        e.rules.push_back(ExplainedRule{r.label, r.head, r.body});
    }
    std::sort(e.evidence.begin(), e.evidence.end());

    for (const auto& c : best.clashes) {
      const Argument& counter = an.graph().nodes[c.counter];
      Counter k;
      k.against = gt.rules[counter.topRule].label;
      k.conclusion = counter.conclusion;
      k.at = c.at;
      k.decidedBy = c.cmp.decidedBy;
      k.bySpecificity = c.cmp.bySpecificity;
      if (c.cmp.winner == Winner::Target) {
        k.outcome = Outcome::Repelled;
        k.pivotal = pivotalPremises(c.cmp, counter, gt, index);
      } else if (c.cmp.winner == Winner::Attacker) {
        k.outcome = Outcome::Defeats;
        k.pivotal = pivotalPremises(c.cmp, win, gt, index);
      } else {
        k.outcome = Outcome::Mutual;
      }
      e.conflicts.push_back(std::move(k));
    }
    std::stable_sort(e.conflicts.begin(), e.conflicts.end(), [](const Counter& a, const Counter& b) {
      return std::tie(a.at, a.conclusion, a.against) < std::tie(b.at, b.conclusion, b.against);
    });
    e.conflicts.erase(std::unique(e.conflicts.begin(), e.conflicts.end()), e.conflicts.end());
  }

  if (options.hints) {
    const bool accepted = v.status == Status::AcceptedSceptically;
    const Literal target = accepted ? complement(goal) : goal;
    AbductionOptions ao;
    ao.maxSize = options.hintSize;
    ao.solver = options.solver;
    auto res = abduce(theory, evidence, target, ao);
    e.hintGoal = target;
    for (const auto& a : res.answers)
      if (!a.delta.empty()) e.hints.push_back(Hint{a.delta});
  }
  return e;
}

std::string renderText(const Explanation& e) {
  std::ostringstream out;
  out << e.goal.toString() << ": " << statusName(e.status);
  if (!e.exact) out << " (approximate)";
  out << "\n";
  if (e.status == Status::NoArgument) {
    out << "  no rule concludes " << e.goal.toString() << "\n";
  } else {
    out << "  evidence used: " << (e.evidence.empty() ? "none" : joinLiterals(e.evidence)) << "\n";
    out << "  rules fired:\n";
    for (const auto& r : e.rules) {
      out << "    " << r.label << ": " << r.head.toString();
      if (!r.body.empty()) out << " <- " << joinLiterals(r.body);
      out << "\n";
    }
    const std::string self = e.rules.empty() ? std::string("fact") : e.rules.back().label;
    if (e.conflicts.empty()) out << "  no counter-arguments\n";
    for (const auto& c : e.conflicts) {
      out << "  conflict at " << c.at.toString() << ": ";
      const std::string by = c.decidedBy.empty() ? std::string() : " by " + [&] {
        std::string s;
        for (std::size_t i = 0; i < c.decidedBy.size(); ++i) s += (i ? " > " : "") + c.decidedBy[i];
        return s;
      }();
      const std::string spec = c.bySpecificity ? " (more specific context)" : "";
      switch (c.outcome) {
        case Outcome::Repelled:
          out << self << " defeats " << c.against << " (" << c.conclusion.toString() << ")" << by << spec;
          break;
        case Outcome::Defeats:
          out << c.against << " (" << c.conclusion.toString() << ") defeats " << self << by << spec;
          break;
        case Outcome::Mutual:
          out << self << " and " << c.against << " (" << c.conclusion.toString()
              << ") are undecided and defeat each other";
          break;
      }
      if (!c.pivotal.empty()) out << "; pivotal: " << joinLiterals(c.pivotal);
      out << "\n";
    }
  }
  if (e.hintGoal) {
    out << "  to make " << e.hintGoal->toString() << " accepted";
    if (e.hints.empty()) out << ": no assumptions found";
    out << "\n";
    for (const auto& h : e.hints) out << "    assume " << joinLiterals(h.assume) << "\n";
  }
  return out.str();
}

}  // namespace prefarg
