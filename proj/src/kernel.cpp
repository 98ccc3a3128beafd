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

#include "prefarg/kernel.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace prefarg {

bool Literal::isGround() const {
  return std::none_of(args.begin(), args.end(), [](const Term& t) { return t.isVariable(); });
}

std::string Literal::toString() const {
  std::string out;
  if (negated) out += "neg ";
  out += predicate;
  if (!args.empty()) {
    out += '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
      if (i) out += ", ";
      out += args[i].name;
    }
    out += ')';
  }
  return out;
}

Literal atom(std::string predicate, std::vector<std::string> constants, bool negated) {
  Literal l;
  l.predicate = std::move(predicate);
  l.negated = negated;
  for (auto& c : constants) l.args.push_back(Term::constant(std::move(c)));
  return l;
}

Literal complement(const Literal& l) {
  Literal c = l;
  c.negated = !l.negated;
  return c;
}

std::string_view layerName(Layer layer) {
  switch (layer) {
    case Layer::Tactical: return "tactical";
    case Layer::Operational: return "operational";
    case Layer::Strategic: return "strategic";
    case Layer::None: break;
  }
  return "none";
}

std::optional<Layer> parseLayer(std::string_view name) {
  if (name == "tactical") return Layer::Tactical;
  if (name == "operational") return Layer::Operational;
  if (name == "strategic") return Layer::Strategic;
  if (name == "none") return Layer::None;
  return std::nullopt;
}

std::string sortOfVariable(std::string_view variable) {
  std::size_t end = variable.size();
  while (end > 0 && std::isdigit(static_cast<unsigned char>(variable[end - 1]))) --end;
  std::string out;
  for (std::size_t i = 0; i < end; ++i)
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(variable[i])));
  return out;
}

namespace {

void addConstants(const Literal& l, std::set<std::string>& out) {
  for (const auto& t : l.args)
    if (t.isConstant()) out.insert(t.name);
}

void addConstants(const std::vector<Literal>& ls, std::set<std::string>& out) {
  for (const auto& l : ls) addConstants(l, out);
}

}  // namespace

void Theory::refreshDomain() {
  std::set<std::string> d;
  for (const auto& f : facts) addConstants(f, d);
  for (const auto& r : rules) {
    addConstants(r.head, d);
    addConstants(r.body, d);
  }
  for (const auto& p : priorities) addConstants(p.body, d);
  for (const auto& decl : incompatibilities) {
    addConstants(decl.left, d);
    addConstants(decl.right, d);
  }
  for (const auto& [name, members] : sorts) d.insert(members.begin(), members.end());
  domain = std::move(d);
}

const ArgumentRule* Theory::findRule(std::string_view label) const {
  for (const auto& r : rules)
    if (r.label == label) return &r;
  return nullptr;
}

const PriorityRule* Theory::findPriority(std::string_view label) const {
  for (const auto& p : priorities)
    if (p.label == label) return &p;
  return nullptr;
}

bool Theory::hasLabel(std::string_view label) const {
  return findRule(label) != nullptr || findPriority(label) != nullptr;
}

const std::set<std::string>* Theory::sortFor(std::string_view variable) const {
  auto it = sorts.find(sortOfVariable(variable));
  return it == sorts.end() ? nullptr : &it->second;
}

bool structurallyEqual(const Theory& a, const Theory& b) {
  auto byLabel = [](auto v) {
    std::sort(v.begin(), v.end(), [](const auto& x, const auto& y) { return x.label < y.label; });
    return v;
  };
  auto decls = [](const std::vector<IncompatibilityDecl>& v) {
    std::vector<std::pair<Literal, Literal>> out;
    for (const auto& d : v) out.emplace_back(d.left, d.right);
    std::sort(out.begin(), out.end());
    return out;
  };
  return a.facts == b.facts && byLabel(a.rules) == byLabel(b.rules) &&
         byLabel(a.priorities) == byLabel(b.priorities) &&
         decls(a.incompatibilities) == decls(b.incompatibilities) &&
         a.abducibles == b.abducibles && a.sorts == b.sorts && a.domain == b.domain;
}

bool match(const Literal& pattern, const Literal& ground, Substitution& s) {
  if (pattern.predicate != ground.predicate || pattern.negated != ground.negated ||
      pattern.args.size() != ground.args.size())
    return false;
  for (std::size_t i = 0; i < pattern.args.size(); ++i) {
    const Term& p = pattern.args[i];
    const Term& g = ground.args[i];
    if (p.isConstant()) {
      if (p.name != g.name) return false;
      continue;
    }
    auto [it, inserted] = s.emplace(p.name, g.name);
    if (!inserted && it->second != g.name) return false;
  }
  return true;
}

bool incompatible(const Literal& a, const Literal& b,
                  const std::vector<IncompatibilityDecl>& declarations) {
  if (a.predicate == b.predicate && a.negated != b.negated && a.args == b.args) return true;
  for (const auto& d : declarations) {
    Substitution s1;
    if (match(d.left, a, s1) && match(d.right, b, s1)) return true;
    Substitution s2;
    if (match(d.left, b, s2) && match(d.right, a, s2)) return true;
  }
  return false;
}

bool incompatible(const Literal& a, const Literal& b, const Theory& theory) {
  return incompatible(a, b, theory.incompatibilities);
}

Literal substitute(const Literal& l, const Substitution& s) {
  Literal out = l;
  for (auto& t : out.args) {
    if (!t.isVariable()) continue;
    if (auto it = s.find(t.name); it != s.end()) t = Term::constant(it->second);
  }
  return out;
}

void collectVariables(const Literal& l, std::vector<std::string>& out) {
  for (const auto& t : l.args)
    if (t.isVariable() && std::find(out.begin(), out.end(), t.name) == out.end())
      out.push_back(t.name);
}

std::vector<std::string> variablesOf(const std::vector<Literal>& literals) {
  std::vector<std::string> out;
  for (const auto& l : literals) collectVariables(l, out);
  return out;
}

std::string joinLiterals(const std::vector<Literal>& literals, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < literals.size(); ++i) {
    if (i) out += sep;
    out += literals[i].toString();
  }
  return out;
}

std::string Diagnostic::toString() const {
  std::ostringstream os;
  if (span) {
    if (!span->file.empty()) os << span->file << ':';
    os << span->startLine << ':' << span->startCol << ": ";
  }
  os << message;
  if (!label.empty() && message.find(label) == std::string::npos) os << " [" << label << ']';
  if (!hint.empty()) os << " (expected " << hint << ')';
  return os.str();
}

namespace {

std::string joinDiagnostics(const std::vector<Diagnostic>& ds) {
  std::string out = "invalid theory";
  for (const auto& d : ds) out += "\n  " + d.toString();
  return out;
}

class Validator {
 public:
  explicit Validator(const Theory& t) : theory_(t) {}

  std::vector<Diagnostic> run() {
    checkLabels();
    checkFacts();
    for (const auto& r : theory_.rules) checkRule(r);
    for (const auto& p : theory_.priorities) checkPriority(p);
    for (const auto& d : theory_.incompatibilities) {
      noteArity(d.left, "");
      noteArity(d.right, "");
      if (d.left.predicate == d.right.predicate && d.left.args == d.right.args &&
          d.left.negated == d.right.negated)
        add("incompatibility declared between a pattern and itself: " + d.left.toString(), "");
    }
    for (const auto& a : theory_.abducibles) {
      auto it = arity_.find(a.predicate);
      if (it != arity_.end() && it->second != a.arity)
        add("abducible " + a.predicate + "/" + std::to_string(a.arity) +
                " disagrees with arity " + std::to_string(it->second),
            "");
    }
    checkDomain();
    return std::move(out_);
  }

 private:
  void add(std::string message, std::string label) {
    out_.push_back(Diagnostic{std::move(message), std::move(label), std::nullopt, ""});
  }

  void noteArity(const Literal& l, const std::string& label) {
    if (l.predicate.empty()) {
      add("literal with empty predicate name", label);
      return;
    }
    auto [it, inserted] = arity_.emplace(l.predicate, l.args.size());
    if (!inserted && it->second != l.args.size())
      add("predicate " + l.predicate + " used with arity " + std::to_string(l.args.size()) +
              " but earlier with arity " + std::to_string(it->second),
          label);
  }

  void checkLabels() {
    std::set<std::string> seen;
    auto visit = [&](const std::string& label) {
      if (label.empty()) add("empty label", "");
      else if (!seen.insert(label).second) add("duplicate label " + label, label);
    };
    for (const auto& r : theory_.rules) visit(r.label);
    for (const auto& p : theory_.priorities) visit(p.label);
  }

  void checkFacts() {
    for (const auto& f : theory_.facts) {
      noteArity(f, "");
      if (!f.isGround()) add("fact contains variables: " + f.toString(), "");
      if (theory_.facts.count(complement(f)) && !f.negated)
        add("fact and its complement both asserted: " + f.toString(), "");
    }
  }

  void checkRule(const ArgumentRule& r) {
    noteArity(r.head, r.label);
    for (const auto& b : r.body) noteArity(b, r.label);
  }

  void checkPriority(const PriorityRule& p) {
    for (const auto& b : p.body) noteArity(b, p.label);
    if (p.higher == p.lower) add("irreflexivity violated in " + p.label, p.label);
    if (p.level < 1) add("priority level must be positive in " + p.label, p.label);
    for (const auto* ref : {&p.higher, &p.lower}) {
      int level = levelOf(*ref);
      if (level < 0) add("unknown label " + *ref + " referenced by " + p.label, p.label);
      else if (level != p.level - 1)
        add("level-" + std::to_string(p.level) + " priority " + p.label + " references " + *ref +
                " of level " + std::to_string(level),
            p.label);
    }
  }

  int levelOf(const std::string& label) const {
    if (theory_.findRule(label)) return 0;
    if (const auto* p = theory_.findPriority(label)) return p->level;
    return -1;
  }

  void checkDomain() {
    Theory copy = theory_;
    copy.refreshDomain();
    for (const auto& c : copy.domain)
      if (!theory_.domain.count(c)) add("constant " + c + " missing from domain", "");
  }

  const Theory& theory_;
  std::map<std::string, std::size_t> arity_;
  std::vector<Diagnostic> out_;
};

}  // namespace

std::vector<Diagnostic> validate(const Theory& theory) { return Validator(theory).run(); }

TheoryError::TheoryError(std::vector<Diagnostic> diagnostics)
    : std::runtime_error(joinDiagnostics(diagnostics)), diagnostics_(std::move(diagnostics)) {}

}  // namespace prefarg
