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

#include "prefarg/session.hpp"

#include <algorithm>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "prefarg/dsl.hpp"
#include "prefarg/packs.hpp"

namespace prefarg {

std::string utcNow() {
  std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

Literal parseGoal(const std::string& text, bool requireGround) {
  Diagnostic d;
  auto l = dsl::parseLiteral(text, &d);
  if (!l) throw SessionError(400, "bad-literal", "bad literal '" + text + "': " + d.message, d.span);
  if (requireGround && !l->isGround())
    throw SessionError(400, "not-ground", "literal must be ground: " + l->toString());
  return *l;
}

Session::Session(std::string id, std::string source, Theory theory, SolverOptions options, Clock clock)
    : id_(std::move(id)),
      source_(std::move(source)),
      theory_(std::move(theory)),
      options_(std::move(options)),
      clock_(std::move(clock)) {}

SessionView Session::view() const {
  std::lock_guard lock(mutex_);
  return SessionView{revision_, theory_, active_, options_};
}

std::uint64_t Session::updateEvidence(const std::vector<Literal>& asserts, const std::vector<Literal>& retracts) {
  std::lock_guard lock(mutex_);
  std::vector<Literal> active = active_;
  std::vector<EvidenceEvent> events;
  const std::uint64_t rev = revision_ + 1;
  const std::string now = clock_();
  for (const auto& l : retracts) {
    if (!l.isGround()) throw SessionError(400, "not-ground", "evidence must be ground: " + l.toString());
    auto it = std::find(active.begin(), active.end(), l);
    if (it == active.end())
      throw SessionError(422, "inactive-evidence", l.toString() + " is not active evidence");
    active.erase(it);
    events.push_back(EvidenceEvent{rev, false, l, now});
  }
  for (const auto& l : asserts) {
    if (!l.isGround()) throw SessionError(400, "not-ground", "evidence must be ground: " + l.toString());
    if (std::find(active.begin(), active.end(), l) != active.end()) continue;
    for (const auto& f : theory_.facts)
      if (incompatible(l, f, theory_))
        throw SessionError(409, "contradiction", l.toString() + " contradicts fact " + f.toString());
    for (const auto& a : active)
      if (incompatible(l, a, theory_))
        throw SessionError(409, "contradiction", l.toString() + " contradicts active evidence " + a.toString());
    active.push_back(l);
    events.push_back(EvidenceEvent{rev, true, l, now});
  }
  active_ = std::move(active);
  log_.insert(log_.end(), events.begin(), events.end());
  return revision_ = rev;
}

std::uint64_t Session::addPriority(PriorityRule p) {
  std::lock_guard lock(mutex_);
  if (p.label.empty()) throw SessionError(400, "bad-priority", "priority label is empty");
  try {
    theory_ = applyResolution(theory_, std::move(p));
  } catch (const TheoryError& e) {
    const auto& d = e.diagnostics().front();
    throw SessionError(422, "invalid-priority", d.message, d.span);
  }
  return ++revision_;
}

std::vector<Verdict> SessionView::query(const Literal& goal, GroundTheory* ground) const {
  Analysis an(theory, evidence, options, {goal});
  std::vector<Verdict> out;
  for (const auto& g : an.instancesOf(goal)) out.push_back(an.verdict(g));
  if (ground) *ground = an.groundTheory();
  return out;
}

Explanation SessionView::explain(const Literal& goal, bool hints) const {
  ExplainOptions o;
  o.hints = hints;
  o.solver = options;
  return explainVerdict(theory, evidence, goal, o);
}

std::vector<ConflictReport> SessionView::conflicts() const { return detectConflicts(theory, options); }

AbductionResult SessionView::abduce(const Literal& goal, Tier tier, std::size_t maxSize) const {
  AbductionOptions o;
  o.tier = tier;
  o.maxSize = maxSize;
  o.solver = options;
  return prefarg::abduce(theory, evidence, goal, o);
}

std::string Session::snapshot() const {
  std::lock_guard lock(mutex_);
  std::ostringstream out;
  out << "% session " << id_ << " from " << source_ << "\n";
  out << "% revision " << revision_ << "\n\n";
  out << dsl::print(theory_);
  out << "\n% evidence log\n";
  for (const auto& e : log_)
    out << "% evidence " << e.revision << ' ' << (e.asserted ? "assert" : "retract") << ' ' << e.at << ' '
        << e.literal.toString() << "\n";
  return out.str();
}

std::unique_ptr<Session> Session::restore(std::string id, const std::string& text, SolverOptions options, Clock clock) {
  Theory theory = loadTheory(text, id + ".arg");
  std::string source = "snapshot";
  std::uint64_t revision = 0;
  std::vector<EvidenceEvent> log;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string pct, kind;
    ls >> pct >> kind;
    if (pct != "%") continue;
    if (kind == "session") {
      std::string sid, from;
      ls >> sid >> from >> source;
    } else if (kind == "revision") {
      ls >> revision;
    } else if (kind == "evidence") {
      EvidenceEvent e;
      std::string action;
      if (!(ls >> e.revision >> action >> e.at)) continue;  // the "% evidence log" header
      if (action != "assert" && action != "retract")
        throw SessionError(400, "bad-snapshot", "unknown evidence action " + action);
      std::string rest;
      std::getline(ls, rest);
      e.asserted = action == "assert";
      e.literal = parseGoal(rest, true);
      log.push_back(std::move(e));
    }
  }
  auto s = std::make_unique<Session>(std::move(id), source, std::move(theory), std::move(options), std::move(clock));
  for (const auto& e : log) {
    if (e.asserted) {
      if (std::find(s->active_.begin(), s->active_.end(), e.literal) == s->active_.end()) s->active_.push_back(e.literal);
    } else {
      auto it = std::find(s->active_.begin(), s->active_.end(), e.literal);
      if (it != s->active_.end()) s->active_.erase(it);
    }
  }
  s->log_ = std::move(log);
  s->revision_ = revision;
  return s;
}

SessionStore::SessionStore(std::string snapshotDir, SolverOptions options, Clock clock)
    : snapshotDir_(std::move(snapshotDir)), options_(std::move(options)), clock_(std::move(clock)) {}

std::shared_ptr<Session> SessionStore::create(const std::string& source) {
  Theory theory;
  try {
    if (isPack(source)) {
      theory = loadPack(source);
    } else if (std::filesystem::is_regular_file(source)) {
      theory = resolveTheory(source);
    } else {
      throw SessionError(404, "unknown-pack", "unknown pack " + source);
    }
  } catch (const TheoryError& e) {
    const auto& d = e.diagnostics().front();
    throw SessionError(422, "invalid-theory", d.message, d.span);
  }
  std::lock_guard lock(mutex_);
  std::string id = "s" + std::to_string(next_++);
  auto s = std::make_shared<Session>(id, source, std::move(theory), options_, clock_);
  sessions_[id] = s;
  return s;
}

std::shared_ptr<Session> SessionStore::get(const std::string& id) const {
  std::lock_guard lock(mutex_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError(404, "unknown-session", "unknown session " + id);
  return it->second;
}

std::vector<std::string> SessionStore::ids() const {
  std::lock_guard lock(mutex_);
  std::vector<std::string> out;
  for (const auto& [id, s] : sessions_) out.push_back(id);
  return out;
}

void SessionStore::persist(const Session& s) const {
  if (snapshotDir_.empty()) return;
  std::filesystem::create_directories(snapshotDir_);
  std::ofstream out(std::filesystem::path(snapshotDir_) / (s.id() + ".arg"), std::ios::binary | std::ios::trunc);
  out << s.snapshot();
}

}  // namespace prefarg
