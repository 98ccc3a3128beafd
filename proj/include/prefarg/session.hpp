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

// An investigation session: a theory, an evidence log and a revision
// counter. Shared by the REPL and the HTTP service.

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "prefarg/abduction.hpp"
#include "prefarg/conflicts.hpp"
#include "prefarg/explain.hpp"
#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg {

/// A rejected session operation. `status` follows HTTP conventions:
/// 400 malformed input, 404 unknown session or pack, 409 contradiction,
/// 422 dangling label or inactive literal.
class SessionError : public std::runtime_error {
 public:
  SessionError(int status, std::string code, const std::string& message,
               std::optional<SourceSpan> span = std::nullopt)
      : std::runtime_error(message), status_(status), code_(std::move(code)), span_(std::move(span)) {}

  int status() const { return status_; }
  const std::string& code() const { return code_; }
  const std::optional<SourceSpan>& span() const { return span_; }

 private:
  int status_;
  std::string code_;
  std::optional<SourceSpan> span_;
};

struct EvidenceEvent {
  std::uint64_t revision = 0;
  bool asserted = true;  // false for a retraction
  Literal literal;
  std::string at;  // UTC, ISO 8601
};

using Clock = std::function<std::string()>;

/// Current UTC time as 2026-01-31T12:00:00Z.
std::string utcNow();

/// A consistent copy of a session's reasoning state at one revision.
/// Reads run on a view so they never block writers.
struct SessionView {
  std::uint64_t revision = 0;
  Theory theory;
  std::vector<Literal> evidence;
  SolverOptions options;

  std::vector<Verdict> query(const Literal& goal, GroundTheory* ground = nullptr) const;
  Explanation explain(const Literal& goal, bool hints) const;
  std::vector<ConflictReport> conflicts() const;
  AbductionResult abduce(const Literal& goal, Tier tier, std::size_t maxSize) const;
};

/// Mutations are serialized on the session's mutex. The reference
/// accessors are for single-threaded callers or callers holding mutex().
class Session {
 public:
  Session(std::string id, std::string source, Theory theory, SolverOptions options = {}, Clock clock = utcNow);

  const std::string& id() const { return id_; }
  const std::string& source() const { return source_; }
  std::uint64_t revision() const { return revision_; }
  const Theory& theory() const { return theory_; }
  const std::vector<EvidenceEvent>& log() const { return log_; }
  const std::vector<Literal>& evidence() const { return active_; }
  const SolverOptions& options() const { return options_; }
  std::mutex& mutex() const { return mutex_; }

  SessionView view() const;

  /// Applies retractions then assertions atomically; one revision step.
  std::uint64_t updateEvidence(const std::vector<Literal>& asserts, const std::vector<Literal>& retracts);

  /// Appends a priority; one revision step.
  std::uint64_t addPriority(PriorityRule p);

  /// Theory text followed by the evidence log as comments; loadable by
  /// restore().
  std::string snapshot() const;
  static std::unique_ptr<Session> restore(std::string id, const std::string& text, SolverOptions options = {},
                                          Clock clock = utcNow);

 private:
  std::string id_;
  std::string source_;
  Theory theory_;
  SolverOptions options_;
  Clock clock_;
  std::uint64_t revision_ = 0;
  std::vector<EvidenceEvent> log_;
  std::vector<Literal> active_;
  mutable std::mutex mutex_;
};

/// Parses a literal argument, mapping syntax errors to SessionError(400).
Literal parseGoal(const std::string& text, bool requireGround);

class SessionStore {
 public:
  explicit SessionStore(std::string snapshotDir = "", SolverOptions options = {}, Clock clock = utcNow);

  /// `source` names a shipped pack or a theory file; 404 when neither.
  std::shared_ptr<Session> create(const std::string& source);
  std::shared_ptr<Session> get(const std::string& id) const;
  std::vector<std::string> ids() const;

  /// Writes <snapshotDir>/<id>.arg when a directory is configured.
  void persist(const Session& s) const;

 private:
  std::string snapshotDir_;
  SolverOptions options_;
  Clock clock_;
  mutable std::mutex mutex_;
  std::map<std::string, std::shared_ptr<Session>> sessions_;
  std::uint64_t next_ = 1;
};

}  // namespace prefarg
