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

// prefarg: check, query, explain, conflicts, abduce, scenario, repl, serve.
//
// Exit codes: 0 ok, 1 scenario failure, 2 usage or input error,
// 3 unresolved conflicts.

#include <unistd.h>

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "console.hpp"
#include "prefarg/dsl.hpp"
#include "prefarg/packs.hpp"
#include "prefarg/scenario.hpp"
#include "prefarg/service.hpp"
#include "prefarg/wire.hpp"

using namespace prefarg;

namespace {

constexpr int kOk = 0;
constexpr int kScenarioFailed = 1;
constexpr int kInputError = 2;
constexpr int kUnresolved = 3;

// Raised after diagnostics have been printed.
struct Exit {
  int code;
};

void printDiagnostics(const std::vector<Diagnostic>& ds, const std::string& text) {
  for (const auto& d : ds) std::cerr << dsl::renderDiagnostic(d, text) << "\n";
}

Theory loadOrExit(const std::string& ref) {
  std::string text;
  try {
    return resolveTheory(ref, &text);
  } catch (const TheoryError& e) {
    printDiagnostics(e.diagnostics(), text);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  throw Exit{kInputError};
}

Literal goalOrExit(const std::string& text, bool requireGround) {
  Diagnostic d;
  auto l = dsl::parseLiteral(text, &d);
  if (!l) {
    if (!d.span) d.span = SourceSpan{"goal", 1, 1, 1, static_cast<int>(text.size()) + 1};
    d.span->file = "goal";
    printDiagnostics({d}, text);
    throw Exit{kInputError};
  }
  if (requireGround && !l->isGround()) {
    std::cerr << "error: goal must be ground: " << l->toString() << "\n";
    throw Exit{kInputError};
  }
  return *l;
}

struct EngineFlags {
  std::string theory;
  std::vector<std::string> asserts;
  std::string goal;
  std::string semantics = "grounded";
  std::size_t maxPreferredNodes = 20;
  bool json = false;

  void attach(CLI::App* cmd, bool needsGoal) {
    cmd->add_option("theory", theory, "theory file or shipped pack name")->required();
    cmd->add_option("--assert,-a", asserts, "ground evidence literal (repeatable)");
    auto* g = cmd->add_option("--goal,-g", goal, "goal literal");
    if (needsGoal) g->required();
    cmd->add_option("--semantics", semantics, "grounded or preferred")
        ->check(CLI::IsMember({"grounded", "preferred"}));
    cmd->add_option("--max-preferred-nodes", maxPreferredNodes, "exact preferred enumeration limit");
    cmd->add_flag("--json", json, "machine-readable output");
  }

  SolverOptions solver() const {
    SolverOptions o;
    o.semantics = semantics == "preferred" ? Semantics::Preferred : Semantics::Grounded;
    o.maxPreferredNodes = maxPreferredNodes;
    return o;
  }

  // Builds a session holding the evidence, the same path the service uses.
  std::unique_ptr<Session> session() const {
    auto s = std::make_unique<Session>("cli", theory, loadOrExit(theory), solver(), [] { return std::string(); });
    std::vector<Literal> ev;
    for (const auto& a : asserts) ev.push_back(goalOrExit(a, true));
    if (!ev.empty()) s->updateEvidence(ev, {});
    return s;
  }
};

int cmdCheck(const std::string& file) {
  std::string text;
  try {
    text = std::filesystem::exists(file) ? readFile(file) : packSource(file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  auto parsed = dsl::parse(text, file);
  std::vector<Diagnostic> ds = parsed.diagnostics;
  if (parsed.theory && ds.empty()) {
    ds = validate(*parsed.theory);
    for (auto& d : ds)
      if (!d.span && !d.label.empty())
        if (auto it = parsed.labelSpans.find(d.label); it != parsed.labelSpans.end()) d.span = it->second;
  }
  if (!ds.empty()) {
    printDiagnostics(ds, text);
    return kInputError;
  }
  const Theory& t = *parsed.theory;
  std::cout << file << ": ok, " << t.facts.size() << " facts, " << t.rules.size() << " rules, "
            << t.priorities.size() << " priorities\n";
  return kOk;
}

int cmdScenario(const std::string& file, const SolverOptions& options, const console::Style& style) {
  std::string text;
  Scenario s;
  try {
    text = readFile(file);
    s = parseScenarioText(text, file);
  } catch (const TheoryError& e) {
    printDiagnostics(e.diagnostics(), text);
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  ScenarioReport report = runScenario(s, options);
  for (int stage = 1; stage <= static_cast<int>(s.stages.size()); ++stage) {
    std::cout << "stage " << stage << ": " << (report.stagePassed(stage) ? style.good("pass") : style.bad("FAIL"))
              << "\n";
    for (const auto& c : report.checks) {
      if (c.stage != stage) continue;
      std::cout << "  " << (c.passed() ? " " : "!") << " [" << c.pack << "] " << c.goal.toString() << "  "
                << style.status(c.actual);
      if (!c.passed()) std::cout << " (expected " << statusName(c.expected) << ")";
      std::cout << "\n";
    }
  }
  for (const auto& d : report.disagreements) std::cout << style.bad("disagreement") << ": " << d << "\n";
  std::cout << (report.passed() ? "scenario passed" : "scenario FAILED") << "\n";
  return report.passed() ? kOk : kScenarioFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Preference-based argumentation engine"};
  app.require_subcommand(1);
  const auto style = console::Style::detect();

  std::string checkFile;
  auto* check = app.add_subcommand("check", "parse and validate a theory");
  check->add_option("theory", checkFile, "theory file or shipped pack name")->required();

  EngineFlags queryFlags;
  auto* query = app.add_subcommand("query", "decide every reported instance of a goal pattern");
  queryFlags.attach(query, true);

  EngineFlags explainFlags;
  bool hints = false;
  auto* explain = app.add_subcommand("explain", "explain the status of a ground goal");
  explainFlags.attach(explain, true);
  explain->add_flag("--hints", hints, "add abductive investigation hints");

  EngineFlags conflictFlags;
  bool suggest = false;
  bool apply = false;
  auto* conflicts = app.add_subcommand("conflicts", "report conflicting rule pairs");
  conflictFlags.attach(conflicts, false);
  conflicts->add_flag("--suggest", suggest, "propose a priority for each unresolved pair");
  conflicts->add_flag("--apply", apply, "apply every suggestion and print the resulting theory");

  EngineFlags abduceFlags;
  std::size_t maxSize = 2;
  std::string tier = "sceptical";
  auto* abduce = app.add_subcommand("abduce", "minimal evidence sets establishing a goal");
  abduceFlags.attach(abduce, true);
  abduce->add_option("--max,-k", maxSize, "largest evidence set to consider")->check(CLI::Range(1, 4));
  abduce->add_option("--tier", tier, "sceptical or credulous")->check(CLI::IsMember({"sceptical", "credulous"}));

  std::string scenarioFile;
  EngineFlags scenarioFlags;
  auto* scenario = app.add_subcommand("scenario", "run a staged scenario and check its expectations");
  scenario->add_option("file", scenarioFile, "scenario file (.scn)")->required();
  scenario->add_option("--semantics", scenarioFlags.semantics, "grounded or preferred")
      ->check(CLI::IsMember({"grounded", "preferred"}));

  std::string replTheory;
  auto* repl = app.add_subcommand("repl", "interactive session");
  repl->add_option("theory", replTheory, "theory file or shipped pack name")->required();

  std::string serveTheory;
  ServiceOptions serve;
  auto* serveCmd = app.add_subcommand("serve", "run the HTTP service");
  serveCmd->add_option("theory", serveTheory, "theory file or pack opened as the first session");
  serveCmd->add_option("--host", serve.host, "bind address");
  serveCmd->add_option("--port", serve.port, "bind port");
  serveCmd->add_option("--allow-origin", serve.allowOrigin, "origin allowed by CORS");
  serveCmd->add_option("--serve-ui", serve.uiDir, "directory of static files served at /")
      ->check(CLI::ExistingDirectory);
  serveCmd->add_option("--snapshot-dir", serve.snapshotDir, "write one snapshot file per session here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (check->parsed()) return cmdCheck(checkFile);

    if (query->parsed()) {
      auto s = queryFlags.session();
      Literal goal = goalOrExit(queryFlags.goal, false);
      GroundTheory gt;
      SessionView view = s->view();
      auto verdicts = view.query(goal, &gt);
      if (queryFlags.json) {
        wire::Json out = wire::Json::array();
        for (const auto& v : verdicts) out.push_back(wire::toJson(v, gt));
        std::cout << wire::dump(wire::Json{{"verdicts", out}});
      } else {
        console::printVerdicts(std::cout, verdicts, style);
      }
      return kOk;
    }

    if (explain->parsed()) {
      auto s = explainFlags.session();
      auto e = s->view().explain(goalOrExit(explainFlags.goal, true), hints);
      std::cout << (explainFlags.json ? wire::dump(wire::toJson(e)) : renderText(e));
      return kOk;
    }

    if (conflicts->parsed()) {
      auto s = conflictFlags.session();
      auto reports = s->view().conflicts();
      if (apply) {
        for (const auto& r : reports)
          if (!r.resolved && r.suggestion) s->addPriority(*r.suggestion);
        std::cout << dsl::print(s->theory());
        return countUnresolved(s->view().conflicts()) ? kUnresolved : kOk;
      }
      if (conflictFlags.json) {
        std::cout << wire::dump(
            wire::Json{{"conflicts", wire::toJson(reports)}, {"unresolved", countUnresolved(reports)}});
      } else {
        console::printConflicts(std::cout, reports, suggest, style);
      }
      return countUnresolved(reports) ? kUnresolved : kOk;
    }

    if (abduce->parsed()) {
      auto s = abduceFlags.session();
      auto result = s->view().abduce(goalOrExit(abduceFlags.goal, true),
                                     tier == "credulous" ? Tier::Credulous : Tier::Sceptical, maxSize);
      if (abduceFlags.json) std::cout << wire::dump(wire::toJson(result));
      else console::printAbduction(std::cout, result);
      return kOk;
    }

    if (scenario->parsed()) return cmdScenario(scenarioFile, scenarioFlags.solver(), style);

    if (repl->parsed()) {
      Session s("repl", replTheory, loadOrExit(replTheory));
      bool tty = isatty(STDIN_FILENO);
      if (tty) std::cout << "type help for commands\n";
      return console::runRepl(s, std::cin, std::cout, style, tty);
    }

    if (serveCmd->parsed()) {
      Service service(serve);
      if (!serveTheory.empty()) {
        loadOrExit(serveTheory);
        auto s = service.store().create(serveTheory);
        std::cout << "session " << s->id() << " opened on " << serveTheory << "\n";
      }
      int port = service.bind();
      if (port < 0) {
        std::cerr << "error: cannot bind " << serve.host << ":" << serve.port << "\n";
        return kInputError;
      }
      std::cout << "listening on http://" << serve.host << ":" << port << "\n" << std::flush;
      return service.run() ? kOk : kInputError;
    }
  } catch (const Exit& e) {
    return e.code;
  } catch (const SessionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kOk;
}
