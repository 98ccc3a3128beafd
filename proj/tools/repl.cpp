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

#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "console.hpp"
#include "prefarg/dsl.hpp"

namespace prefarg::console {

Style Style::detect() {
  Style s;
  s.colour = isatty(STDOUT_FILENO) && std::getenv("NO_COLOR") == nullptr;
  return s;
}

namespace {

std::string paint(bool on, const char* code, const std::string& text) {
  return on ? std::string("\x1b[") + code + "m" + text + "\x1b[0m" : text;
}

std::string priorityText(const PriorityRule& p) {
  std::string s = "prefer " + p.label + ": " + p.higher + " > " + p.lower;
  if (!p.body.empty()) s += " when " + joinLiterals(p.body);
  return s + ".";
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::string Style::status(Status s) const {
  std::string name(statusName(s));
  switch (s) {
    case Status::AcceptedSceptically: return paint(colour, "1;32", name);
    case Status::AcceptedCredulously: return paint(colour, "33", name);
    case Status::Rejected: return paint(colour, "1;31", name);
    case Status::NoArgument: return paint(colour, "2", name);
  }
  return name;
}

std::string Style::good(const std::string& text) const { return paint(colour, "32", text); }
std::string Style::bad(const std::string& text) const { return paint(colour, "31", text); }
std::string Style::dim(const std::string& text) const { return paint(colour, "2", text); }

void printVerdicts(std::ostream& out, const std::vector<Verdict>& verdicts, const Style& style) {
  std::size_t width = 0;
  for (const auto& v : verdicts) width = std::max(width, v.query.toString().size());
  for (const auto& v : verdicts) {
    std::string q = v.query.toString();
    out << q << std::string(width - q.size() + 2, ' ') << style.status(v.status);
    if (!v.exact) out << style.dim(" (grounded fallback)");
    out << "\n";
  }
}

void printConflicts(std::ostream& out, const std::vector<ConflictReport>& reports, bool suggest,
                    const Style& style) {
  for (const auto& r : reports) {
    out << r.ruleA << " vs " << r.ruleB << ": " << r.headA.toString() << " ~ " << r.headB.toString();
    if (!r.witness.empty()) out << style.dim(" given " + joinLiterals(r.witness));
    out << "\n  ";
    if (r.resolved) {
      out << style.good("resolved") << ", " << r.winner << " wins";
      if (!r.decidedBy.empty()) {
        out << " by ";
        for (std::size_t i = 0; i < r.decidedBy.size(); ++i) out << (i ? ", " : "") << r.decidedBy[i];
      }
      if (r.bySpecificity) out << " (specificity)";
    } else {
      out << style.bad("unresolved");
    }
    out << "\n";
    if (suggest && !r.resolved && r.suggestion) out << "  suggest: " << priorityText(*r.suggestion) << "\n";
  }
  out << reports.size() << " conflicts, " << countUnresolved(reports) << " unresolved\n";
}

void printAbduction(std::ostream& out, const AbductionResult& result) {
  if (result.answers.empty()) out << "no answers\n";
  for (const auto& a : result.answers) {
    out << "{" << joinLiterals(a.delta) << "}  " << statusName(a.resultingStatus) << "\n";
  }
  if (result.truncated) out << "(search truncated after " << result.explored << " candidate sets)\n";
}

std::vector<std::string> splitLiterals(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if ((c == ',' || c == ';') && depth == 0) {
      if (!trim(cur).empty()) out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!trim(cur).empty()) out.push_back(trim(cur));
  return out;
}

namespace {

const char* kHelp =
    "  assert <lit>[, <lit>...]     add evidence\n"
    "  retract <lit>[, <lit>...]    withdraw evidence\n"
    "  query <pattern>              verdicts for every reported instance\n"
    "  explain <lit> [hints]        why the goal has its status\n"
    "  conflicts                    conflicting rule pairs and suggestions\n"
    "  prefer <l>: <a> > <b> [when ...]   add a priority\n"
    "  abduce <lit> [k]             evidence that would establish the goal\n"
    "  evidence                     active evidence and the log\n"
    "  save <path>                  write a snapshot\n"
    "  quit\n";

std::vector<Literal> groundList(const std::string& rest) {
  std::vector<Literal> out;
  for (const auto& s : splitLiterals(rest)) out.push_back(parseGoal(s, true));
  return out;
}

}  // namespace

int runRepl(Session& session, std::istream& in, std::ostream& out, const Style& style, bool prompt) {
  std::string line;
  for (;;) {
    if (prompt) out << session.id() << "@" << session.revision() << "> " << std::flush;
    if (!std::getline(in, line)) break;
    line = trim(line);
    if (line.empty() || line[0] == '%') continue;
    auto sp = line.find(' ');
    std::string verb = line.substr(0, sp);
    std::string rest = sp == std::string::npos ? "" : trim(line.substr(sp + 1));
    if (!rest.empty() && rest.back() == '.') rest.pop_back();
    try {
      if (verb == "quit" || verb == "exit") {
        break;
      } else if (verb == "help") {
        out << kHelp;
      } else if (verb == "assert") {
        out << "revision " << session.updateEvidence(groundList(rest), {}) << "\n";
      } else if (verb == "retract") {
        out << "revision " << session.updateEvidence({}, groundList(rest)) << "\n";
      } else if (verb == "query") {
        printVerdicts(out, session.view().query(parseGoal(rest, false)), style);
      } else if (verb == "explain") {
        bool hints = false;
        if (rest.size() > 6 && rest.substr(rest.size() - 6) == " hints") {
          hints = true;
          rest = trim(rest.substr(0, rest.size() - 6));
        }
        out << renderText(session.view().explain(parseGoal(rest, true), hints));
      } else if (verb == "conflicts") {
        printConflicts(out, session.view().conflicts(), true, style);
      } else if (verb == "prefer") {
        Diagnostic d;
        auto p = dsl::parsePriority(rest, &d);
        if (!p) throw SessionError(400, "bad-priority", d.message, d.span);
        out << "revision " << session.addPriority(*p) << "\n";
      } else if (verb == "abduce") {
        std::size_t k = 2;
        auto close = rest.rfind(')');
        if (close != std::string::npos && close + 1 < rest.size()) {
          k = static_cast<std::size_t>(std::stoul(trim(rest.substr(close + 1))));
          rest = trim(rest.substr(0, close + 1));
        }
        printAbduction(out, session.view().abduce(parseGoal(rest, true), Tier::Sceptical, k));
      } else if (verb == "evidence") {
        for (const auto& l : session.evidence()) out << l.toString() << "\n";
        for (const auto& e : session.log())
          out << style.dim("  r" + std::to_string(e.revision) + " " + (e.asserted ? "assert " : "retract ") +
                           e.literal.toString() + " " + e.at)
              << "\n";
      } else if (verb == "save") {
        if (rest.empty()) throw SessionError(400, "missing-path", "save needs a path");
        std::ofstream f(rest, std::ios::binary | std::ios::trunc);
        if (!f) throw SessionError(400, "unwritable", "cannot write " + rest);
        f << session.snapshot();
        out << "saved " << rest << "\n";
      } else {
        out << style.bad("unknown command " + verb) << "; try help\n";
      }
    } catch (const SessionError& e) {
      out << style.bad("error " + std::to_string(e.status())) << ": " << e.what() << "\n";
    } catch (const std::exception& e) {
      out << style.bad("error") << ": " << e.what() << "\n";
    }
  }
  return 0;
}

}  // namespace prefarg::console
