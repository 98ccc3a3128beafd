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

// Terminal helpers shared by the batch commands and the REPL.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "prefarg/session.hpp"
#include "prefarg/solver.hpp"

namespace prefarg::console {

struct Style {
  bool colour = false;

  /// Colour only when stdout is a terminal and NO_COLOR is unset.
  static Style detect();

  std::string status(Status s) const;
  std::string good(const std::string& text) const;
  std::string bad(const std::string& text) const;
  std::string dim(const std::string& text) const;
};

/// One line per verdict: literal, padded, then its status.
void printVerdicts(std::ostream& out, const std::vector<Verdict>& verdicts, const Style& style);

void printConflicts(std::ostream& out, const std::vector<ConflictReport>& reports, bool suggest,
                    const Style& style);

void printAbduction(std::ostream& out, const AbductionResult& result);

/// Splits `a(x), neg b(y); c` at top-level commas and semicolons.
std::vector<std::string> splitLiterals(const std::string& text);

/// Interactive loop over one session; returns the process exit code.
int runRepl(Session& session, std::istream& in, std::ostream& out, const Style& style, bool prompt);

}  // namespace prefarg::console
