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

// JSON documents exchanged by the CLI and the HTTP service. Literals travel
// as strings in rule-language syntax. Object keys are emitted sorted, so a
// document's text is a deterministic function of its content.

#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "prefarg/abduction.hpp"
#include "prefarg/conflicts.hpp"
#include "prefarg/explain.hpp"
#include "prefarg/kernel.hpp"
#include "prefarg/solver.hpp"

namespace prefarg::wire {

using Json = nlohmann::json;

/// Thrown when a document does not have the expected shape.
class WireError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

Json toJson(const Literal& l);
Literal literalFromJson(const Json& j);
Json toJson(const std::vector<Literal>& ls);
std::vector<Literal> literalsFromJson(const Json& j);

Json toJson(const SourceSpan& s);
Json toJson(const Diagnostic& d);

Json toJson(const Argument& a, const GroundTheory& gt);
Json toJson(const Verdict& v, const GroundTheory& gt);

Json toJson(const Explanation& e);
Explanation explanationFromJson(const Json& j);

Json toJson(const PriorityRule& p);
PriorityRule priorityFromJson(const Json& j);

Json toJson(const ConflictReport& r);
Json toJson(const std::vector<ConflictReport>& reports);

Json toJson(const AbductiveAnswer& a);
Json toJson(const AbductionResult& r);

/// Compact text with a trailing newline.
std::string dump(const Json& j);

}  // namespace prefarg::wire
