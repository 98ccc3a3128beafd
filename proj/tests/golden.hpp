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

// E-health access cases with their expected outcomes. Data x belongs to
// patient c; d is a doctor.

#pragma once

#include <string>
#include <vector>

#include "prefarg/dsl.hpp"
#include "prefarg/solver.hpp"

namespace golden {

struct AccessCase {
  std::string name;
  std::vector<prefarg::Literal> evidence;
  std::string goal;
  prefarg::Status expected;
};

inline std::vector<AccessCase> ehealthCases() {
  using prefarg::Status;
  auto ev = [](std::initializer_list<const char*> xs) {
    std::vector<prefarg::Literal> out;
    for (const char* x : xs) out.push_back(*prefarg::dsl::parseLiteral(x));
    return out;
  };
  const auto treating = {"treatD(d, c)", "owner(c, x)"};
  auto with = [&](std::initializer_list<const char*> base, std::initializer_list<const char*> more) {
    auto out = ev(base);
    auto extra = ev(more);
    out.insert(out.end(), extra.begin(), extra.end());
    return out;
  };
  const char* docP = "access(x, d, permitted)";
  const char* docD = "access(x, d, denied)";
  const char* ownP = "access(x, c, permitted)";
  const char* ownD = "access(x, c, denied)";
  return {
      {"treating doctor is denied private data", with(treating, {"pdata(x)"}), docD, Status::AcceptedSceptically},
      {"nothing permits the treating doctor private data", with(treating, {"pdata(x)"}), docP, Status::NoArgument},
      {"treating doctor reads prescriptions", with(treating, {"presc(x)"}), docP, Status::AcceptedSceptically},
      {"treating doctor is denied personal information", with(treating, {"pinfo(x)"}), docD,
       Status::AcceptedSceptically},
      {"emergency opens private data", with(treating, {"pdata(x)", "emerg(c)"}), docP, Status::AcceptedSceptically},
      {"emergency overrides the denial", with(treating, {"pdata(x)", "emerg(c)"}), docD, Status::Rejected},
      {"emergency opens personal information", with(treating, {"pinfo(x)", "emerg(c)"}), docP,
       Status::AcceptedSceptically},
      {"family doctor reads private data", ev({"famD(d, c)", "owner(c, x)", "pdata(x)"}), docP,
       Status::AcceptedSceptically},
      {"owner reads own private data", ev({"owner(c, x)", "pdata(x)"}), ownP, Status::AcceptedSceptically},
      {"emotional owner is denied private data", ev({"owner(c, x)", "pdata(x)", "emot(c)"}), ownD,
       Status::AcceptedSceptically},
      {"emotional owner loses the permission", ev({"owner(c, x)", "pdata(x)", "emot(c)"}), ownP, Status::Rejected},
      {"emotional owner still reads prescriptions", ev({"owner(c, x)", "presc(x)", "emot(c)"}), ownP,
       Status::AcceptedSceptically},
      {"emotional owner still reads personal information", ev({"owner(c, x)", "pinfo(x)", "emot(c)"}), ownP,
       Status::AcceptedSceptically},
      {"intensive care keeps prescriptions readable", with(treating, {"intens(c)", "presc(x)"}), docP,
       Status::AcceptedSceptically},
      {"intensive care denies private data", with(treating, {"intens(c)", "pdata(x)"}), docD,
       Status::AcceptedSceptically},
      {"intensive care denies personal information", with(treating, {"intens(c)", "pinfo(x)"}), docD,
       Status::AcceptedSceptically},
      {"patient permission opens private data", with(treating, {"intens(c)", "pdata(x)", "perm(c, pdata)"}), docP,
       Status::AcceptedSceptically},
      {"patient permission overrides both denials", with(treating, {"intens(c)", "pdata(x)", "perm(c, pdata)"}),
       docD, Status::Rejected},
      {"unconscious patient opens personal information", with(treating, {"intens(c)", "uncon(c)", "pinfo(x)"}),
       docP, Status::AcceptedSceptically},
      {"unconscious patient without permissions stays denied",
       with(treating, {"intens(c)", "uncon(c)", "pdata(x)"}), docD, Status::AcceptedSceptically},
      {"family permission opens private data",
       with(treating, {"intens(c)", "uncon(c)", "pdata(x)", "fPerm(c, pdata)"}), docP, Status::AcceptedSceptically},
      {"double permission opens private data after a family refusal",
       with(treating, {"intens(c)", "uncon(c)", "pdata(x)", "neg fPerm(c, pdata)", "fdocP(c, pdata)",
                       "hdP(c, pdata)"}),
       docP, Status::AcceptedSceptically},
      {"one permission is not enough after a family refusal",
       with(treating, {"intens(c)", "uncon(c)", "pdata(x)", "neg fPerm(c, pdata)", "fdocP(c, pdata)"}), docD,
       Status::AcceptedSceptically},
  };
}

}  // namespace golden
