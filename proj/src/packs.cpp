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

#include "prefarg/packs.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <utility>

#include "prefarg/dsl.hpp"

namespace prefarg {
namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embeddedPacks();
}  // namespace detail

UnknownPackError::UnknownPackError(const std::string& name)
    : std::invalid_argument("unknown pack " + name) {}

namespace {

std::string stemOf(std::string_view name) {
  std::string s(name);
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

}  // namespace

std::vector<std::string> listPacks() {
  std::vector<std::string> out;
  for (const auto& [stem, text] : detail::embeddedPacks()) {
    std::string n(stem);
    std::replace(n.begin(), n.end(), '_', '-');
    out.push_back(std::move(n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool isPack(std::string_view name) {
  const std::string stem = stemOf(name);
  const auto& packs = detail::embeddedPacks();
  return std::any_of(packs.begin(), packs.end(), [&](const auto& p) { return p.first == stem; });
}

std::string packSource(std::string_view name) {
  const std::string stem = stemOf(name);
  for (const auto& [s, text] : detail::embeddedPacks())
    if (s == stem) return std::string(text);
  throw UnknownPackError(std::string(name));
}

Theory loadTheory(std::string_view text, const std::string& file) {
  auto parsed = dsl::parse(text, file);
  if (!parsed.ok()) throw TheoryError(parsed.diagnostics);
  auto diags = validate(*parsed.theory);
  if (!diags.empty()) {
    for (auto& d : diags) {
      if (d.span || d.label.empty()) continue;
      auto it = parsed.labelSpans.find(d.label);
      if (it != parsed.labelSpans.end()) d.span = it->second;
    }
    throw TheoryError(std::move(diags));
  }
  return std::move(*parsed.theory);
}

Theory loadPack(std::string_view name) {
  return loadTheory(packSource(name), std::string(name) + ".arg");
}

std::string readFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Theory resolveTheory(const std::string& ref, std::string* text) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(ref, ec)) {
    std::string src = readFile(ref);
    if (text) *text = src;
    return loadTheory(src, ref);
  }
  std::string src = packSource(ref);
  if (text) *text = src;
  return loadTheory(src, ref + ".arg");
}

}  // namespace prefarg
