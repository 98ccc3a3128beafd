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

// Shipped theories, compiled into the library, and theory loading helpers.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "prefarg/kernel.hpp"

namespace prefarg {

class UnknownPackError : public std::invalid_argument {
 public:
  explicit UnknownPackError(const std::string& name);
};

/// Pack names, e.g. `attribution-fig2`, sorted.
std::vector<std::string> listPacks();

/// Source text of a shipped pack. Accepts `attribution-fig2` and
/// `attribution_fig2`.
std::string packSource(std::string_view name);

bool isPack(std::string_view name);

/// Parses and validates; throws TheoryError carrying every diagnostic.
Theory loadTheory(std::string_view text, const std::string& file = "");

Theory loadPack(std::string_view name);

/// Loads `ref` as a file when one exists at that path, else as a pack.
/// `text` receives the source for diagnostics rendering when non-null.
Theory resolveTheory(const std::string& ref, std::string* text = nullptr);

/// Reads a whole file; throws std::runtime_error when unreadable.
std::string readFile(const std::string& path);

}  // namespace prefarg
