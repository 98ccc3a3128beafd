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

// Dung semantics over a defeat graph.

#pragma once

#include <cstddef>
#include <vector>

#include "prefarg/solver.hpp"

namespace prefarg {

enum class Label { In, Out, Undec };

/// Grounded labelling: IN when every defeater is OUT, OUT when some
/// defeater is IN, UNDEC otherwise.
std::vector<Label> groundedLabelling(const DefeatGraph& g);

/// Least fixpoint of the characteristic function, ascending node indices.
std::vector<std::size_t> groundedExtension(const DefeatGraph& g);

/// Nodes weakly connected (through defeats) to any of `seeds`, ascending.
std::vector<std::size_t> defeatComponent(const DefeatGraph& g, const std::vector<std::size_t>& seeds);

/// Maximal admissible sets. The graph is first reduced to the component of
/// `focus` (whole graph when null) and to its grounded-undecided nodes;
/// more than `maxNodes` of those throws GraphTooLargeError. Extensions are
/// restricted to the considered nodes and sorted.
std::vector<std::vector<std::size_t>> preferredExtensions(
    const DefeatGraph& g, std::size_t maxNodes = 20, const std::vector<std::size_t>* focus = nullptr);

}  // namespace prefarg
