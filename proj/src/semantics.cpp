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

#include "prefarg/semantics.hpp"

#include <algorithm>
#include <cstdint>

namespace prefarg {

std::vector<Label> groundedLabelling(const DefeatGraph& g) {
  const auto defeaters = g.defeaters();
  std::vector<Label> label(g.nodes.size(), Label::Undec);
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < g.nodes.size(); ++i) {
      if (label[i] != Label::Undec) continue;
      bool allOut = true;
      bool someIn = false;
      for (std::size_t d : defeaters[i]) {
        if (label[d] != Label::Out) allOut = false;
        if (label[d] == Label::In) someIn = true;
      }
      if (allOut) {
        label[i] = Label::In;
        changed = true;
      } else if (someIn) {
        label[i] = Label::Out;
        changed = true;
      }
    }
  }
  return label;
}

std::vector<std::size_t> groundedExtension(const DefeatGraph& g) {
  const auto label = groundedLabelling(g);
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < label.size(); ++i)
    if (label[i] == Label::In) out.push_back(i);
  return out;
}

std::vector<std::size_t> defeatComponent(const DefeatGraph& g, const std::vector<std::size_t>& seeds) {
  std::vector<std::vector<std::size_t>> adj(g.nodes.size());
  for (const auto& d : g.defeats) {
    adj[d.attacker].push_back(d.target);
    adj[d.target].push_back(d.attacker);
  }
  std::vector<bool> seen(g.nodes.size(), false);
  std::vector<std::size_t> stack;
  for (std::size_t s : seeds)
    if (s < seen.size() && !seen[s]) {
      seen[s] = true;
      stack.push_back(s);
    }
  while (!stack.empty()) {
    std::size_t n = stack.back();
    stack.pop_back();
    for (std::size_t m : adj[n])
      if (!seen[m]) {
        seen[m] = true;
        stack.push_back(m);
      }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < seen.size(); ++i)
    if (seen[i]) out.push_back(i);
  return out;
}

std::vector<std::vector<std::size_t>> preferredExtensions(const DefeatGraph& g, std::size_t maxNodes,
                                                          const std::vector<std::size_t>* focus) {
  std::vector<std::size_t> considered;
  if (focus) {
    considered = defeatComponent(g, *focus);
  } else {
    considered.resize(g.nodes.size());
    for (std::size_t i = 0; i < considered.size(); ++i) considered[i] = i;
  }
  const auto label = groundedLabelling(g);
  std::vector<std::size_t> in, undec;
  for (std::size_t i : considered) {
    if (label[i] == Label::In) in.push_back(i);
    if (label[i] == Label::Undec) undec.push_back(i);
  }
  const std::size_t limit = std::min<std::size_t>(maxNodes, 30);
  if (undec.size() > limit) throw GraphTooLargeError(undec.size(), limit);

  // IN nodes never defeat undecided ones and undecided ones never defeat IN
  // nodes, so admissibility of IN ∪ S only depends on defeats inside S.
  std::vector<std::size_t> pos(g.nodes.size(), SIZE_MAX);
  for (std::size_t k = 0; k < undec.size(); ++k) pos[undec[k]] = k;
  std::vector<std::uint32_t> defeatedBy(undec.size(), 0);
  for (const auto& d : g.defeats)
    if (pos[d.attacker] != SIZE_MAX && pos[d.target] != SIZE_MAX)
      defeatedBy[pos[d.target]] |= std::uint32_t{1} << pos[d.attacker];

  auto admissible = [&](std::uint32_t s) {
    for (std::size_t x = 0; x < undec.size(); ++x) {
      if (!(s >> x & 1U)) continue;
      if (defeatedBy[x] & s) return false;
      for (std::size_t d = 0; d < undec.size(); ++d)
        if ((defeatedBy[x] >> d & 1U) && !(defeatedBy[d] & s)) return false;
    }
    return true;
  };

  std::vector<std::uint32_t> adm;
  const std::uint64_t total = std::uint64_t{1} << undec.size();
  for (std::uint64_t s = 0; s < total; ++s)
    if (admissible(static_cast<std::uint32_t>(s))) adm.push_back(static_cast<std::uint32_t>(s));

  // Largest first: any admissible superset implies a maximal superset.
  std::stable_sort(adm.begin(), adm.end(), [](std::uint32_t a, std::uint32_t b) {
    return __builtin_popcount(a) > __builtin_popcount(b);
  });
  std::vector<std::uint32_t> maximal;
  for (std::uint32_t s : adm)
    if (std::none_of(maximal.begin(), maximal.end(), [&](std::uint32_t t) { return (t & s) == s; }))
      maximal.push_back(s);

  std::vector<std::vector<std::size_t>> out;
  for (std::uint32_t s : maximal) {
    std::vector<std::size_t> ext = in;
    for (std::size_t x = 0; x < undec.size(); ++x)
      if (s >> x & 1U) ext.push_back(undec[x]);
    std::sort(ext.begin(), ext.end());
    out.push_back(std::move(ext));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace prefarg
