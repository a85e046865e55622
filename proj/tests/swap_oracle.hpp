/*
 * Copyright 2026 The serpscale authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *   http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

// Test-only oracle for the swap form of the rightward-demotion rule. It
// explores, by breadth-first search, every sequence reachable from a start
// SERP through single swaps that move a higher grade rightward past a
// strictly lower one. The production predicate uses a closed form; this
// oracle stays independent of it.

#include <queue>
#include <set>
#include <vector>

#include "serpscale/core_model.hpp"

namespace serpscale::testing {

inline std::set<std::vector<int>> swap_closure(const Serp& start) {
  std::set<std::vector<int>> seen;
  std::queue<std::vector<int>> frontier;
  seen.insert(start.grades);
  frontier.push(start.grades);
  while (!frontier.empty()) {
    std::vector<int> current = frontier.front();
    frontier.pop();
    const size_t n = current.size();
    for (size_t i = 0; i + 1 < n; ++i) {
      for (size_t j = i + 1; j < n; ++j) {
        if (current[i] <= current[j]) continue;  // only demotions move right
        std::vector<int> next = current;
        std::swap(next[i], next[j]);
        if (seen.insert(next).second) frontier.push(next);
      }
    }
  }
  return seen;
}

inline bool swap_reachable(const Serp& from, const Serp& to) {
  if (from.length() != to.length()) return false;
  return swap_closure(from).count(to.grades) > 0;
}

}  // namespace serpscale::testing
