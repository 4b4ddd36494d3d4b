// Copyright 2026 The arealaw Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <deque>
#include <limits>
#include <vector>

namespace arealaw::detail {

/// Small directed max-flow (shortest augmenting paths) over an adjacency
/// list. Arc insertion order fixes the search order, so results are
/// deterministic.
class Digraph {
 public:
  explicit Digraph(std::size_t nodes) : adj_(nodes) {}

  /// Returns the arc index; the reverse arc is index ^ 1.
  std::size_t add_arc(std::size_t from, std::size_t to, int cap) {
    const auto id = arcs_.size();
    arcs_.push_back({to, cap});
    adj_[from].push_back(id);
    arcs_.push_back({from, 0});
    adj_[to].push_back(id + 1);
    return id;
  }

  int max_flow(std::size_t s, std::size_t t) {
    int total = 0;
    std::vector<std::size_t> via(adj_.size());
    for (;;) {
      std::vector<bool> seen(adj_.size(), false);
      std::deque<std::size_t> queue{s};
      seen[s] = true;
      while (!queue.empty() && !seen[t]) {
        const auto a = queue.front();
        queue.pop_front();
        for (auto id : adj_[a]) {
          const auto& arc = arcs_[id];
          if (arc.cap > 0 && !seen[arc.to]) {
            seen[arc.to] = true;
            via[arc.to] = id;
            queue.push_back(arc.to);
          }
        }
      }
      if (!seen[t]) return total;
      int bottleneck = std::numeric_limits<int>::max();
      for (auto b = t; b != s; b = arcs_[via[b] ^ 1U].to) bottleneck = std::min(bottleneck, arcs_[via[b]].cap);
      for (auto b = t; b != s; b = arcs_[via[b] ^ 1U].to) {
        arcs_[via[b]].cap -= bottleneck;
        arcs_[via[b] ^ 1U].cap += bottleneck;
      }
      total += bottleneck;
    }
  }

  /// Flow currently carried by arc `id` (its reverse residual).
  [[nodiscard]] int flow_on(std::size_t id) const { return arcs_[id ^ 1U].cap; }

 private:
  struct Arc {
    std::size_t to;
    int cap;
  };
  std::vector<Arc> arcs_;
  std::vector<std::vector<std::size_t>> adj_;
};

}  // namespace arealaw::detail
