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

#include "arealaw/flow.hpp"

#include <algorithm>
#include <deque>
#include <limits>

#include "arealaw/errors.hpp"

namespace arealaw {

namespace {

struct Residual {
  std::size_t n;
  std::vector<int> r;

  int& at(NodeIndex a, NodeIndex b) { return r[a * n + b]; }
  [[nodiscard]] int at(NodeIndex a, NodeIndex b) const { return r[a * n + b]; }
};

std::vector<bool> reachable_from(const Residual& res, NodeIndex start) {
  std::vector<bool> seen(res.n, false);
  std::deque<NodeIndex> queue{start};
  seen[start] = true;
  while (!queue.empty()) {
    const auto a = queue.front();
    queue.pop_front();
    for (NodeIndex b = 0; b < res.n; ++b) {
      if (!seen[b] && res.at(a, b) > 0) {
        seen[b] = true;
        queue.push_back(b);
      }
    }
  }
  return seen;
}

std::vector<bool> reaching(const Residual& res, NodeIndex target) {
  std::vector<bool> seen(res.n, false);
  std::deque<NodeIndex> queue{target};
  seen[target] = true;
  while (!queue.empty()) {
    const auto b = queue.front();
    queue.pop_front();
    for (NodeIndex a = 0; a < res.n; ++a) {
      if (!seen[a] && res.at(a, b) > 0) {
        seen[a] = true;
        queue.push_back(a);
      }
    }
  }
  return seen;
}

Residual saturate(const FlowNetwork& network, int& value) {
  const auto n = network.node_count();
  Residual res{n, std::vector<int>(n * n)};
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b) res.at(a, b) = network.capacity(a, b);

  value = 0;
  const auto s = network.source();
  const auto t = network.sink();
  std::vector<NodeIndex> parent(n);
  for (;;) {
    std::vector<bool> seen(n, false);
    std::deque<NodeIndex> queue{s};
    seen[s] = true;
    while (!queue.empty() && !seen[t]) {
      const auto a = queue.front();
      queue.pop_front();
      for (NodeIndex b = 0; b < n; ++b) {
        if (!seen[b] && res.at(a, b) > 0) {
          seen[b] = true;
          parent[b] = a;
          queue.push_back(b);
        }
      }
    }
    if (!seen[t]) break;
    int bottleneck = std::numeric_limits<int>::max();
    for (auto b = t; b != s; b = parent[b]) bottleneck = std::min(bottleneck, res.at(parent[b], b));
    for (auto b = t; b != s; b = parent[b]) {
      res.at(parent[b], b) -= bottleneck;
      res.at(b, parent[b]) += bottleneck;
    }
    value += bottleneck;
  }
  return res;
}

// Splits the positive part of an integral net flow into unit source-sink
// paths, cancelling any circulation met on the way.
std::vector<std::vector<NodeIndex>> decompose(std::vector<int> net, std::size_t n, NodeIndex s, NodeIndex t,
                                              int value) {
  std::vector<std::vector<NodeIndex>> paths;
  auto flow = [&](NodeIndex a, NodeIndex b) -> int& { return net[a * n + b]; };
  while (static_cast<int>(paths.size()) < value) {
    std::vector<NodeIndex> walk{s};
    std::vector<std::ptrdiff_t> position(n, -1);
    position[s] = 0;
    bool restarted = false;
    while (walk.back() != t) {
      const auto a = walk.back();
      NodeIndex next = n;
      for (NodeIndex b = 0; b < n; ++b) {
        if (flow(a, b) > 0) {
          next = b;
          break;
        }
      }
      if (next == n) throw InconsistencyError("flow decomposition stalled: conservation violated");
      if (position[next] >= 0) {
        // Cycle walk[position[next]] -> ... -> a -> next: cancel one unit.
        for (auto i = static_cast<std::size_t>(position[next]); i + 1 < walk.size(); ++i) {
          flow(walk[i], walk[i + 1]) -= 1;
          flow(walk[i + 1], walk[i]) += 1;
        }
        flow(a, next) -= 1;
        flow(next, a) += 1;
        restarted = true;
        break;
      }
      position[next] = static_cast<std::ptrdiff_t>(walk.size());
      walk.push_back(next);
    }
    if (restarted) continue;
    for (std::size_t i = 0; i + 1 < walk.size(); ++i) {
      flow(walk[i], walk[i + 1]) -= 1;
      flow(walk[i + 1], walk[i]) += 1;
    }
    paths.push_back(std::move(walk));
  }
  return paths;
}

}  // namespace

FlowNetwork::FlowNetwork(std::size_t vertex_count) : n_(vertex_count + 2), cap_(n_ * n_, 0) {}

void FlowNetwork::add_capacity(NodeIndex a, NodeIndex b, int c) {
  if (a == b || c == 0) return;
  cap_[a * n_ + b] += c;
  cap_[b * n_ + a] += c;
}

int FlowNetwork::cut_capacity(const std::vector<bool>& source_side) const {
  int total = 0;
  for (NodeIndex a = 0; a < n_; ++a)
    for (NodeIndex b = 0; b < n_; ++b)
      if (source_side[a] && !source_side[b]) total += capacity(a, b);
  return total;
}

FlowNetwork build_network(const Marginal& marginal) {
  const auto& g = marginal.graph();
  FlowNetwork net(g.vertex_count());
  for (const auto& e : g.edges()) {
    if (!e.is_loop()) net.add_capacity(net.node_of(e.u), net.node_of(e.v), 1);
  }
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    net.add_capacity(net.source(), net.node_of(v), marginal.traced(v));
    net.add_capacity(net.node_of(v), net.sink(), marginal.surviving(v));
  }
  return net;
}

FlowResult max_flow(const FlowNetwork& network) {
  const auto n = network.node_count();
  FlowResult result;
  const auto res = saturate(network, result.value);

  result.net.assign(n * n, 0);
  for (NodeIndex a = 0; a < n; ++a)
    for (NodeIndex b = 0; b < n; ++b) result.net[a * n + b] = network.capacity(a, b) - res.at(a, b);

  result.paths = decompose(result.net, n, network.source(), network.sink(), result.value);

  result.cut = reachable_from(res, network.source());
  const auto to_sink = reaching(res, network.sink());
  for (NodeIndex v = 0; v < n; ++v) {
    if (!result.cut[v] && !to_sink[v]) result.cut_tied = true;
  }
  return result;
}

MinCut min_cut(const FlowNetwork& network) {
  const auto flow = max_flow(network);
  return MinCut{flow.cut, network.cut_capacity(flow.cut), flow.cut_tied};
}

std::string node_name(const Graph& graph, const FlowNetwork& network, NodeIndex node) {
  if (node == network.source()) return "source";
  if (node == network.sink()) return "sink";
  return graph.vertex_id(network.vertex_of(node));
}

}  // namespace arealaw
