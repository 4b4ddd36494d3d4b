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
#include <string>
#include <vector>

#include "arealaw/graph.hpp"

namespace arealaw {

using NodeIndex = std::size_t;

/// Network over the graph's vertices plus a source (traced side) and a sink
/// (surviving side). Node order: source, graph vertices in document order,
/// sink. Capacities are undirected:
///   C(v, w)       = number of edges between distinct v and w, C(v, v) = 0
///   C(source, v)  = t(v)
///   C(v, sink)    = s(v)
class FlowNetwork {
 public:
  explicit FlowNetwork(std::size_t vertex_count);

  [[nodiscard]] std::size_t node_count() const { return n_; }
  [[nodiscard]] NodeIndex source() const { return 0; }
  [[nodiscard]] NodeIndex sink() const { return n_ - 1; }
  [[nodiscard]] NodeIndex node_of(VertexIndex v) const { return v + 1; }
  [[nodiscard]] bool is_vertex(NodeIndex node) const { return node != source() && node != sink(); }
  [[nodiscard]] VertexIndex vertex_of(NodeIndex node) const { return node - 1; }

  [[nodiscard]] int capacity(NodeIndex a, NodeIndex b) const { return cap_[a * n_ + b]; }
  void add_capacity(NodeIndex a, NodeIndex b, int c);

  /// Total capacity of the undirected cut (side, complement).
  [[nodiscard]] int cut_capacity(const std::vector<bool>& source_side) const;

 private:
  std::size_t n_;
  std::vector<int> cap_;
};

struct FlowResult {
  int value = 0;
  /// X unit paths source -> ... -> sink, node indices.
  std::vector<std::vector<NodeIndex>> paths;
  /// Minimal source-side minimum cut (nodes reachable from the source in the
  /// final residual network).
  std::vector<bool> cut;
  /// True when more than one minimum cut exists.
  bool cut_tied = false;
  /// Net flow a -> b, antisymmetric, row-major node_count x node_count.
  std::vector<int> net;
};

struct MinCut {
  std::vector<bool> source_side;
  int capacity = 0;
  bool tied = false;
};

FlowNetwork build_network(const Marginal& marginal);

/// Exact integer maximum flow (shortest augmenting paths) with a unit-path
/// decomposition and a minimum-cut certificate.
FlowResult max_flow(const FlowNetwork& network);

/// Minimum cut of the network. `tied` is set when the minimal and maximal
/// minimum cuts differ, i.e. some node lies neither on the source-reachable
/// side nor on the sink-reaching side of the final residual network.
MinCut min_cut(const FlowNetwork& network);

/// "source", "sink", or the graph vertex id.
std::string node_name(const Graph& graph, const FlowNetwork& network, NodeIndex node);

}  // namespace arealaw
