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
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace arealaw {

using VertexIndex = std::size_t;
using LegId = std::size_t;

/// Edge as written in a graph document, endpoints named by vertex id.
struct EdgeSpec {
  std::string u;
  std::string v;
  int d = 1;
};

/// Validated edge. Both legs of an edge carry the same dimension ratio.
struct Edge {
  VertexIndex u = 0;
  VertexIndex v = 0;
  int ratio = 1;

  [[nodiscard]] bool is_loop() const { return u == v; }
};

enum class Side { first, second };

/// One endpoint of an edge, i.e. one quantum subsystem of dimension ratio*N.
///
/// Leg ids are assigned by scanning edges in document order, first endpoint
/// then second, so edge e owns legs 2e and 2e+1.
struct Leg {
  LegId id = 0;
  VertexIndex vertex = 0;
  std::size_t edge = 0;
  Side side = Side::first;
  int ratio = 1;
};

/// Undirected multigraph with loops. Immutable once constructed.
class Graph {
 public:
  /// Validates and builds. Throws ValidationError naming the offending
  /// entity on dangling endpoints, non-positive ratios, duplicate or reserved
  /// vertex ids, and degree-0 vertices.
  static Graph create(std::vector<std::string> vertex_ids,
                      const std::vector<EdgeSpec>& edges);

  [[nodiscard]] std::size_t vertex_count() const { return ids_.size(); }
  [[nodiscard]] std::size_t edge_count() const { return edges_.size(); }
  [[nodiscard]] std::size_t leg_count() const { return legs_.size(); }

  [[nodiscard]] const std::string& vertex_id(VertexIndex v) const { return ids_.at(v); }
  [[nodiscard]] const std::vector<std::string>& vertex_ids() const { return ids_; }
  [[nodiscard]] std::optional<VertexIndex> find_vertex(std::string_view id) const;

  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<Leg>& legs() const { return legs_; }
  [[nodiscard]] const Leg& leg(LegId id) const { return legs_.at(id); }

  /// Legs attached to v, ascending by id.
  [[nodiscard]] std::span<const LegId> legs_of(VertexIndex v) const { return incident_.at(v); }
  [[nodiscard]] int degree(VertexIndex v) const {
    return static_cast<int>(incident_.at(v).size());
  }

  /// The other endpoint of the edge owning `id`.
  [[nodiscard]] static LegId partner(LegId id) { return id ^ 1U; }

  /// Number of (non-loop) edges joining u and v; 0 when u == v.
  [[nodiscard]] int multiplicity(VertexIndex u, VertexIndex v) const;

  /// Serialized form of the graph part of a document (vertices + edges).
  [[nodiscard]] std::vector<EdgeSpec> edge_specs() const;

 private:
  Graph() = default;

  std::vector<std::string> ids_;
  std::map<std::string, VertexIndex, std::less<>> index_;
  std::vector<Edge> edges_;
  std::vector<Leg> legs_;
  std::vector<std::vector<LegId>> incident_;
};

/// Which subsystems are traced out, either as per-vertex surviving counts
/// s(v) or as an explicit set of traced leg ids.
struct TraceSpec {
  enum class Mode { counts, legs };

  Mode mode = Mode::counts;
  std::map<std::string, int> surviving;  // counts mode; absent vertices are an error
  std::vector<LegId> traced;             // legs mode

  static TraceSpec from_counts(std::map<std::string, int> s) {
    return TraceSpec{Mode::counts, std::move(s), {}};
  }
  static TraceSpec from_legs(std::vector<LegId> legs) {
    return TraceSpec{Mode::legs, {}, std::move(legs)};
  }
};

/// A graph together with a partition {S, T} of its legs.
///
/// Always carries a leg-level view. A counts-mode spec is completed by
/// tracing the lowest-numbered legs of each vertex; legs_explicit() records
/// which of the two happened.
class Marginal {
 public:
  Marginal(Graph graph, std::vector<bool> traced_legs, bool legs_explicit);

  [[nodiscard]] const Graph& graph() const { return graph_; }

  /// s(v): surviving legs at v.
  [[nodiscard]] int surviving(VertexIndex v) const { return surviving_.at(v); }
  /// t(v) = deg(v) - s(v).
  [[nodiscard]] int traced(VertexIndex v) const { return graph_.degree(v) - surviving_.at(v); }
  [[nodiscard]] const std::vector<int>& surviving_counts() const { return surviving_; }

  [[nodiscard]] bool is_traced(LegId id) const { return traced_.at(id); }
  [[nodiscard]] const std::vector<bool>& traced_mask() const { return traced_; }
  [[nodiscard]] std::vector<LegId> traced_legs() const;
  [[nodiscard]] std::vector<LegId> surviving_legs() const;
  [[nodiscard]] bool legs_explicit() const { return legs_explicit_; }

  [[nodiscard]] int total_surviving() const;
  [[nodiscard]] int total_traced() const;

  /// Same graph with S and T exchanged. Both marginals of a pure state share
  /// their nonzero spectrum.
  [[nodiscard]] Marginal complement() const;

  /// Counts-mode spec equivalent to this marginal.
  [[nodiscard]] TraceSpec counts_spec() const;
  /// Legs-mode spec equivalent to this marginal.
  [[nodiscard]] TraceSpec legs_spec() const;

 private:
  Graph graph_;
  std::vector<bool> traced_;
  std::vector<int> surviving_;
  bool legs_explicit_ = false;
};

/// Parses the graph part of a JSON graph document.
Graph parse_graph(std::string_view text);

/// Parses the optional "trace" member of a JSON graph document. Returns
/// nullopt when the document has no trace.
std::optional<TraceSpec> parse_trace(std::string_view text);

Marginal resolve_trace(const Graph& graph, const TraceSpec& spec);

/// Parses a full document (graph + mandatory trace).
Marginal parse_marginal(std::string_view text);

/// True iff every vertex is either fully traced or fully surviving.
bool is_adapted(const Marginal& marginal);

}  // namespace arealaw
