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

#include "arealaw/marking.hpp"

#include <limits>
#include <string>

#include "arealaw/errors.hpp"
#include "detail/digraph_flow.hpp"

namespace arealaw {

namespace {

std::uint64_t binomial_saturating(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  std::uint64_t result = 1;
  for (int i = 1; i <= k; ++i) {
    const auto num = static_cast<std::uint64_t>(n - k + i);
    if (result > std::numeric_limits<std::uint64_t>::max() / num) return std::numeric_limits<std::uint64_t>::max();
    result = result * num / static_cast<std::uint64_t>(i);
  }
  return result;
}

// All k-subsets of `items`, lexicographic.
std::vector<std::vector<LegId>> subsets(std::span<const LegId> items, int k) {
  std::vector<std::vector<LegId>> out;
  const auto n = static_cast<int>(items.size());
  std::vector<int> idx(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
  for (;;) {
    std::vector<LegId> pick;
    pick.reserve(idx.size());
    for (int i : idx) pick.push_back(items[static_cast<std::size_t>(i)]);
    out.push_back(std::move(pick));
    int pos = k - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - k + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int i = pos + 1; i < k; ++i) idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
  }
  return out;
}

// Chooses, for every edge internal to one side of the cut, at most one
// endpoint that receives a token, so that each vertex v on that side gets
// exactly demand[v] tokens. Returns per-edge receiving leg (or npos).
std::vector<LegId> assign_tokens(const Graph& g, const std::vector<std::size_t>& internal_edges,
                                 const std::vector<VertexIndex>& side_vertices, const std::vector<int>& demand) {
  constexpr auto none = std::numeric_limits<LegId>::max();
  const auto ne = internal_edges.size();
  const auto nv = g.vertex_count();
  // Layout: 0 = source, 1..ne = edges, ne+1..ne+nv = vertices, ne+nv+1 = sink.
  detail::Digraph net(ne + nv + 2);
  const std::size_t source = 0;
  const std::size_t sink = ne + nv + 1;
  std::vector<std::pair<std::size_t, std::size_t>> endpoint_arcs(ne);
  for (std::size_t i = 0; i < ne; ++i) {
    const auto& e = g.edges()[internal_edges[i]];
    net.add_arc(source, 1 + i, 1);
    endpoint_arcs[i].first = net.add_arc(1 + i, ne + 1 + e.u, 1);
    endpoint_arcs[i].second = e.is_loop() ? none : net.add_arc(1 + i, ne + 1 + e.v, 1);
  }
  int required = 0;
  for (auto v : side_vertices) {
    net.add_arc(ne + 1 + v, sink, demand[v]);
    required += demand[v];
  }
  const int got = net.max_flow(source, sink);
  if (got != required) {
    throw InconsistencyError("marking_from_flow: cut side admits only " + std::to_string(got) + " of " +
                             std::to_string(required) + " required endpoint assignments");
  }

  std::vector<LegId> receiver(ne, none);
  for (std::size_t i = 0; i < ne; ++i) {
    const auto e = internal_edges[i];
    if (net.flow_on(endpoint_arcs[i].first) > 0) {
      receiver[i] = 2 * e;
    } else if (endpoint_arcs[i].second != none && net.flow_on(endpoint_arcs[i].second) > 0) {
      receiver[i] = 2 * e + 1;
    }
  }
  return receiver;
}

}  // namespace

std::vector<LegId> Marking::marked_legs() const {
  std::vector<LegId> out;
  for (LegId i = 0; i < marked.size(); ++i)
    if (marked[i]) out.push_back(i);
  return out;
}

FattenedGraph fatten(const Graph& graph) {
  FattenedGraph fat;
  fat.edges.reserve(graph.edge_count());
  for (std::size_t e = 0; e < graph.edge_count(); ++e) fat.edges.emplace_back(2 * e, 2 * e + 1);
  fat.projection.reserve(graph.leg_count());
  for (const auto& leg : graph.legs()) fat.projection.push_back(leg.vertex);
  return fat;
}

int crossings(const FattenedGraph& fat, const Marking& marking) {
  int count = 0;
  for (const auto& [a, b] : fat.edges) {
    if (marking.marked.at(a) != marking.marked.at(b)) ++count;
  }
  return count;
}

bool is_compatible(const Marginal& marginal, const Marking& marking) {
  const auto& g = marginal.graph();
  if (marking.marked.size() != g.leg_count()) return false;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    int marked = 0;
    for (auto leg : g.legs_of(v)) marked += marking.marked[leg] ? 1 : 0;
    if (marked != marginal.surviving(v)) return false;
  }
  return true;
}

Marking marking_of(const Marginal& marginal) {
  Marking m;
  m.marked.resize(marginal.graph().leg_count());
  for (LegId i = 0; i < m.marked.size(); ++i) m.marked[i] = !marginal.is_traced(i);
  return m;
}

std::uint64_t marking_space_size(const Marginal& marginal) {
  const auto& g = marginal.graph();
  std::uint64_t total = 1;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto c = binomial_saturating(g.degree(v), marginal.surviving(v));
    if (c != 0 && total > std::numeric_limits<std::uint64_t>::max() / c) return std::numeric_limits<std::uint64_t>::max();
    total *= c;
  }
  return total;
}

AreaResult area_bruteforce(const Marginal& marginal, std::uint64_t combination_limit) {
  const auto space = marking_space_size(marginal);
  if (space > combination_limit) {
    throw CombinatorialLimitError("marking space has " + std::to_string(space) +
                                  " compatible markings, above the limit of " + std::to_string(combination_limit) +
                                  "; use the max-flow value instead");
  }
  const auto& g = marginal.graph();
  const auto fat = fatten(g);
  const auto nv = g.vertex_count();

  std::vector<std::vector<std::vector<LegId>>> choices(nv);
  for (VertexIndex v = 0; v < nv; ++v) choices[v] = subsets(g.legs_of(v), marginal.surviving(v));

  std::vector<std::size_t> odometer(nv, 0);
  Marking current{std::vector<bool>(g.leg_count(), false)};
  AreaResult best{-1, {}};
  for (;;) {
    std::fill(current.marked.begin(), current.marked.end(), false);
    for (VertexIndex v = 0; v < nv; ++v)
      for (auto leg : choices[v][odometer[v]]) current.marked[leg] = true;
    const int cr = crossings(fat, current);
    if (cr > best.area) best = AreaResult{cr, current};

    std::size_t pos = nv;
    while (pos > 0) {
      --pos;
      if (++odometer[pos] < choices[pos].size()) break;
      odometer[pos] = 0;
      if (pos == 0) return best;
    }
    if (nv == 0) return best;
  }
}

Marking marking_from_flow(const Marginal& marginal, const FlowResult& flow) {
  const auto& g = marginal.graph();
  const auto nv = g.vertex_count();
  if (flow.cut.size() != nv + 2) {
    throw InconsistencyError("marking_from_flow: flow result does not match the marginal's network");
  }
  // Node v+1 in the network is graph vertex v.
  auto in_source_side = [&](VertexIndex v) { return static_cast<bool>(flow.cut[v + 1]); };

  Marking marking{std::vector<bool>(g.leg_count(), false)};
  std::vector<std::size_t> inside_a;
  std::vector<std::size_t> inside_b;
  for (std::size_t e = 0; e < g.edge_count(); ++e) {
    const auto& edge = g.edges()[e];
    const bool au = in_source_side(edge.u);
    const bool av = in_source_side(edge.v);
    if (au != av) {
      // Cut edge: marked on the sink side.
      marking.marked[2 * e] = !au;
      marking.marked[2 * e + 1] = !av;
    } else if (au) {
      inside_a.push_back(e);
    } else {
      inside_b.push_back(e);
    }
  }

  std::vector<VertexIndex> side_a;
  std::vector<VertexIndex> side_b;
  std::vector<int> demand(nv, 0);
  for (VertexIndex v = 0; v < nv; ++v) {
    if (in_source_side(v)) {
      side_a.push_back(v);
      demand[v] = marginal.surviving(v);
    } else {
      side_b.push_back(v);
      demand[v] = marginal.traced(v);
    }
  }

  constexpr auto none = std::numeric_limits<LegId>::max();
  // Source side: tokens are marks, everything else stays unmarked.
  const auto marks = assign_tokens(g, inside_a, side_a, demand);
  for (std::size_t i = 0; i < inside_a.size(); ++i) {
    if (marks[i] != none) marking.marked[marks[i]] = true;
  }
  // Sink side: tokens are unmarked legs, everything else is marked.
  const auto unmarks = assign_tokens(g, inside_b, side_b, demand);
  for (std::size_t i = 0; i < inside_b.size(); ++i) {
    const auto e = inside_b[i];
    marking.marked[2 * e] = true;
    marking.marked[2 * e + 1] = true;
    if (unmarks[i] != none) {
      // For a loop the receiving leg is 2e; keep the lower leg marked instead.
      const auto leg = g.edges()[e].is_loop() ? 2 * e + 1 : unmarks[i];
      marking.marked[leg] = false;
    }
  }

  if (!is_compatible(marginal, marking)) {
    throw InconsistencyError("marking_from_flow: constructed marking is not compatible with the counts");
  }
  if (crossings(fatten(g), marking) != flow.value) {
    throw InconsistencyError("marking_from_flow: crossings differ from the flow value " + std::to_string(flow.value));
  }
  return marking;
}

}  // namespace arealaw
