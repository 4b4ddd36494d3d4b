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

#include <cstdint>
#include <utility>
#include <vector>

#include "arealaw/flow.hpp"
#include "arealaw/graph.hpp"

namespace arealaw {

/// The graph with every edge made disjoint: fat vertices are exactly the
/// legs, fat edge e joins legs 2e and 2e+1, and projection maps a leg back
/// to its vertex.
struct FattenedGraph {
  std::vector<std::pair<LegId, LegId>> edges;
  std::vector<VertexIndex> projection;

  [[nodiscard]] std::size_t vertex_count() const { return projection.size(); }
};

/// Subset of fat vertices. Marked legs are the surviving ones.
struct Marking {
  std::vector<bool> marked;

  [[nodiscard]] std::vector<LegId> marked_legs() const;
  friend bool operator==(const Marking&, const Marking&) = default;
};

struct AreaResult {
  int area = 0;
  Marking witness;
};

inline constexpr std::uint64_t default_combination_limit = 1'000'000;

FattenedGraph fatten(const Graph& graph);

/// Fat edges with exactly one marked endpoint.
int crossings(const FattenedGraph& fat, const Marking& marking);

/// |marked ∩ f^{-1}(v)| == s(v) for every vertex.
bool is_compatible(const Marginal& marginal, const Marking& marking);

/// The marking that marks exactly the marginal's surviving legs.
Marking marking_of(const Marginal& marginal);

/// Product over vertices of binom(deg(v), s(v)), saturating at UINT64_MAX.
std::uint64_t marking_space_size(const Marginal& marginal);

/// Maximum crossings over all compatible markings, by enumeration. The
/// witness is the first maximizer in enumeration order (vertices in document
/// order, the last vertex varying fastest, each vertex's leg subsets in
/// lexicographic order). Throws CombinatorialLimitError when the marking
/// space exceeds `combination_limit`.
AreaResult area_bruteforce(const Marginal& marginal,
                           std::uint64_t combination_limit = default_combination_limit);

/// Builds a compatible marking whose crossing count equals the flow value.
///
/// Uses the flow's minimum cut A: edges across the cut are marked on the
/// sink side only; inside A every vertex collects its s(v) marks one per
/// internal edge, and outside A every vertex collects its t(v) unmarked legs
/// one per internal edge. Both assignments are bipartite b-matchings solved
/// by max flow. Throws InconsistencyError if the flow does not belong to the
/// marginal's network.
Marking marking_from_flow(const Marginal& marginal, const FlowResult& flow);

}  // namespace arealaw
