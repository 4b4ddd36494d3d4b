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

#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "arealaw/graph.hpp"
#include "arealaw/transport.hpp"

namespace arealaw::testing {

inline std::string data_path(const std::string& name) { return std::string(AREALAW_TEST_DATA) + "/" + name; }

inline std::string read_data(const std::string& name) {
  std::ifstream in(data_path(name));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline Marginal load(const std::string& name) { return parse_marginal(read_data(name)); }

inline Graph make_graph(int vertices, const std::vector<std::pair<int, int>>& edges, const std::vector<int>& ratios = {}) {
  std::vector<std::string> ids;
  for (int v = 0; v < vertices; ++v) ids.push_back("v" + std::to_string(v));
  std::vector<EdgeSpec> specs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    specs.push_back(EdgeSpec{ids[static_cast<std::size_t>(edges[i].first)], ids[static_cast<std::size_t>(edges[i].second)],
                             ratios.empty() ? 1 : ratios[i]});
  }
  return Graph::create(ids, specs);
}

inline Marginal with_counts(const Graph& g, const std::vector<int>& s) {
  std::map<std::string, int> counts;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) counts[g.vertex_id(v)] = s[v];
  return resolve_trace(g, TraceSpec::from_counts(counts));
}

/// Random multigraph (loops allowed, no isolated vertex) with a random
/// counting function.
inline Marginal random_marginal(std::mt19937_64& rng, int max_vertices, int max_edges, int max_ratio = 1) {
  for (;;) {
    const int k = std::uniform_int_distribution<int>(1, max_vertices)(rng);
    const int m = std::uniform_int_distribution<int>(1, max_edges)(rng);
    std::uniform_int_distribution<int> vertex(0, k - 1);
    std::uniform_int_distribution<int> ratio(1, max_ratio);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> ratios;
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < m; ++i) {
      const int a = vertex(rng);
      const int b = vertex(rng);
      edges.emplace_back(a, b);
      ratios.push_back(ratio(rng));
      ++deg[static_cast<std::size_t>(a)];
      ++deg[static_cast<std::size_t>(b)];
    }
    if (*std::min_element(deg.begin(), deg.end()) == 0) continue;
    std::vector<int> s;
    for (int d : deg) s.push_back(std::uniform_int_distribution<int>(0, d)(rng));
    return with_counts(make_graph(k, edges, ratios), s);
  }
}

/// Random feasible transport instance: up to 4 sites, at most 3 shared
/// pairs per site pair, quotas up to 4.
inline TransportInstance random_instance(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> quota(0, 4);
  std::uniform_int_distribution<int> count(0, 3);
  for (;;) {
    TransportInstance inst;
    const int k = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<int> deg(static_cast<std::size_t>(k), 0);
    for (int i = 0; i < k; ++i) inst.facilities.push_back("s" + std::to_string(i));
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j) {
        const int c = count(rng);
        if (c == 0) continue;
        inst.pairs.push_back(SharedPairs{inst.facilities[static_cast<std::size_t>(i)],
                                         inst.facilities[static_cast<std::size_t>(j)], c});
        deg[static_cast<std::size_t>(i)] += c;
        deg[static_cast<std::size_t>(j)] += c;
      }
    bool feasible = true;
    int total = 0;
    for (int i = 0; i < k; ++i) {
      const Quota q{quota(rng), quota(rng)};
      const int deficit = q.to_a + q.to_b - deg[static_cast<std::size_t>(i)];
      feasible = feasible && deficit >= 0 && deficit % 2 == 0;
      total += q.to_a + q.to_b;
      inst.quotas.push_back(q);
    }
    if (feasible && total > 0) return inst;
  }
}

}  // namespace arealaw::testing
