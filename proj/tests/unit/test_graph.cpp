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

#include <string>

#include "arealaw/errors.hpp"
#include "arealaw/graph.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace arealaw;
using arealaw::testing::load;
using arealaw::testing::make_graph;
using arealaw::testing::with_counts;

namespace {

template <typename E, typename F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const E& e) {
    return e.what();
  }
  FAIL("expected exception");
  return {};
}

}  // namespace

TEST_CASE("smallest graph: one vertex with a loop") {
  const auto g = parse_graph(R"({"vertices":["V"],"edges":[{"u":"V","v":"V","d":1}]})");
  CHECK(g.vertex_count() == 1);
  CHECK(g.edge_count() == 1);
  CHECK(g.leg_count() == 2);
  CHECK(g.degree(0) == 2);
  CHECK(g.leg(0).side == Side::first);
  CHECK(g.leg(1).side == Side::second);
  CHECK(g.edges()[0].is_loop());
  CHECK(Graph::partner(0) == 1);
}

TEST_CASE("path graph leg numbering follows the edge list") {
  const auto g = parse_graph(R"({"vertices":["V1","V2","V3"],
    "edges":[{"u":"V1","v":"V2","d":3},{"u":"V2","v":"V3","d":5}]})");
  CHECK(g.vertex_count() == 3);
  CHECK(g.leg_count() == 4);
  CHECK(g.degree(1) == 2);
  CHECK(g.leg(0).vertex == 0);
  CHECK(g.leg(1).vertex == 1);
  CHECK(g.leg(2).vertex == 1);
  CHECK(g.leg(3).vertex == 2);
  CHECK(g.leg(1).ratio == 3);
  CHECK(g.leg(2).ratio == 5);
  CHECK(g.multiplicity(0, 1) == 1);
  CHECK(g.multiplicity(0, 2) == 0);
}

TEST_CASE("d defaults to 1") {
  const auto g = parse_graph(R"({"vertices":["a","b"],"edges":[{"u":"a","v":"b"}]})");
  CHECK(g.edges()[0].ratio == 1);
}

TEST_CASE("validation errors name the offending entity") {
  CHECK(error_of<ValidationError>([] {
          parse_graph(R"({"vertices":["V1"],"edges":[{"u":"V1","v":"W9"}]})");
        }).find("W9") != std::string::npos);
  CHECK(error_of<ValidationError>([] {
          parse_graph(R"({"vertices":["V1","V2"],"edges":[{"u":"V1","v":"V1"}]})");
        }).find("V2") != std::string::npos);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["V"],"edges":[{"u":"V","v":"V","d":0}]})"), ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["V","V"],"edges":[{"u":"V","v":"V"}]})"), ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["source"],"edges":[{"u":"source","v":"source"}]})"), ValidationError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[],"edges":[]})"), ValidationError);
}

TEST_CASE("malformed documents are parse errors") {
  CHECK_THROWS_AS(parse_graph("{"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["V"]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":["V"],"edges":[{"u":"V","v":"V","d":1.5}]})"), ParseError);
  CHECK_THROWS_AS(parse_graph(R"({"vertices":[1],"edges":[]})"), ParseError);
  CHECK_THROWS_AS(parse_marginal(R"({"vertices":["V"],"edges":[{"u":"V","v":"V"}]})"), ParseError);
  CHECK_THROWS_AS(parse_marginal(R"({"vertices":["V"],"edges":[{"u":"V","v":"V"}],"trace":{"mode":"x"}})"),
                  ParseError);
}

TEST_CASE("resolve_trace in counts mode") {
  const auto m = load("single_loop.json");
  CHECK(m.surviving(0) == 1);
  CHECK(m.traced(0) == 1);
  // Lowest-numbered legs are traced.
  CHECK(m.is_traced(0));
  CHECK_FALSE(m.is_traced(1));

  const auto two = load("two_loops.json");
  CHECK(two.traced_legs() == std::vector<LegId>{0, 1});
  CHECK(two.surviving_legs() == std::vector<LegId>{2, 3});
}

TEST_CASE("resolve_trace in legs mode derives counts") {
  const auto m = load("black_hole_1.json");
  CHECK(m.surviving(0) == 0);
  CHECK(m.surviving(1) == 1);
  CHECK(m.surviving(2) == 1);
  CHECK(m.legs_explicit());
  CHECK(m.traced_legs() == std::vector<LegId>{0, 1});
}

TEST_CASE("resolve_trace errors") {
  const auto g = make_graph(2, {{0, 1}, {0, 1}});
  CHECK_THROWS_AS(with_counts(g, {3, 0}), ValidationError);
  CHECK_THROWS_AS(with_counts(g, {-1, 0}), ValidationError);
  CHECK_THROWS_AS(resolve_trace(g, TraceSpec::from_counts({{"v0", 1}})), ValidationError);
  CHECK_THROWS_AS(resolve_trace(g, TraceSpec::from_counts({{"v0", 1}, {"v1", 1}, {"zz", 0}})), ValidationError);
  CHECK_THROWS_AS(resolve_trace(g, TraceSpec::from_legs({4})), ValidationError);
  CHECK_THROWS_AS(resolve_trace(g, TraceSpec::from_legs({1, 1})), ValidationError);
}

TEST_CASE("is_adapted") {
  CHECK(is_adapted(load("black_hole_adapted.json")));
  CHECK_FALSE(is_adapted(load("black_hole_1.json")));
  const auto g = make_graph(3, {{0, 1}, {1, 2}});
  CHECK(is_adapted(with_counts(g, {0, 0, 0})));
  CHECK(is_adapted(with_counts(g, {1, 2, 1})));
}

TEST_CASE("counts and legs views agree") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const auto m = arealaw::testing::random_marginal(rng, 4, 6);
    const auto& g = m.graph();
    CHECK(m.total_surviving() + m.total_traced() == static_cast<int>(g.leg_count()));
    // legs -> counts -> legs preserves every count.
    const auto via_legs = resolve_trace(g, m.legs_spec());
    const auto via_counts = resolve_trace(g, via_legs.counts_spec());
    CHECK(via_counts.surviving_counts() == m.surviving_counts());
    const auto comp = m.complement();
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) CHECK(comp.surviving(v) == m.traced(v));
  }
}

TEST_CASE("parsing is deterministic") {
  const auto text = arealaw::testing::read_data("adapted.json");
  const auto a = parse_graph(text);
  const auto b = parse_graph(text);
  REQUIRE(a.leg_count() == b.leg_count());
  for (LegId l = 0; l < a.leg_count(); ++l) {
    CHECK(a.leg(l).vertex == b.leg(l).vertex);
    CHECK(a.leg(l).edge == b.leg(l).edge);
  }
}
