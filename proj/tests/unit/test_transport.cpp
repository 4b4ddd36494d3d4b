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

#include <cmath>

#include "arealaw/errors.hpp"
#include "arealaw/flow.hpp"
#include "arealaw/transport.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace arealaw;
using arealaw::testing::random_instance;
using arealaw::testing::read_data;

namespace {

TransportInstance instance(const char* name) { return parse_transport_instance(read_data(name)); }

}  // namespace

TEST_CASE("parse_transport_instance") {
  const auto inst = instance("transport_black_hole.json");
  CHECK(inst.facilities == std::vector<std::string>{"L", "M", "R"});
  REQUIRE(inst.pairs.size() == 2);
  CHECK(inst.pairs[1].a == "M");
  CHECK(inst.quotas[1].to_a == 2);
  CHECK(inst.n == 2);

  CHECK_THROWS_AS(parse_transport_instance("{"), ParseError);
  CHECK_THROWS_AS(parse_transport_instance(R"({"facilities":["a"],"quotas":{}})"), ValidationError);
  CHECK_THROWS_AS(parse_transport_instance(R"({"facilities":["a"],"quotas":{"a":{"A":1,"B":1},"b":{"A":0,"B":0}}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_transport_instance(
                      R"({"facilities":["a"],"pairs":[{"a":"a","b":"a","count":1}],"quotas":{"a":{"A":1,"B":1}}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_transport_instance(
                      R"({"facilities":["a","b"],"pairs":[{"a":"a","b":"c","count":1}],"quotas":{"a":{"A":1,"B":1},"b":{"A":1,"B":0}}})"),
                  ValidationError);
  CHECK_THROWS_AS(parse_transport_instance(R"({"facilities":["a"],"quotas":{"a":{"A":-1,"B":1}}})"), ValidationError);
  CHECK_THROWS_AS(parse_transport_instance(R"({"facilities":["a","a"],"quotas":{"a":{"A":1,"B":1}}})"), ValidationError);
}

TEST_CASE("to_marginal") {
  const auto single = to_marginal(instance("transport_single_edge.json"));
  CHECK(single.graph().vertex_count() == 2);
  CHECK(single.graph().edge_count() == 1);
  CHECK(single.surviving_counts() == std::vector<int>{1, 0});

  TransportInstance alone{{"x"}, {}, {{1, 1}}, 2};
  const auto pad = to_marginal(alone);
  CHECK(pad.graph().edge_count() == 1);
  CHECK(pad.graph().edges()[0].is_loop());
  CHECK(pad.surviving(0) == 1);

  CHECK_THROWS_AS(to_marginal(instance("transport_odd_deficit.json")), FeasibilityError);
  TransportInstance short_quota{{"a", "b"}, {{"a", "b", 2}}, {{1, 0}, {1, 1}}, 2};
  CHECK_THROWS_AS(to_marginal(short_quota), FeasibilityError);

  // Sites without particles are dropped.
  TransportInstance idle{{"a", "b", "c"}, {{"a", "b", 1}}, {{1, 0}, {0, 1}, {0, 0}}, 2};
  CHECK(to_marginal(idle).graph().vertex_count() == 2);
}

TEST_CASE("scenarios") {
  const auto a = scenarios(instance("transport_single_edge.json"));
  CHECK((a.y1 == 0 && a.y2 == 1 && a.y3 == 1));
  const auto b = scenarios(instance("transport_isolated.json"));
  CHECK((b.y1 == 0 && b.y2 == 2 && b.y3 == 0));
  const auto c = scenarios(instance("transport_doubled_edge.json"));
  CHECK((c.y1 == 2 && c.y2 == 2 && c.y3 == 2));
}

TEST_CASE("scenario ordering on random instances") {
  std::mt19937_64 rng(7);
  bool lower_gap = false;
  bool upper_gap = false;
  for (int i = 0; i < 500; ++i) {
    const auto inst = random_instance(rng);
    const auto y = scenarios(inst);
    CHECK(y.y1 <= y.y3);
    CHECK(y.y3 <= y.y2);
    lower_gap = lower_gap || y.y1 < y.y3;
    upper_gap = upper_gap || y.y3 < y.y2;
  }
  CHECK(lower_gap);
  CHECK(upper_gap);
}

TEST_CASE("routing") {
  const auto single = routing(instance("transport_single_edge.json"));
  REQUIRE(single.sites.size() == 2);
  CHECK(single.sites[0].ship == std::vector<Destination>{Destination::a});
  CHECK(single.sites[1].ship == std::vector<Destination>{Destination::b});
  CHECK(single.crossings == 1);

  TransportInstance alone{{"x"}, {}, {{1, 1}}, 2};
  const auto pad = routing(alone);
  REQUIRE(pad.sites[0].ship.size() == 2);
  CHECK(pad.sites[0].ship[0] != pad.sites[0].ship[1]);
  CHECK(pad.sites[0].pad == std::vector<bool>{true, true});

  const auto bh = routing(instance("transport_black_hole.json"));
  CHECK(bh.sites[1].site == "M");
  CHECK(bh.sites[1].ship == std::vector<Destination>{Destination::a, Destination::a});
  CHECK(bh.crossings == 2);
}

TEST_CASE("routing respects quotas and realizes Y3") {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 200; ++i) {
    const auto inst = random_instance(rng);
    const auto plan = routing(inst);
    CHECK(plan.crossings == scenarios(inst).y3);
    for (const auto& site : plan.sites) {
      const auto idx = static_cast<std::size_t>(
          std::find(inst.facilities.begin(), inst.facilities.end(), site.site) - inst.facilities.begin());
      const auto to_a = std::count(site.ship.begin(), site.ship.end(), Destination::a);
      CHECK(to_a == inst.quotas[idx].to_a);
      CHECK(static_cast<int>(site.ship.size()) - to_a == inst.quotas[idx].to_b);
      // A slots are the last ones.
      for (std::size_t k = 0; k < site.ship.size(); ++k)
        CHECK((site.target[k] >= site.ship.size() - static_cast<std::size_t>(to_a)) == (site.ship[k] == Destination::a));
    }
  }
}

TEST_CASE("certificates") {
  const auto single = certify(instance("transport_single_edge.json"), 2);
  CHECK(single.rank == 2);
  CHECK(single.max_eigenvalue_deviation <= 1e-9);
  for (const auto& [q, h] : single.renyi) CHECK(h == doctest::Approx(std::log(2.0)));
  CHECK(single.haar_ranks.size() == 50);

  const auto none = certify(instance("transport_isolated.json"), 2);
  CHECK(none.rank == 1);
  for (const auto& [q, h] : none.renyi) CHECK(std::abs(h) <= 1e-12);

  const auto doubled = certify(instance("transport_doubled_edge.json"), 2);
  CHECK(doubled.rank == 4);
  CHECK(doubled.expected_rank == 4);

  const auto bh = certify(instance("transport_black_hole.json"), 3, 10, 1);
  CHECK(bh.rank == 9);
  for (auto r : bh.haar_ranks) CHECK(r <= 9);
}

TEST_CASE("certificates on random instances") {
  std::mt19937_64 rng(19);
  int done = 0;
  while (done < 30) {
    const auto inst = random_instance(rng);
    if (state_dimension(to_marginal(inst).graph(), 2) > (1U << 14)) continue;
    ++done;
    const auto cert = certify(inst, 2, 5, 3);
    CHECK(cert.rank == cert.expected_rank);
  }
}

TEST_CASE("random unitaries are near the flow bound") {
  for (const char* name : {"transport_single_edge.json", "transport_doubled_edge.json", "transport_black_hole.json"}) {
    const auto cert = certify(instance(name), 8, 20, 5);
    const double bound = cert.y3 * std::log(8.0);
    CAPTURE(name);
    CHECK(cert.haar_mean_h <= bound + 1e-9);
    CHECK(cert.haar_mean_h >= bound - 1.0);
  }
}
