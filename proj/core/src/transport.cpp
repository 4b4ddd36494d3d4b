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

#include "arealaw/transport.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "arealaw/errors.hpp"
#include "arealaw/flow.hpp"
#include "json.hpp"

namespace arealaw {

namespace {

using nlohmann::json;

const json& require(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

int require_count(const json& value, const std::string& where) {
  if (!value.is_number_integer()) throw ParseError(where + ": must be an integer");
  const auto x = value.get<long long>();
  if (x < 0) throw ValidationError(where + ": must be non-negative, got " + std::to_string(x));
  if (x > 1'000'000) throw ValidationError(where + ": value " + std::to_string(x) + " is too large");
  return static_cast<int>(x);
}

std::size_t site_index(const TransportInstance& inst, const std::string& id, const std::string& where) {
  const auto it = std::find(inst.facilities.begin(), inst.facilities.end(), id);
  if (it == inst.facilities.end()) throw ValidationError(where + ": unknown site \"" + id + "\"");
  return static_cast<std::size_t>(it - inst.facilities.begin());
}

std::vector<int> edge_degrees(const TransportInstance& inst) {
  std::vector<int> deg(inst.facilities.size(), 0);
  for (const auto& p : inst.pairs) {
    deg[site_index(inst, p.a, "pair")] += p.count;
    deg[site_index(inst, p.b, "pair")] += p.count;
  }
  return deg;
}

}  // namespace

TransportInstance parse_transport_instance(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed instance document: ") + e.what());
  }
  TransportInstance inst;
  const auto& facilities = require(doc, "facilities", "instance document");
  if (!facilities.is_array()) throw ParseError("instance document: \"facilities\" must be an array");
  for (const auto& f : facilities) {
    if (!f.is_string()) throw ParseError("facilities: site ids must be strings");
    const auto id = f.get<std::string>();
    if (std::find(inst.facilities.begin(), inst.facilities.end(), id) != inst.facilities.end()) {
      throw ValidationError("facilities: duplicate site \"" + id + "\"");
    }
    inst.facilities.push_back(id);
  }

  if (doc.contains("pairs")) {
    const auto& pairs = doc.at("pairs");
    if (!pairs.is_array()) throw ParseError("instance document: \"pairs\" must be an array");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      const std::string where = "pair " + std::to_string(i);
      const auto& a = require(pairs[i], "a", where);
      const auto& b = require(pairs[i], "b", where);
      if (!a.is_string() || !b.is_string()) throw ParseError(where + ": site ids must be strings");
      SharedPairs p{a.get<std::string>(), b.get<std::string>(), require_count(require(pairs[i], "count", where), where + ".count")};
      site_index(inst, p.a, where);
      site_index(inst, p.b, where);
      if (p.a == p.b) throw ValidationError(where + ": a site cannot share pairs with itself (\"" + p.a + "\")");
      inst.pairs.push_back(std::move(p));
    }
  }

  const auto& quotas = require(doc, "quotas", "instance document");
  if (!quotas.is_object()) throw ParseError("instance document: \"quotas\" must be an object");
  for (const auto& [key, value] : quotas.items()) site_index(inst, key, "quotas");
  for (const auto& id : inst.facilities) {
    if (!quotas.contains(id)) throw ValidationError("quotas: missing entry for site \"" + id + "\"");
    const auto& q = quotas.at(id);
    const std::string where = "quotas." + id;
    inst.quotas.push_back(Quota{require_count(require(q, "A", where), where + ".A"),
                                require_count(require(q, "B", where), where + ".B")});
  }

  if (doc.contains("N")) {
    const auto& n = doc.at("N");
    if (!n.is_number_integer() || n.get<long long>() < 1) throw ValidationError("N must be a positive integer");
    inst.n = n.get<long long>();
  }
  return inst;
}

Marginal to_marginal(const TransportInstance& instance) {
  const auto deg = edge_degrees(instance);
  std::vector<std::string> vertices;
  std::map<std::string, int> counts;
  std::vector<int> pads(instance.facilities.size(), 0);
  for (std::size_t i = 0; i < instance.facilities.size(); ++i) {
    const auto& id = instance.facilities[i];
    const auto& q = instance.quotas[i];
    const int deficit = q.to_a + q.to_b - deg[i];
    if (deficit < 0) {
      throw FeasibilityError("site \"" + id + "\" holds " + std::to_string(deg[i]) + " shared particles but its quotas ship only " +
                             std::to_string(q.to_a + q.to_b) + "; every particle must be shipped");
    }
    if (deficit % 2 != 0) {
      throw FeasibilityError("site \"" + id + "\" has an odd deficit of " + std::to_string(deficit) +
                             " particles; local pair creation only produces particles in pairs");
    }
    pads[i] = deficit / 2;
    if (q.to_a + q.to_b == 0) continue;
    vertices.push_back(id);
    counts[id] = q.to_a;
  }
  if (vertices.empty()) throw ValidationError("instance ships no particles");

  std::vector<EdgeSpec> edges;
  for (const auto& p : instance.pairs)
    for (int k = 0; k < p.count; ++k) edges.push_back(EdgeSpec{p.a, p.b, 1});
  for (std::size_t i = 0; i < instance.facilities.size(); ++i)
    for (int k = 0; k < pads[i]; ++k) edges.push_back(EdgeSpec{instance.facilities[i], instance.facilities[i], 1});

  const auto graph = Graph::create(std::move(vertices), edges);
  return resolve_trace(graph, TraceSpec::from_counts(std::move(counts)));
}

Scenarios scenarios(const TransportInstance& instance) {
  const auto marginal = to_marginal(instance);
  Scenarios y;
  int total_a = 0;
  int total_b = 0;
  for (const auto& q : instance.quotas) {
    y.y1 += std::min(q.to_a, q.to_b);
    total_a += q.to_a;
    total_b += q.to_b;
  }
  y.y2 = std::min(total_a, total_b);
  y.y3 = max_flow(build_network(marginal)).value;
  return y;
}

RoutingPlan routing(const TransportInstance& instance) {
  auto marginal = to_marginal(instance);
  const auto flow = max_flow(build_network(marginal));
  auto marking = marking_from_flow(marginal, flow);
  const auto& g = marginal.graph();

  RoutingPlan plan{marginal, marking, crossings(fatten(g), marking), {}};
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    SiteRouting site;
    site.site = g.vertex_id(v);
    const auto legs = g.legs_of(v);
    site.legs.assign(legs.begin(), legs.end());
    const auto t = static_cast<std::size_t>(marginal.traced(v));
    std::size_t next_b = 0;
    std::size_t next_a = t;
    for (auto leg : site.legs) {
      site.pad.push_back(g.edges()[g.leg(leg).edge].is_loop());
      const bool to_a = marking.marked[leg];
      site.ship.push_back(to_a ? Destination::a : Destination::b);
      site.target.push_back(to_a ? next_a++ : next_b++);
    }
    plan.sites.push_back(std::move(site));
  }
  return plan;
}

Certificate certify(const TransportInstance& instance, long long n, int haar_samples, std::uint64_t seed,
                    const SimulationLimits& limits) {
  if (n < 2) throw ValidationError("certificate needs N >= 2");
  const auto plan = routing(instance);
  const auto& marginal = plan.marginal;
  const auto& g = marginal.graph();

  Certificate cert;
  cert.n = n;
  cert.y3 = max_flow(build_network(marginal)).value;
  cert.expected_rank = 1;
  for (int k = 0; k < cert.y3; ++k) cert.expected_rank *= n;

  BuildOptions options;
  options.limits = limits;
  VertexUnitaries perms;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const auto& site = plan.sites[v];
    std::vector<long long> dims;
    for (auto leg : site.legs) dims.push_back(g.leg(leg).ratio * n);
    perms[v] = tensor_factor_permutation(dims, site.target);
  }
  auto unused = make_stream(seed, 0);
  const auto psi = build_pure_state(marginal, n, perms, unused, options);
  const auto report = spectral_report(reduced_spectrum(psi), {0.0, 1.0, 2.0});
  cert.rank = report.rank;
  cert.renyi = report.renyi;
  const double level = 1.0 / static_cast<double>(cert.expected_rank);
  for (long long k = 0; k < report.rank; ++k) {
    cert.max_eigenvalue_deviation =
        std::max(cert.max_eigenvalue_deviation, std::abs(report.eigenvalues[static_cast<std::size_t>(k)] - level));
  }

  if (cert.rank != cert.expected_rank) {
    throw InconsistencyError("certificate: permutation-routed state has rank " + std::to_string(cert.rank) +
                             ", flow predicts " + std::to_string(cert.expected_rank));
  }
  if (cert.max_eigenvalue_deviation > certificate_tolerance) {
    throw InconsistencyError("certificate: spectrum deviates from uniform by " +
                             std::to_string(cert.max_eigenvalue_deviation));
  }
  const double expected_h = cert.y3 * std::log(static_cast<double>(n));
  for (const auto& [q, h] : cert.renyi) {
    if (std::abs(h - expected_h) > certificate_tolerance) {
      throw InconsistencyError("certificate: H_" + std::to_string(static_cast<int>(q)) + " = " + std::to_string(h) +
                               ", expected " + std::to_string(expected_h));
    }
  }

  double sum_h = 0.0;
  for (int i = 0; i < haar_samples; ++i) {
    auto stream = make_stream(seed, static_cast<std::uint64_t>(i) + 1);
    const auto sample = build_pure_state(marginal, n, {}, stream, options);
    const auto r = spectral_report(reduced_spectrum(sample), {});
    cert.haar_ranks.push_back(r.rank);
    sum_h += r.von_neumann;
    if (r.rank > cert.expected_rank) {
      throw InconsistencyError("certificate: Haar sample " + std::to_string(i) + " has rank " +
                               std::to_string(r.rank) + " above the flow bound " +
                               std::to_string(cert.expected_rank));
    }
  }
  if (haar_samples > 0) cert.haar_mean_h = sum_h / haar_samples;
  return cert;
}

}  // namespace arealaw
