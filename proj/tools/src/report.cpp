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

#include "report.hpp"

#include <cstdio>

namespace arealaw::cli {

namespace {

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

json marginal_json(const Marginal& marginal) {
  const auto& g = marginal.graph();
  json doc;
  doc["vertices"] = g.vertex_ids();
  doc["edges"] = json::array();
  for (const auto& e : g.edge_specs()) doc["edges"].push_back({{"u", e.u}, {"v", e.v}, {"d", e.d}});
  if (marginal.legs_explicit()) {
    doc["trace"] = {{"mode", "legs"}, {"traced", marginal.traced_legs()}};
  } else {
    json s = json::object();
    for (VertexIndex v = 0; v < g.vertex_count(); ++v) s[g.vertex_id(v)] = marginal.surviving(v);
    doc["trace"] = {{"mode", "counts"}, {"s", s}};
  }
  return doc;
}

json flow_json(const Graph& graph, const FlowNetwork& network, const FlowResult& flow) {
  json paths = json::array();
  for (const auto& path : flow.paths) {
    json names = json::array();
    for (auto node : path) names.push_back(node_name(graph, network, node));
    paths.push_back(names);
  }
  json cut = json::array();
  for (NodeIndex node = 0; node < network.node_count(); ++node)
    if (flow.cut[node]) cut.push_back(node_name(graph, network, node));
  return {{"X", flow.value}, {"paths", paths}, {"cut", cut}, {"cut_tied", flow.cut_tied}};
}

json marking_json(const Marking& marking) { return marking.marked_legs(); }

json prediction_json(const EntropyPrediction& p) {
  json doc = {{"case", std::string(to_string(p.label))},
              {"leading_area", p.area},
              {"leading_offset_nats", p.offset_nats},
              {"correction_nats", nullptr},
              {"exact", p.exact}};
  if (p.correction_nats) doc["correction_nats"] = *p.correction_nats;
  return doc;
}

json mc_json(const MCReport& r) {
  json renyi = json::array();
  for (const auto& [q, h] : r.mean_renyi) renyi.push_back({{"q", q}, {"mean", h}});
  return {{"samples", r.samples},
          {"seed", r.seed},
          {"N", r.n},
          {"mean_H", r.mean_h},
          {"stderr_H", r.stderr_h},
          {"per_sample_H", r.per_sample_h},
          {"mean_renyi", renyi},
          {"trace_moments", r.trace_moments},
          {"ranks", r.ranks},
          {"dim_surviving", r.dim_surviving},
          {"dim_traced", r.dim_traced},
          {"skipped_traced_vertices", r.skipped_traced.size()},
          {"skipped_surviving_vertices", r.skipped_surviving.size()},
          {"wishart_path", r.wishart_path},
          {"numeric_note",
           "values are reproducible for identical inputs, seed and build; other platforms may differ in the last digits"}};
}

json instance_json(const TransportInstance& inst) {
  json pairs = json::array();
  for (const auto& p : inst.pairs) pairs.push_back({{"a", p.a}, {"b", p.b}, {"count", p.count}});
  json quotas = json::object();
  for (std::size_t i = 0; i < inst.facilities.size(); ++i) {
    quotas[inst.facilities[i]] = {{"A", inst.quotas[i].to_a}, {"B", inst.quotas[i].to_b}};
  }
  return {{"facilities", inst.facilities}, {"pairs", pairs}, {"quotas", quotas}, {"N", inst.n}};
}

json scenarios_json(const Scenarios& y) { return {{"Y1", y.y1}, {"Y2", y.y2}, {"Y3", y.y3}}; }

json plan_json(const RoutingPlan& plan) {
  json sites = json::array();
  for (const auto& s : plan.sites) {
    json legs = json::array();
    for (std::size_t k = 0; k < s.legs.size(); ++k) {
      legs.push_back({{"leg", s.legs[k]},
                      {"kind", s.pad[k] ? "pad" : "shared"},
                      {"ship", s.ship[k] == Destination::a ? "A" : "B"},
                      {"slot", s.target[k]}});
    }
    sites.push_back({{"site", s.site}, {"legs", legs}});
  }
  return {{"graph", marginal_json(plan.marginal)},
          {"marked_legs", marking_json(plan.marking)},
          {"crossings", plan.crossings},
          {"sites", sites}};
}

json certificate_json(const Certificate& c) {
  json renyi = json::array();
  for (const auto& [q, h] : c.renyi) renyi.push_back({{"q", q}, {"H", h}});
  return {{"N", c.n},
          {"Y3", c.y3},
          {"expected_rank", c.expected_rank},
          {"rank", c.rank},
          {"max_eigenvalue_deviation", c.max_eigenvalue_deviation},
          {"renyi", renyi},
          {"haar_ranks", c.haar_ranks},
          {"haar_mean_H", c.haar_mean_h},
          {"passed", true}};
}

json report_header(const std::string& command) {
  return {{"schema_version", schema_version}, {"command", command}};
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

void write_spectra_csv(std::ostream& out, const MCReport& report) {
  out << "sample,index,eigenvalue\n";
  for (std::size_t s = 0; s < report.spectra.size(); ++s)
    for (std::size_t i = 0; i < report.spectra[s].size(); ++i)
      out << s << ',' << i << ',' << format_double(report.spectra[s][i]) << '\n';
}

}  // namespace arealaw::cli
