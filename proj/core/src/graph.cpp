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

#include "arealaw/graph.hpp"

#include <algorithm>
#include <set>
#include <utility>

#include "arealaw/errors.hpp"
#include "json.hpp"

namespace arealaw {

namespace {

using nlohmann::json;

bool is_reserved(std::string_view id) { return id == "source" || id == "sink"; }

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed graph document: ") + e.what());
  }
}

const json& require(const json& obj, const char* key, const char* where) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ParseError(std::string(where) + ": missing field \"" + key + "\"");
  }
  return obj.at(key);
}

template <typename T>
T get_as(const json& value, const std::string& what) {
  try {
    return value.get<T>();
  } catch (const json::exception&) {
    throw ParseError(what + ": unexpected type " + std::string(value.type_name()));
  }
}

Graph graph_from_json(const json& doc) {
  const auto& vertices = require(doc, "vertices", "graph document");
  const auto& edges = require(doc, "edges", "graph document");
  if (!vertices.is_array()) throw ParseError("graph document: \"vertices\" must be an array");
  if (!edges.is_array()) throw ParseError("graph document: \"edges\" must be an array");

  std::vector<std::string> ids;
  ids.reserve(vertices.size());
  for (const auto& v : vertices) ids.push_back(get_as<std::string>(v, "vertex id"));

  std::vector<EdgeSpec> specs;
  specs.reserve(edges.size());
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& e = edges[i];
    const std::string where = "edge " + std::to_string(i);
    EdgeSpec spec;
    spec.u = get_as<std::string>(require(e, "u", where.c_str()), where + ".u");
    spec.v = get_as<std::string>(require(e, "v", where.c_str()), where + ".v");
    if (e.contains("d")) {
      if (!e.at("d").is_number_integer()) throw ParseError(where + ".d: must be an integer");
      spec.d = e.at("d").get<int>();
    }
    specs.push_back(std::move(spec));
  }
  return Graph::create(std::move(ids), specs);
}

std::optional<TraceSpec> trace_from_json(const json& doc) {
  if (!doc.is_object() || !doc.contains("trace")) return std::nullopt;
  const auto& trace = doc.at("trace");
  const auto mode = get_as<std::string>(require(trace, "mode", "trace"), "trace.mode");
  if (mode == "counts") {
    const auto& s = require(trace, "s", "trace");
    if (!s.is_object()) throw ParseError("trace.s must be an object");
    std::map<std::string, int> counts;
    for (const auto& [key, value] : s.items()) {
      if (!value.is_number_integer()) throw ParseError("trace.s." + key + ": must be an integer");
      counts[key] = value.get<int>();
    }
    return TraceSpec::from_counts(std::move(counts));
  }
  if (mode == "legs") {
    const auto& traced = require(trace, "traced", "trace");
    if (!traced.is_array()) throw ParseError("trace.traced must be an array");
    std::vector<LegId> legs;
    for (const auto& leg : traced) {
      if (!leg.is_number_integer() || leg.get<long long>() < 0) {
        throw ParseError("trace.traced: leg ids must be non-negative integers");
      }
      legs.push_back(leg.get<LegId>());
    }
    return TraceSpec::from_legs(std::move(legs));
  }
  throw ParseError("trace.mode: expected \"counts\" or \"legs\", got \"" + mode + "\"");
}

}  // namespace

Graph Graph::create(std::vector<std::string> vertex_ids, const std::vector<EdgeSpec>& edges) {
  if (vertex_ids.empty()) throw ValidationError("graph has no vertices");
  Graph g;
  g.ids_ = std::move(vertex_ids);
  for (VertexIndex i = 0; i < g.ids_.size(); ++i) {
    const auto& id = g.ids_[i];
    if (id.empty()) throw ValidationError("vertex " + std::to_string(i) + " has an empty id");
    if (is_reserved(id)) {
      throw ValidationError("vertex id \"" + id + "\" is reserved for the flow network");
    }
    if (!g.index_.emplace(id, i).second) {
      throw ValidationError("duplicate vertex id \"" + id + "\"");
    }
  }

  g.incident_.assign(g.ids_.size(), {});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const auto& spec = edges[e];
    const auto u = g.find_vertex(spec.u);
    if (!u) throw ValidationError("edge " + std::to_string(e) + " references undefined vertex \"" + spec.u + "\"");
    const auto v = g.find_vertex(spec.v);
    if (!v) throw ValidationError("edge " + std::to_string(e) + " references undefined vertex \"" + spec.v + "\"");
    if (spec.d <= 0) {
      throw ValidationError("edge " + std::to_string(e) + " has non-positive dimension ratio " +
                            std::to_string(spec.d));
    }
    g.edges_.push_back(Edge{*u, *v, spec.d});
    const LegId first = 2 * e;
    g.legs_.push_back(Leg{first, *u, e, Side::first, spec.d});
    g.legs_.push_back(Leg{first + 1, *v, e, Side::second, spec.d});
    g.incident_[*u].push_back(first);
    g.incident_[*v].push_back(first + 1);
  }

  for (VertexIndex i = 0; i < g.ids_.size(); ++i) {
    if (g.incident_[i].empty()) {
      throw ValidationError("vertex \"" + g.ids_[i] + "\" has degree 0");
    }
  }
  return g;
}

std::optional<VertexIndex> Graph::find_vertex(std::string_view id) const {
  const auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int Graph::multiplicity(VertexIndex u, VertexIndex v) const {
  if (u == v) return 0;
  return static_cast<int>(std::count_if(edges_.begin(), edges_.end(), [&](const Edge& e) {
    return (e.u == u && e.v == v) || (e.u == v && e.v == u);
  }));
}

std::vector<EdgeSpec> Graph::edge_specs() const {
  std::vector<EdgeSpec> out;
  out.reserve(edges_.size());
  for (const auto& e : edges_) out.push_back(EdgeSpec{ids_[e.u], ids_[e.v], e.ratio});
  return out;
}

Marginal::Marginal(Graph graph, std::vector<bool> traced_legs, bool legs_explicit)
    : graph_(std::move(graph)), traced_(std::move(traced_legs)), legs_explicit_(legs_explicit) {
  if (traced_.size() != graph_.leg_count()) {
    throw ValidationError("trace mask has " + std::to_string(traced_.size()) + " entries, graph has " +
                          std::to_string(graph_.leg_count()) + " legs");
  }
  surviving_.assign(graph_.vertex_count(), 0);
  for (const auto& leg : graph_.legs()) {
    if (!traced_[leg.id]) ++surviving_[leg.vertex];
  }
}

std::vector<LegId> Marginal::traced_legs() const {
  std::vector<LegId> out;
  for (LegId i = 0; i < traced_.size(); ++i)
    if (traced_[i]) out.push_back(i);
  return out;
}

std::vector<LegId> Marginal::surviving_legs() const {
  std::vector<LegId> out;
  for (LegId i = 0; i < traced_.size(); ++i)
    if (!traced_[i]) out.push_back(i);
  return out;
}

int Marginal::total_surviving() const {
  int total = 0;
  for (int s : surviving_) total += s;
  return total;
}

int Marginal::total_traced() const {
  return static_cast<int>(graph_.leg_count()) - total_surviving();
}

Marginal Marginal::complement() const {
  std::vector<bool> flipped(traced_.size());
  for (std::size_t i = 0; i < traced_.size(); ++i) flipped[i] = !traced_[i];
  return Marginal(graph_, std::move(flipped), legs_explicit_);
}

TraceSpec Marginal::counts_spec() const {
  std::map<std::string, int> counts;
  for (VertexIndex v = 0; v < graph_.vertex_count(); ++v) counts[graph_.vertex_id(v)] = surviving_[v];
  return TraceSpec::from_counts(std::move(counts));
}

TraceSpec Marginal::legs_spec() const { return TraceSpec::from_legs(traced_legs()); }

Graph parse_graph(std::string_view text) { return graph_from_json(parse_json(text)); }

std::optional<TraceSpec> parse_trace(std::string_view text) { return trace_from_json(parse_json(text)); }

Marginal resolve_trace(const Graph& graph, const TraceSpec& spec) {
  std::vector<bool> traced(graph.leg_count(), false);
  if (spec.mode == TraceSpec::Mode::counts) {
    for (const auto& [id, count] : spec.surviving) {
      if (!graph.find_vertex(id)) throw ValidationError("trace.s names unknown vertex \"" + id + "\"");
    }
    for (VertexIndex v = 0; v < graph.vertex_count(); ++v) {
      const auto& id = graph.vertex_id(v);
      const auto it = spec.surviving.find(id);
      if (it == spec.surviving.end()) throw ValidationError("trace.s has no count for vertex \"" + id + "\"");
      const int s = it->second;
      const int deg = graph.degree(v);
      if (s < 0 || s > deg) {
        throw ValidationError("surviving count " + std::to_string(s) + " for vertex \"" + id +
                              "\" is outside [0, " + std::to_string(deg) + "]");
      }
      // Lowest-numbered legs are the traced ones.
      const auto legs = graph.legs_of(v);
      for (int i = 0; i < deg - s; ++i) traced[legs[static_cast<std::size_t>(i)]] = true;
    }
    return Marginal(graph, std::move(traced), false);
  }

  for (LegId leg : spec.traced) {
    if (leg >= graph.leg_count()) {
      throw ValidationError("traced leg " + std::to_string(leg) + " does not exist (graph has " +
                            std::to_string(graph.leg_count()) + " legs)");
    }
    if (traced[leg]) throw ValidationError("traced leg " + std::to_string(leg) + " listed twice");
    traced[leg] = true;
  }
  return Marginal(graph, std::move(traced), true);
}

Marginal parse_marginal(std::string_view text) {
  const auto doc = parse_json(text);
  auto graph = graph_from_json(doc);
  const auto spec = trace_from_json(doc);
  if (!spec) throw ParseError("graph document: missing field \"trace\"");
  return resolve_trace(graph, *spec);
}

bool is_adapted(const Marginal& marginal) {
  const auto& g = marginal.graph();
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    const int s = marginal.surviving(v);
    if (s != 0 && s != g.degree(v)) return false;
  }
  return true;
}

}  // namespace arealaw
