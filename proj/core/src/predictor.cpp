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

#include "arealaw/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include "arealaw/errors.hpp"
#include "arealaw/flow.hpp"

namespace arealaw {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

double ratio_product(const Graph& g, const std::vector<LegId>& legs) {
  double total = 1.0;
  for (auto leg : legs) total *= g.leg(leg).ratio;
  return total;
}

// Correction for a balanced split whose two sides have ratio products
// `a` and `b`: ln(min) - [ln(c a) - h_c / c] with c = b / a.
double balanced_correction(double a, double b) {
  const double c = b / a;
  return std::log(std::min(a, b)) - std::log(c * a) + mp_xlogx(c) / c;
}

std::optional<EntropyPrediction> match_one_vertex(const Marginal& m) {
  const auto& g = m.graph();
  std::optional<VertexIndex> alive;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (m.surviving(v) == 0) continue;
    if (alive) return std::nullopt;
    alive = v;
  }
  if (!alive) return std::nullopt;
  const auto v = *alive;

  std::vector<LegId> s_legs;
  std::vector<LegId> t_legs;
  std::vector<LegId> g_legs;
  for (auto leg : g.legs_of(v)) {
    (m.is_traced(leg) ? t_legs : s_legs).push_back(leg);
    if (!g.edges()[g.leg(leg).edge].is_loop()) g_legs.push_back(leg);
  }
  const int s = static_cast<int>(s_legs.size());
  const int env = static_cast<int>(t_legs.size() + g_legs.size());
  const double d_s = ratio_product(g, s_legs);
  const double d_env = ratio_product(g, t_legs) * ratio_product(g, g_legs);

  EntropyPrediction p;
  p.label = PredictionCase::one_vertex;
  p.literal_environment = env;
  if (s < env) {
    p.area = s;
    p.offset_nats = std::log(d_s);
    p.correction_nats = 0.0;
  } else if (s > env) {
    p.area = env;
    p.offset_nats = std::log(d_env);
    p.correction_nats = 0.0;
  } else {
    p.area = s;
    p.offset_nats = std::log(std::min(d_s, d_env));
    p.correction_nats = limit_correction(PredictionCase::one_vertex, d_s, d_env);
  }
  return p;
}

// Leg of `v` on edge `e`.
LegId leg_at(const Graph& g, std::size_t e, VertexIndex v) {
  return g.edges()[e].u == v ? 2 * e : 2 * e + 1;
}

std::optional<EntropyPrediction> match_black_hole(const Marginal& m) {
  const auto& g = m.graph();
  if (g.vertex_count() != 3 || g.edge_count() != 2) return std::nullopt;
  std::optional<VertexIndex> middle;
  for (VertexIndex v = 0; v < 3; ++v) {
    if (g.degree(v) == 2) middle = v;
  }
  if (!middle) return std::nullopt;
  const auto mid = *middle;
  for (const auto& e : g.edges()) {
    if (e.is_loop() || (e.u != mid && e.v != mid)) return std::nullopt;
  }
  if (m.surviving(mid) != 1) return std::nullopt;
  // Leaves: one traced, one surviving.
  std::optional<std::size_t> traced_edge;
  std::optional<std::size_t> surviving_edge;
  for (std::size_t e = 0; e < 2; ++e) {
    const auto& edge = g.edges()[e];
    const auto leaf = edge.u == mid ? edge.v : edge.u;
    if (m.surviving(leaf) == 0) traced_edge = e;
    else surviving_edge = e;
  }
  if (!traced_edge || !surviving_edge) return std::nullopt;

  const double d_t = g.edges()[*traced_edge].ratio;
  const double d_s = g.edges()[*surviving_edge].ratio;
  EntropyPrediction p;
  p.area = 2;
  if (m.is_traced(leg_at(g, *traced_edge, mid))) {
    p.label = PredictionCase::black_hole_1;
    p.offset_nats = 2.0 * std::log(std::min(d_t, d_s));
    p.correction_nats = limit_correction(p.label, d_s * d_s, d_t * d_t);
  } else {
    p.label = PredictionCase::black_hole_2;
    p.offset_nats = std::log(d_t * d_s);
    p.correction_nats = limit_correction(p.label, d_t * d_s, d_t * d_s);
  }
  return p;
}

std::optional<EntropyPrediction> match_oxygen(const Marginal& m) {
  const auto& g = m.graph();
  if (g.vertex_count() != 2 || g.edge_count() != 2) return std::nullopt;
  for (const auto& e : g.edges()) {
    if (e.is_loop()) return std::nullopt;
  }
  if (m.surviving(0) != 1 || m.surviving(1) != 1) return std::nullopt;
  const auto traced = m.traced_legs();
  const auto e0 = g.leg(traced[0]).edge;
  const auto e1 = g.leg(traced[1]).edge;
  EntropyPrediction p;
  p.area = 2;
  if (e0 == e1) {
    const double d_t = g.edges()[e0].ratio;
    const double d_s = g.edges()[1 - e0].ratio;
    p.label = PredictionCase::oxygen_1;
    p.offset_nats = 2.0 * std::log(std::min(d_t, d_s));
    p.correction_nats = limit_correction(p.label, d_s * d_s, d_t * d_t);
  } else {
    const double d1 = g.edges()[0].ratio;
    const double d2 = g.edges()[1].ratio;
    p.label = PredictionCase::oxygen_2;
    p.offset_nats = std::log(d1 * d2);
    p.correction_nats = limit_correction(p.label, d1 * d2, d1 * d2);
  }
  return p;
}

}  // namespace

double MPParams::lower() const { return 1.0 + c - 2.0 * std::sqrt(c); }
double MPParams::upper() const { return 1.0 + c + 2.0 * std::sqrt(c); }
double MPParams::atom() const { return std::max(1.0 - c, 0.0); }

double MPParams::density(double x) const {
  if (x <= lower() || x >= upper() || x <= 0.0) return 0.0;
  const double u = x - 1.0 - c;
  return std::sqrt(4.0 * c - u * u) / (2.0 * std::numbers::pi * x);
}

double mp_moment(double c, int p) {
  if (p < 1 || p > 8) throw ValidationError("mp_moment: p must be in [1, 8]");
  // Narayana numbers count NC(p) by block number.
  double total = 0.0;
  for (int k = 1; k <= p; ++k) total += binomial(p, k) * binomial(p, k - 1) / p * std::pow(c, k);
  return total;
}

double mp_xlogx(double c) {
  if (!(c > 0.0)) throw ValidationError("mp_xlogx: c must be positive");
  return c >= 1.0 ? 0.5 + c * std::log(c) : 0.5 * c * c;
}

double page_entropy(long long dim_system, long long dim_environment) {
  if (dim_system < 2 || dim_environment < 2) throw ValidationError("page_entropy: dimensions must be at least 2");
  const auto small = static_cast<double>(std::min(dim_system, dim_environment));
  const auto large = static_cast<double>(std::max(dim_system, dim_environment));
  // Symmetric by construction: the rescaled law is always taken with c >= 1.
  const double c = large / small;
  return std::log(c * small) - mp_xlogx(c) / c;
}

std::string_view to_string(PredictionCase c) {
  switch (c) {
    case PredictionCase::adapted: return "adapted";
    case PredictionCase::single_loop: return "single_loop";
    case PredictionCase::one_vertex: return "one_vertex";
    case PredictionCase::black_hole_1: return "black_hole_1";
    case PredictionCase::black_hole_2: return "black_hole_2";
    case PredictionCase::oxygen_1: return "oxygen_1";
    case PredictionCase::oxygen_2: return "oxygen_2";
    case PredictionCase::generic: return "generic";
  }
  return "?";
}

double EntropyPrediction::leading(long long n) const {
  return area * std::log(static_cast<double>(n)) + offset_nats;
}

double EntropyPrediction::value(long long n) const { return leading(n) - correction_nats.value_or(0.0); }

double limit_correction(PredictionCase c, double surviving_ratio, double traced_ratio) {
  switch (c) {
    case PredictionCase::adapted: return 0.0;
    case PredictionCase::generic: throw ValidationError("no known limit measure for a generic marginal");
    default: break;
  }
  if (!(surviving_ratio > 0.0) || !(traced_ratio > 0.0)) throw ValidationError("limit_correction: ratios must be positive");
  return balanced_correction(surviving_ratio, traced_ratio);
}

EntropyPrediction predict_entropy(const Marginal& marginal, long long n) {
  if (n < 2) throw ValidationError("N must be at least 2");
  const auto& g = marginal.graph();
  const int flow = max_flow(build_network(marginal)).value;

  EntropyPrediction p;
  if (is_adapted(marginal)) {
    p.label = PredictionCase::adapted;
    p.exact = true;
    p.correction_nats = 0.0;
    for (std::size_t e = 0; e < g.edge_count(); ++e) {
      if (marginal.is_traced(2 * e) != marginal.is_traced(2 * e + 1)) {
        ++p.area;
        p.offset_nats += std::log(static_cast<double>(g.edges()[e].ratio));
      }
    }
  } else if (g.vertex_count() == 1 && g.edge_count() == 1 && marginal.surviving(0) == 1) {
    const double d = g.edges()[0].ratio;
    p.label = PredictionCase::single_loop;
    p.area = 1;
    p.offset_nats = std::log(d);
    p.correction_nats = limit_correction(p.label, d, d);
  } else if (auto one = match_one_vertex(marginal)) {
    p = *one;
  } else if (auto one_c = match_one_vertex(marginal.complement())) {
    p = *one_c;
  } else if (auto bh = match_black_hole(marginal)) {
    p = *bh;
  } else if (auto ox = match_oxygen(marginal)) {
    p = *ox;
  } else {
    p.label = PredictionCase::generic;
    p.area = flow;
  }
  p.flow_value = flow;
  if (p.area != flow) {
    throw InconsistencyError("predicted area " + std::to_string(p.area) + " differs from the max-flow value " +
                             std::to_string(flow));
  }
  return p;
}

}  // namespace arealaw
