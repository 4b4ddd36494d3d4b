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

#include <optional>
#include <string_view>

#include "arealaw/graph.hpp"

namespace arealaw {

/// Marchenko-Pastur (free Poisson) law pi_c: an atom of mass max(1-c, 0) at
/// zero plus density sqrt(4c - (x-1-c)^2) / (2 pi x) on
/// [1+c-2 sqrt(c), 1+c+2 sqrt(c)]. Mean c.
struct MPParams {
  double c = 1.0;

  [[nodiscard]] double lower() const;
  [[nodiscard]] double upper() const;
  [[nodiscard]] double atom() const;
  /// Absolutely continuous part; zero outside the support.
  [[nodiscard]] double density(double x) const;
};

/// p-th moment of pi_c, sum over NC(p) of c^{#blocks} (Narayana form).
/// Requires 1 <= p <= 8.
double mp_moment(double c, int p);

/// Integral of x ln x against pi_c:
///   1/2 + c ln c  for c >= 1,
///   c^2 / 2       for 0 < c < 1.
double mp_xlogx(double c);

/// Asymptotic mean entanglement entropy (nats) of the smaller side of a
/// random bipartite pure state: ln(D_min) - D_min / (2 D_max). Symmetric in
/// its arguments. Both dimensions must be at least 2.
double page_entropy(long long dim_system, long long dim_environment);

enum class PredictionCase {
  adapted,
  single_loop,
  one_vertex,
  black_hole_1,
  black_hole_2,
  oxygen_1,
  oxygen_2,
  generic,
};

std::string_view to_string(PredictionCase c);

/// E H(rho_S) = area ln N + offset - correction + o(1).
struct EntropyPrediction {
  PredictionCase label = PredictionCase::generic;
  int area = 0;
  double offset_nats = 0.0;
  /// Unknown for generic marginals.
  std::optional<double> correction_nats;
  /// True only for adapted marginals, where the value holds at every N.
  bool exact = false;
  /// One-vertex case: |T'| + |G| taken literally, for comparison with area.
  std::optional<int> literal_environment;
  /// Max-flow value of the marginal's network.
  int flow_value = 0;

  /// Leading term area ln N + offset.
  [[nodiscard]] double leading(long long n) const;
  /// Leading term minus the correction (zero when unknown).
  [[nodiscard]] double value(long long n) const;
};

/// Dispatches in priority order: adapted, single loop, one surviving (or one
/// traced) vertex, black-hole / oxygen templates, generic. Template matching
/// is structural and also tries the complementary marginal. Requires N >= 2.
EntropyPrediction predict_entropy(const Marginal& marginal, long long n);

/// The limit constant h entering E H = area ln N + offset - h, computed
/// through mp_xlogx after rescaling. `surviving_ratio` and `traced_ratio`
/// are the products of dimension ratios on the two sides at leading order.
/// Zero for adapted and unbalanced one-vertex cases; throws ValidationError
/// for generic.
double limit_correction(PredictionCase c, double surviving_ratio, double traced_ratio);

}  // namespace arealaw
