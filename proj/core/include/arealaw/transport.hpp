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
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "arealaw/graph.hpp"
#include "arealaw/marking.hpp"
#include "arealaw/simulator.hpp"

namespace arealaw {

struct SharedPairs {
  std::string a;
  std::string b;
  int count = 0;
};

struct Quota {
  int to_a = 0;  // S_i
  int to_b = 0;  // T_i
};

struct TransportInstance {
  std::vector<std::string> facilities;
  std::vector<SharedPairs> pairs;
  /// Aligned with `facilities`.
  std::vector<Quota> quotas;
  long long n = 2;
};

/// Parses `{"facilities", "pairs", "quotas", "N"}`. Unknown sites, self
/// pairs, negative counts and missing quotas are rejected.
TransportInstance parse_transport_instance(std::string_view text);

/// Graph with one vertex per site (sites with no particles are dropped),
/// `count` parallel edges per pair in document order, then the pad loops.
/// Throws FeasibilityError when a site's deficit is negative or odd.
Marginal to_marginal(const TransportInstance& instance);

struct Scenarios {
  int y1 = 0;
  int y2 = 0;
  int y3 = 0;
};

Scenarios scenarios(const TransportInstance& instance);

enum class Destination { a, b };

struct SiteRouting {
  std::string site;
  /// The site's legs, ascending.
  std::vector<LegId> legs;
  std::vector<bool> pad;
  std::vector<Destination> ship;
  /// Tensor factor k (of `legs`) is relabeled to slot target[k]; B slots come
  /// first, A slots last.
  std::vector<std::size_t> target;
};

struct RoutingPlan {
  Marginal marginal;
  Marking marking;
  int crossings = 0;
  std::vector<SiteRouting> sites;
};

RoutingPlan routing(const TransportInstance& instance);

struct Certificate {
  long long n = 0;
  int y3 = 0;
  long long expected_rank = 0;
  long long rank = 0;
  double max_eigenvalue_deviation = 0.0;
  std::vector<std::pair<double, double>> renyi;
  std::vector<long long> haar_ranks;
  double haar_mean_h = 0.0;
};

inline constexpr double certificate_tolerance = 1e-9;

/// Builds the permutation-routed state and checks its spectrum, then samples
/// Haar unitaries and checks none exceeds the flow rank. Throws
/// InconsistencyError on any miss.
Certificate certify(const TransportInstance& instance, long long n, int haar_samples = 50,
                    std::uint64_t seed = 0, const SimulationLimits& limits = {});

}  // namespace arealaw
