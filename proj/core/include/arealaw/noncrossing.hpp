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

#include <boost/multiprecision/cpp_int.hpp>
#include <string>
#include <string_view>
#include <vector>

#include "arealaw/graph.hpp"

namespace arealaw {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Permutation of {0, ..., p-1} in one-line notation. Printed 1-based.
class Permutation {
 public:
  Permutation() = default;
  /// Throws std::invalid_argument if `images` is not a bijection.
  explicit Permutation(std::vector<int> images);

  static Permutation identity(int p);
  /// The full cycle i -> i+1 mod p.
  static Permutation full_cycle(int p);

  [[nodiscard]] int degree() const { return static_cast<int>(images_.size()); }
  [[nodiscard]] int operator()(int i) const { return images_[static_cast<std::size_t>(i)]; }
  [[nodiscard]] const std::vector<int>& images() const { return images_; }

  [[nodiscard]] Permutation inverse() const;
  /// Number of cycles, fixed points included.
  [[nodiscard]] int cycle_count() const;
  /// Block label of each point, blocks numbered by smallest element order.
  [[nodiscard]] std::vector<int> blocks() const;
  [[nodiscard]] std::string cycle_notation() const;

  /// (a * b)(i) = a(b(i)).
  friend Permutation operator*(const Permutation& a, const Permutation& b);
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<int> images_;
};

/// Refinement order on the cycle partitions: every cycle of `a` lies inside
/// a cycle of `b`.
bool refines(const Permutation& a, const Permutation& b);

/// #(beta) + #(beta^{-1} gamma_p) == p + 1.
bool is_geodesic(const Permutation& beta);

inline constexpr int max_enumeration_degree = 8;

/// All geodesic permutations of degree p (equivalently NC(p)), lexicographic
/// in one-line notation. Requires 1 <= p <= 8.
std::vector<Permutation> enumerate_nc(int p);

BigInt catalan(int p);

/// binom((length+1) p, p) / (length p + 1).
BigInt fuss_catalan(int p, int length);

/// Number of multichains sigma_1 <= ... <= sigma_length in NC(p), counted on
/// the lattice itself.
BigInt count_multichains(int p, int length);

/// Catalan(p)^k, the ceiling on the size of any B-set over k vertices.
BigInt catalan_bound(int p, int k);

/// One permutation per graph vertex, in vertex document order.
using PermutationTuple = std::vector<Permutation>;

/// Coefficient of N^{-X(p-1)} in the asymptotic p-th moment of the marginal:
///
///   sum over B of  prod_i dS_i^{#(gamma^{-1} beta_i)} dT_i^{#(beta_i)}
///                  prod_{i<j} dE_ij^{#(beta_i^{-1} beta_j) - p}
///                  prod_i dC_i^{-p}
///
/// where dS_i / dT_i are the products of surviving / traced leg ratios at
/// vertex i, dE_ij the product of ratios over edges joining i and j, and
/// dC_i the product over all legs of i.
Rational moment_from_B(const std::vector<PermutationTuple>& B, const Marginal& marginal, int p);

enum class WorkedCase { single_loop, black_hole, oxygen };

WorkedCase parse_worked_case(std::string_view label);
std::string_view to_string(WorkedCase c);

/// Explicit B-sets of the worked examples:
///   single_loop: (beta),           beta in NC(p)
///   black_hole:  (id, beta, gamma), vertices ordered traced leaf, middle, surviving leaf
///   oxygen:      (beta, beta)
std::vector<PermutationTuple> case_B(WorkedCase c, int p);

}  // namespace arealaw
