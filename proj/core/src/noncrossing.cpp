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

#include "arealaw/noncrossing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "arealaw/errors.hpp"

namespace arealaw {

namespace {

void check_degree(int p) {
  if (p < 1) throw ValidationError("permutation degree must be positive, got " + std::to_string(p));
  if (p > max_enumeration_degree) {
    throw CombinatorialLimitError("permutation degree " + std::to_string(p) + " outside the enumeration guard [1, " +
                          std::to_string(max_enumeration_degree) + "]");
  }
}

BigInt binomial(int n, int k) {
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

Rational power(const BigInt& base, int exponent) {
  if (base == 0) throw ValidationError("zero dimension ratio");
  Rational r = 1;
  const Rational b(base);
  for (int i = 0; i < std::abs(exponent); ++i) r *= b;
  return exponent >= 0 ? r : Rational(1) / r;
}

}  // namespace

Permutation::Permutation(std::vector<int> images) : images_(std::move(images)) {
  std::vector<bool> hit(images_.size(), false);
  for (int x : images_) {
    if (x < 0 || static_cast<std::size_t>(x) >= images_.size() || hit[static_cast<std::size_t>(x)]) {
      throw std::invalid_argument("not a permutation");
    }
    hit[static_cast<std::size_t>(x)] = true;
  }
}

Permutation Permutation::identity(int p) {
  std::vector<int> images(static_cast<std::size_t>(p));
  std::iota(images.begin(), images.end(), 0);
  return Permutation(std::move(images));
}

Permutation Permutation::full_cycle(int p) {
  std::vector<int> images(static_cast<std::size_t>(p));
  for (int i = 0; i < p; ++i) images[static_cast<std::size_t>(i)] = (i + 1) % p;
  return Permutation(std::move(images));
}

Permutation Permutation::inverse() const {
  std::vector<int> inv(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) inv[static_cast<std::size_t>(images_[i])] = static_cast<int>(i);
  return Permutation(std::move(inv));
}

int Permutation::cycle_count() const {
  std::vector<bool> seen(images_.size(), false);
  int cycles = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    ++cycles;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) seen[j] = true;
  }
  return cycles;
}

std::vector<int> Permutation::blocks() const {
  std::vector<int> label(images_.size(), -1);
  int next = 0;
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (label[i] >= 0) continue;
    for (auto j = i; label[j] < 0; j = static_cast<std::size_t>(images_[j])) label[j] = next;
    ++next;
  }
  return label;
}

std::string Permutation::cycle_notation() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i]) continue;
    out += '(';
    bool first = true;
    for (auto j = i; !seen[j]; j = static_cast<std::size_t>(images_[j])) {
      seen[j] = true;
      if (!first) out += ' ';
      out += std::to_string(j + 1);
      first = false;
    }
    out += ')';
  }
  return out;
}

Permutation operator*(const Permutation& a, const Permutation& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("permutation degree mismatch");
  std::vector<int> images(a.images_.size());
  for (std::size_t i = 0; i < images.size(); ++i) images[i] = a(b(static_cast<int>(i)));
  return Permutation(std::move(images));
}

bool refines(const Permutation& a, const Permutation& b) {
  const auto outer = b.blocks();
  for (int i = 0; i < a.degree(); ++i) {
    if (outer[static_cast<std::size_t>(i)] != outer[static_cast<std::size_t>(a(i))]) return false;
  }
  return true;
}

bool is_geodesic(const Permutation& beta) {
  const int p = beta.degree();
  return beta.cycle_count() + (beta.inverse() * Permutation::full_cycle(p)).cycle_count() == p + 1;
}

std::vector<Permutation> enumerate_nc(int p) {
  check_degree(p);
  std::vector<int> images(static_cast<std::size_t>(p));
  std::iota(images.begin(), images.end(), 0);
  std::vector<Permutation> out;
  do {
    Permutation beta(images);
    if (is_geodesic(beta)) out.push_back(std::move(beta));
  } while (std::next_permutation(images.begin(), images.end()));
  return out;
}

BigInt catalan(int p) {
  if (p < 0) throw ValidationError("negative Catalan index");
  return binomial(2 * p, p) / (p + 1);
}

BigInt fuss_catalan(int p, int length) {
  if (p < 0 || length < 1) throw ValidationError("Fuss-Catalan requires p >= 0 and length >= 1");
  return binomial((length + 1) * p, p) / (length * p + 1);
}

BigInt count_multichains(int p, int length) {
  check_degree(p);
  if (length < 1) throw ValidationError("multichain length must be at least 1");
  const auto nc = enumerate_nc(p);
  const auto n = nc.size();
  std::vector<std::vector<std::size_t>> below(n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (refines(nc[i], nc[j])) below[j].push_back(i);

  // ending[j] = chains of the current length whose top element is nc[j].
  std::vector<BigInt> ending(n, 1);
  for (int len = 2; len <= length; ++len) {
    std::vector<BigInt> next(n, 0);
    for (std::size_t j = 0; j < n; ++j)
      for (auto i : below[j]) next[j] += ending[i];
    ending = std::move(next);
  }
  BigInt total = 0;
  for (const auto& c : ending) total += c;
  return total;
}

BigInt catalan_bound(int p, int k) {
  if (p < 1 || k < 1) throw ValidationError("catalan_bound requires p, k >= 1");
  return boost::multiprecision::pow(catalan(p), static_cast<unsigned>(k));
}

Rational moment_from_B(const std::vector<PermutationTuple>& B, const Marginal& marginal, int p) {
  const auto& g = marginal.graph();
  const auto k = g.vertex_count();

  std::vector<BigInt> d_s(k, 1);
  std::vector<BigInt> d_t(k, 1);
  std::vector<BigInt> d_c(k, 1);
  for (const auto& leg : g.legs()) {
    d_c[leg.vertex] *= leg.ratio;
    (marginal.is_traced(leg.id) ? d_t : d_s)[leg.vertex] *= leg.ratio;
  }
  std::vector<std::vector<BigInt>> d_e(k, std::vector<BigInt>(k, 1));
  for (const auto& e : g.edges()) {
    if (e.is_loop()) continue;
    d_e[e.u][e.v] *= e.ratio;
    d_e[e.v][e.u] *= e.ratio;
  }

  const auto gamma_inv = Permutation::full_cycle(p).inverse();
  Rational total = 0;
  for (const auto& tuple : B) {
    if (tuple.size() != k) {
      throw ValidationError("B tuple has " + std::to_string(tuple.size()) + " permutations, graph has " +
                            std::to_string(k) + " vertices");
    }
    for (const auto& beta : tuple) {
      if (beta.degree() != p) throw ValidationError("B tuple permutation has degree " + std::to_string(beta.degree()) +
                                                    ", expected " + std::to_string(p));
    }
    Rational term = 1;
    for (std::size_t i = 0; i < k; ++i) {
      term *= power(d_s[i], (gamma_inv * tuple[i]).cycle_count());
      term *= power(d_t[i], tuple[i].cycle_count());
      term *= power(d_c[i], -p);
      for (std::size_t j = i + 1; j < k; ++j) {
        if (d_e[i][j] != 1) term *= power(d_e[i][j], (tuple[i].inverse() * tuple[j]).cycle_count() - p);
      }
    }
    total += term;
  }
  return total;
}

WorkedCase parse_worked_case(std::string_view label) {
  if (label == "single_loop") return WorkedCase::single_loop;
  if (label == "black_hole") return WorkedCase::black_hole;
  if (label == "oxygen") return WorkedCase::oxygen;
  throw ValidationError("unsupported case label \"" + std::string(label) + "\"");
}

std::string_view to_string(WorkedCase c) {
  switch (c) {
    case WorkedCase::single_loop: return "single_loop";
    case WorkedCase::black_hole: return "black_hole";
    case WorkedCase::oxygen: return "oxygen";
  }
  return "?";
}

std::vector<PermutationTuple> case_B(WorkedCase c, int p) {
  const auto nc = enumerate_nc(p);
  std::vector<PermutationTuple> out;
  out.reserve(nc.size());
  for (const auto& beta : nc) {
    switch (c) {
      case WorkedCase::single_loop: out.push_back({beta}); break;
      case WorkedCase::black_hole:
        out.push_back({Permutation::identity(p), beta, Permutation::full_cycle(p)});
        break;
      case WorkedCase::oxygen: out.push_back({beta, beta}); break;
    }
  }
  return out;
}

}  // namespace arealaw
