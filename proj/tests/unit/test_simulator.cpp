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
#include <cstdlib>

#include "arealaw/errors.hpp"
#include "arealaw/predictor.hpp"
#include "arealaw/simulator.hpp"
#include "doctest.h"
#include "fixtures.hpp"

using namespace arealaw;
using arealaw::testing::load;
using arealaw::testing::make_graph;
using arealaw::testing::with_counts;

namespace {

double mean_of(const std::vector<double>& x) {
  double s = 0.0;
  for (double v : x) s += v;
  return s / static_cast<double>(x.size());
}

double stderr_of(const std::vector<double>& x) {
  const double m = mean_of(x);
  double s = 0.0;
  for (double v : x) s += (v - m) * (v - m);
  return std::sqrt(s / static_cast<double>(x.size() - 1) / static_cast<double>(x.size()));
}

}  // namespace

TEST_CASE("Haar unitaries are unitary") {
  auto stream = make_stream(1, 0);
  const auto u = haar_unitary(64, stream);
  const ComplexMatrix eye = ComplexMatrix::Identity(64, 64);
  CHECK((u * u.adjoint() - eye).cwiseAbs().maxCoeff() <= 1e-10);
  Eigen::ComplexEigenSolver<ComplexMatrix> eig(u);
  for (const auto& z : eig.eigenvalues()) CHECK(std::abs(std::abs(z) - 1.0) <= 1e-10);

  const auto phase = haar_unitary(1, stream);
  CHECK(std::abs(std::abs(phase(0, 0)) - 1.0) <= 1e-12);

  const auto v = haar_isometry(10, 3, stream);
  CHECK((v.adjoint() * v - ComplexMatrix::Identity(3, 3)).cwiseAbs().maxCoeff() <= 1e-10);
}

TEST_CASE("Haar entry statistics") {
  // |U_11|^2 of a Haar unitary has mean 1/d and variance (d-1)/(d^2 (d+1)).
  const int d = 64;
  const int samples = 10000;
  double sum = 0.0;
  for (int i = 0; i < samples; ++i) {
    auto stream = make_stream(99, static_cast<std::uint64_t>(i));
    sum += std::norm(haar_unitary(d, stream)(0, 0));
  }
  const double sigma = std::sqrt((d - 1.0) / (d * d * (d + 1.0)) / samples);
  CHECK(std::abs(sum / samples - 1.0 / d) <= 3 * sigma);
}

TEST_CASE("streams are reproducible and distinct") {
  auto a = make_stream(5, 3);
  auto b = make_stream(5, 3);
  auto c = make_stream(5, 4);
  const auto x = a();
  CHECK(x == b());
  CHECK(x != c());
}

TEST_CASE("guards") {
  auto stream = make_stream(0, 0);
  CHECK_THROWS_AS(haar_unitary(4097, stream), GuardError);
  SimulationLimits small;
  small.haar_dim_limit = 8;
  CHECK_THROWS_AS(haar_unitary(9, stream, small), GuardError);

  BuildOptions options;
  options.limits.state_dim_limit = 100;
  const auto loop = load("single_loop.json");
  CHECK_NOTHROW(check_guards(loop, 10, {}, options));
  CHECK_THROWS_AS(check_guards(loop, 11, {}, options), GuardError);

  BuildOptions haar;
  haar.limits.haar_dim_limit = 100;
  const auto bh = load("black_hole_2.json");
  CHECK_NOTHROW(check_guards(bh, 10, {}, haar));
  CHECK_THROWS_AS(check_guards(bh, 11, {}, haar), GuardError);
  CHECK(state_dimension(bh.graph(), 3) == 81);
}

TEST_CASE("guard overrides from the environment") {
  setenv("AREALAW_STATE_DIM_LIMIT", "1234", 1);
  setenv("AREALAW_HAAR_DIM_LIMIT", "77", 1);
  const auto limits = SimulationLimits::from_environment();
  CHECK(limits.state_dim_limit == 1234);
  CHECK(limits.haar_dim_limit == 77);
  setenv("AREALAW_HAAR_DIM_LIMIT", "lots", 1);
  CHECK_THROWS_AS(SimulationLimits::from_environment(), ValidationError);
  unsetenv("AREALAW_STATE_DIM_LIMIT");
  unsetenv("AREALAW_HAAR_DIM_LIMIT");
  CHECK(SimulationLimits::from_environment().haar_dim_limit == 4096);
}

TEST_CASE("tensor_factor_permutation") {
  // Swap two factors of dimensions 2 and 3: |i, j> -> |j, i>.
  const auto p = tensor_factor_permutation({2, 3}, {1, 0});
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 3; ++j) CHECK(p(j * 2 + i, i * 3 + j) == Complex(1.0));
  CHECK((p * p.adjoint() - ComplexMatrix::Identity(6, 6)).norm() == 0.0);
  CHECK(tensor_factor_permutation({2, 2, 3}, {0, 1, 2}) == ComplexMatrix::Identity(12, 12));
  CHECK_THROWS_AS(tensor_factor_permutation({2, 2}, {0, 0}), ValidationError);
}

TEST_CASE("reduced states are normalized Hermitian matrices") {
  for (const char* name : {"black_hole_1.json", "generic.json", "oxygen_2.json"}) {
    auto stream = make_stream(3, 0);
    const auto rho = build_reduced_state(load(name), 3, {}, stream);
    CHECK(std::abs(rho.matrix.trace() - Complex(1.0)) <= 1e-10);
    CHECK((rho.matrix - rho.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("adapted marginals have a uniform spectrum") {
  // Boundary edges of ratios 2 and 3 at N = 2: 24 eigenvalues 1/24.
  const auto m = with_counts(make_graph(3, {{0, 1}, {0, 2}, {1, 2}, {0, 0}}, {2, 3, 1, 1}), {4, 0, 0});
  for (bool skip : {true, false}) {
    BuildOptions options;
    options.skip_surviving_vertices = skip;
    options.skip_traced_vertices = skip;
    auto stream = make_stream(8, 1);
    const auto report = spectral_report(build_reduced_state(m, 2, {}, stream, options), {0, 1, 2});
    CHECK(report.rank == 24);
    for (long long i = 0; i < 24; ++i) CHECK(std::abs(report.eigenvalues[static_cast<std::size_t>(i)] - 1.0 / 24) <= 1e-12);
    CHECK(report.von_neumann == doctest::Approx(std::log(24.0)));
  }
}

TEST_CASE("empty surviving side and fully surviving side") {
  const auto g = make_graph(2, {{0, 1}, {0, 0}});
  auto stream = make_stream(4, 0);
  const auto traced = build_pure_state(with_counts(g, {0, 0}), 3, {}, stream);
  CHECK(traced.amplitudes.rows() == 1);
  CHECK(traced.skipped_traced.size() == 2);
  const auto report = spectral_report(reduced_spectrum(traced), {0});
  CHECK(report.rank == 1);
  CHECK(report.eigenvalues[0] == doctest::Approx(1.0));

  const auto kept = build_pure_state(with_counts(g, {3, 1}), 3, {}, stream);
  CHECK(kept.amplitudes.cols() == 1);
  CHECK(kept.skipped_surviving.size() == 2);
  CHECK(spectral_report(reduced_spectrum(kept), {}).von_neumann == doctest::Approx(0.0));
}

TEST_CASE("explicit unitaries") {
  const auto loop = load("single_loop.json");
  auto stream = make_stream(0, 0);
  VertexUnitaries wrong{{0, ComplexMatrix::Identity(3, 3)}};
  CHECK_THROWS_AS(build_pure_state(loop, 2, wrong, stream), ValidationError);
  // The identity on a loop gives the maximally entangled pair.
  VertexUnitaries id{{0, ComplexMatrix::Identity(4, 4)}};
  const auto report = spectral_report(reduced_spectrum(build_pure_state(loop, 2, id, stream)), {2});
  CHECK(report.rank == 2);
  CHECK(report.renyi[0].second == doctest::Approx(std::log(2.0)));
}

TEST_CASE("spectral_report") {
  const auto mixed = spectral_report(std::vector<double>(8, 0.125), {0, 0.5, 1, 2, 3});
  CHECK(mixed.rank == 8);
  for (const auto& [q, h] : mixed.renyi) CHECK(h == doctest::Approx(std::log(8.0)));
  const auto pure = spectral_report(std::vector<double>{0.0, 1.0, 1e-15}, {0, 1});
  CHECK(pure.rank == 1);
  CHECK(pure.von_neumann == 0.0);
  CHECK(pure.eigenvalues == std::vector<double>{1.0, 0.0, 0.0});
  const auto skew = spectral_report(std::vector<double>{0.5, 0.3, 0.2}, {0, 0.5, 1, 2, 4});
  for (std::size_t i = 1; i < skew.renyi.size(); ++i) CHECK(skew.renyi[i].second <= skew.renyi[i - 1].second + 1e-15);
  CHECK(skew.renyi[0].second == doctest::Approx(std::log(3.0)));
  CHECK(skew.renyi[2].second == doctest::Approx(skew.von_neumann));

  ReducedState rho{ComplexMatrix::Identity(4, 4) / 4.0, {4}};
  CHECK(spectral_report(rho, {}).von_neumann == doctest::Approx(std::log(4.0)));
}

TEST_CASE("Wishart shortcut matches the circuit construction") {
  // E Tr rho^2 of a normalized Wishart state with square dimension d is
  // 2d / (d^2 + 1).
  const auto loop = load("single_loop.json");
  const long long n = 6;
  const double exact = 2.0 * n / (n * n + 1.0);
  for (bool shortcut : {true, false}) {
    ExperimentOptions options;
    options.build.wishart_fast_path = shortcut;
    const auto report = run_experiment(loop, n, 400, 31, {}, options);
    CHECK(report.wishart_path == shortcut);
    CHECK(std::abs(report.trace_moments[1] - exact) <= 0.01);
    CHECK(report.trace_moments[0] == doctest::Approx(1.0));
  }
}

TEST_CASE("run_experiment is independent of the thread count") {
  const auto m = load("black_hole_2.json");
  ExperimentOptions one;
  ExperimentOptions four;
  four.jobs = 4;
  const auto a = run_experiment(m, 4, 12, 77, {0, 2}, one);
  const auto b = run_experiment(m, 4, 12, 77, {0, 2}, four);
  CHECK(a.per_sample_h == b.per_sample_h);
  CHECK(a.mean_h == b.mean_h);
  CHECK(a.stderr_h == b.stderr_h);
  CHECK(a.trace_moments == b.trace_moments);
}

TEST_CASE("skips do not change entropies") {
  ExperimentOptions skip;
  ExperimentOptions full;
  full.build.skip_traced_vertices = false;
  full.build.skip_surviving_vertices = false;
  for (const char* name : {"black_hole_adapted.json", "black_hole_1.json", "generic.json", "adapted.json"}) {
    const auto m = load(name);
    const auto a = run_experiment(m, 2, 5, 13, {}, skip);
    const auto b = run_experiment(m, 2, 5, 13, {}, full);
    for (std::size_t i = 0; i < a.per_sample_h.size(); ++i) CHECK(std::abs(a.per_sample_h[i] - b.per_sample_h[i]) <= 1e-9);
  }
  const auto adapted = run_experiment(load("adapted.json"), 2, 2, 3, {}, skip);
  CHECK(adapted.stderr_h == 0.0);
  CHECK(adapted.skipped_traced.size() == 2);
  CHECK(adapted.skipped_surviving.size() == 1);
}

TEST_CASE("leg choice inside a vertex does not matter") {
  // Same counts s = (0, 1, 1); completion traces V2's first or second leg.
  const auto g = make_graph(3, {{0, 1}, {1, 2}});
  const auto first = resolve_trace(g, TraceSpec::from_legs({0, 1}));
  const auto second = resolve_trace(g, TraceSpec::from_legs({0, 2}));
  const auto a = run_experiment(first, 8, 100, 1, {});
  const auto b = run_experiment(second, 8, 100, 2, {});
  const double se = std::hypot(a.stderr_h, b.stderr_h);
  CHECK(std::abs(a.mean_h - b.mean_h) <= 3 * se);
}

TEST_CASE("purity and entropy bounds hold per sample") {
  const auto m = load("generic.json");
  ExperimentOptions options;
  options.keep_spectra = true;
  const auto r = run_experiment(m, 3, 10, 5, {2}, options);
  for (std::size_t i = 0; i < r.spectra.size(); ++i) {
    double purity = 0.0;
    for (double x : r.spectra[i]) purity += x * x;
    CHECK(purity >= 1.0 / static_cast<double>(r.dim_surviving) - 1e-12);
    CHECK(r.per_sample_h[i] <= std::log(static_cast<double>(std::min(r.dim_surviving, r.dim_traced))) + 1e-12);
  }
  CHECK(mean_of(r.per_sample_h) == doctest::Approx(r.mean_h));
  CHECK(stderr_of(r.per_sample_h) == doctest::Approx(r.stderr_h));
}

TEST_CASE("empirical_vs_mp") {
  const auto loop = run_experiment(load("single_loop.json"), 64, 20, 9, {});
  const auto d = empirical_vs_mp(loop, 1.0, 64.0);
  REQUIRE(d.size() == 4);
  const double catalan[] = {1, 2, 5, 14};
  for (int p = 0; p < 4; ++p) {
    CHECK(d[static_cast<std::size_t>(p)].expected == doctest::Approx(catalan[p]));
    CHECK(d[static_cast<std::size_t>(p)].distance <= 0.05 * catalan[p]);
  }

  const auto bh = run_experiment(load("black_hole_1.json"), 12, 10, 9, {});
  for (const auto& c : empirical_vs_mp(bh, 0.25, 144.0)) {
    if (c.p <= 3) CHECK(c.distance <= 0.05 * c.expected);
  }

  // A pure marginal: reported, no crash.
  const auto g = make_graph(2, {{0, 1}});
  const auto pure = run_experiment(with_counts(g, {1, 1}), 2, 2, 1, {});
  const auto deg = empirical_vs_mp(pure, 1.0, 1.0);
  CHECK(deg.size() == 4);
}

TEST_CASE("sample_wishart_state") {
  auto stream = make_stream(1, 1);
  const auto rho = sample_wishart_state(5, 7, stream);
  CHECK(rho.matrix.rows() == 5);
  CHECK(std::abs(rho.matrix.trace() - Complex(1.0)) <= 1e-12);
  CHECK_THROWS_AS(sample_wishart_state(0, 3, stream), ValidationError);
}
