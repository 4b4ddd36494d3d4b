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

#include "arealaw/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <string>
#include <thread>

#include "arealaw/errors.hpp"
#include "arealaw/predictor.hpp"

namespace arealaw {

namespace {

using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > std::numeric_limits<std::uint64_t>::max() / a) return std::numeric_limits<std::uint64_t>::max();
  return a * b;
}

long long leg_dim(const Graph& g, LegId leg, long long n) { return g.leg(leg).ratio * n; }

std::uint64_t vertex_dim(const Graph& g, VertexIndex v, long long n) {
  std::uint64_t d = 1;
  for (auto leg : g.legs_of(v)) d = saturating_mul(d, static_cast<std::uint64_t>(leg_dim(g, leg, n)));
  return d;
}

bool is_single_loop(const Marginal& m) {
  const auto& g = m.graph();
  return g.vertex_count() == 1 && g.edge_count() == 1 && m.surviving(0) == 1;
}

bool uses_wishart(const Marginal& m, const VertexUnitaries& unitaries, const BuildOptions& options) {
  return options.wishart_fast_path && is_single_loop(m) && !unitaries.contains(0);
}

enum class VertexMode { explicit_unitary, skip, sample };

VertexMode vertex_mode(const Marginal& m, VertexIndex v, const VertexUnitaries& unitaries,
                       const BuildOptions& options) {
  if (unitaries.contains(v)) return VertexMode::explicit_unitary;
  const int s = m.surviving(v);
  if (options.skip_traced_vertices && s == 0) return VertexMode::skip;
  if (options.skip_surviving_vertices && s == m.graph().degree(v)) return VertexMode::skip;
  return VertexMode::sample;
}

// Reorders tensor axes: output axis k is input axis order[k]. Axis 0 is the
// most significant.
std::vector<Complex> permute_axes(const std::vector<Complex>& in, const std::vector<long long>& dims,
                                  const std::vector<std::size_t>& order) {
  const auto rank = dims.size();
  if (rank == 0) return in;
  std::vector<long long> stride(rank, 1);
  for (auto k = rank - 1; k > 0; --k) stride[k - 1] = stride[k] * dims[k];

  std::vector<long long> new_dims(rank);
  std::vector<long long> new_stride_in_old(rank);
  for (std::size_t k = 0; k < rank; ++k) {
    new_dims[k] = dims[order[k]];
    new_stride_in_old[k] = stride[order[k]];
  }
  std::vector<Complex> out(in.size());
  std::vector<long long> idx(rank, 0);
  long long offset = 0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j] = in[static_cast<std::size_t>(offset)];
    for (auto k = rank; k > 0; --k) {
      const auto a = k - 1;
      if (++idx[a] < new_dims[a]) {
        offset += new_stride_in_old[a];
        break;
      }
      offset -= (new_dims[a] - 1) * new_stride_in_old[a];
      idx[a] = 0;
    }
  }
  return out;
}

// Isometry from the vertex's cross-vertex legs into its full space: loop
// pairs carry |Phi+>, the other legs pass through. Rows follow the vertex's
// legs in ascending order, columns its non-loop legs in ascending order.
ComplexMatrix vertex_embedding(const Graph& g, VertexIndex v, long long n) {
  const auto legs = g.legs_of(v);
  const auto deg = legs.size();
  std::vector<long long> dims(deg);
  std::vector<long long> stride(deg, 1);
  for (std::size_t k = 0; k < deg; ++k) dims[k] = leg_dim(g, legs[k], n);
  for (auto k = deg; k > 1; --k) stride[k - 2] = stride[k - 1] * dims[k - 1];
  const long long rows = deg == 0 ? 1 : stride[0] * dims[0];

  std::vector<std::size_t> open;                          // positions of non-loop legs
  std::vector<std::pair<std::size_t, std::size_t>> loops;  // positions of loop pairs
  for (std::size_t k = 0; k < deg; ++k) {
    const auto& edge = g.edges()[g.leg(legs[k]).edge];
    if (!edge.is_loop()) {
      open.push_back(k);
    } else if (g.leg(legs[k]).side == Side::first) {
      const auto other = std::find(legs.begin(), legs.end(), Graph::partner(legs[k])) - legs.begin();
      loops.emplace_back(k, static_cast<std::size_t>(other));
    }
  }
  long long cols = 1;
  for (auto k : open) cols *= dims[k];
  double amplitude = 1.0;
  for (const auto& [a, b] : loops) amplitude /= std::sqrt(static_cast<double>(dims[a]));

  ComplexMatrix w = ComplexMatrix::Zero(rows, cols);
  std::vector<long long> col_digits(open.size(), 0);
  for (long long col = 0; col < cols; ++col) {
    long long base = 0;
    for (std::size_t i = 0; i < open.size(); ++i) base += col_digits[i] * stride[open[i]];
    std::vector<long long> loop_digits(loops.size(), 0);
    for (;;) {
      long long row = base;
      for (std::size_t i = 0; i < loops.size(); ++i) {
        row += loop_digits[i] * (stride[loops[i].first] + stride[loops[i].second]);
      }
      w(row, col) = amplitude;
      std::size_t i = loops.size();
      while (i > 0) {
        --i;
        if (++loop_digits[i] < dims[loops[i].first]) break;
        loop_digits[i] = 0;
        if (i == 0) goto next_column;
      }
      if (loops.empty()) break;
    }
  next_column:
    for (std::size_t i = open.size(); i > 0; --i) {
      if (++col_digits[i - 1] < dims[open[i - 1]]) break;
      col_digits[i - 1] = 0;
    }
  }
  return w;
}

ComplexMatrix vertex_operator(const Marginal& m, VertexIndex v, long long n, const VertexUnitaries& unitaries,
                              std::uint64_t seed, const BuildOptions& options) {
  const auto& g = m.graph();
  const auto mode = vertex_mode(m, v, unitaries, options);
  if (mode == VertexMode::sample) {
    long long rows = 1;
    long long cols = 1;
    for (auto leg : g.legs_of(v)) {
      rows *= leg_dim(g, leg, n);
      if (!g.edges()[g.leg(leg).edge].is_loop()) cols *= leg_dim(g, leg, n);
    }
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U)};
    RngStream stream(seq);
    return haar_isometry(rows, cols, stream, options.limits);
  }
  const auto embed = vertex_embedding(g, v, n);
  switch (mode) {
    case VertexMode::explicit_unitary: {
      const auto& u = unitaries.at(v);
      if (u.rows() != embed.rows() || u.cols() != embed.rows()) {
        throw ValidationError("unitary for vertex \"" + g.vertex_id(v) + "\" is " + std::to_string(u.rows()) + "x" +
                              std::to_string(u.cols()) + ", vertex space has dimension " +
                              std::to_string(embed.rows()));
      }
      return u * embed;
    }
    case VertexMode::skip: return embed;
    case VertexMode::sample: break;
  }
  return embed;
}

struct Axis {
  bool open = false;   // pending edge contraction
  std::size_t key = 0; // vertex for blocks, waiting leg for open axes
  long long dim = 1;
};

PureState wishart_pure_state(const Marginal& m, long long n, RngStream& stream) {
  const auto& g = m.graph();
  const long long d = leg_dim(g, 0, n);
  PureState psi;
  psi.amplitudes = ginibre(d, d, stream);
  psi.amplitudes /= psi.amplitudes.norm();
  psi.surviving_dims = {d};
  psi.traced_dims = {d};
  psi.wishart_path = true;
  return psi;
}

double kahan_mean(const std::vector<double>& values) {
  double sum = 0.0;
  double carry = 0.0;
  for (double x : values) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
  return values.empty() ? 0.0 : sum / static_cast<double>(values.size());
}

}  // namespace

RngStream make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32U),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32U),
                    std::uint32_t{0x61726561}};
  return RngStream(seq);
}

SimulationLimits SimulationLimits::from_environment() {
  SimulationLimits limits;
  auto read = [](const char* name, std::uint64_t& target) {
    if (const char* value = std::getenv(name)) {
      char* end = nullptr;
      const auto parsed = std::strtoull(value, &end, 10);
      if (end == value || *end != '\0' || parsed == 0) {
        throw ValidationError(std::string(name) + " must be a positive integer, got \"" + value + "\"");
      }
      target = parsed;
    }
  };
  read("AREALAW_STATE_DIM_LIMIT", limits.state_dim_limit);
  read("AREALAW_HAAR_DIM_LIMIT", limits.haar_dim_limit);
  return limits;
}

ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& stream) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  // Column-major fill, real part first; part of the reproducibility contract.
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) {
      const double re = normal(stream);
      const double im = normal(stream);
      g(i, j) = Complex(re, im);
    }
  return g;
}

ComplexMatrix haar_isometry(Eigen::Index dim, Eigen::Index cols, RngStream& stream, const SimulationLimits& limits) {
  if (dim < 1 || cols < 1 || cols > dim) {
    throw ValidationError("haar_isometry: need 1 <= cols <= dim, got " + std::to_string(dim) + "x" +
                          std::to_string(cols));
  }
  if (static_cast<std::uint64_t>(dim) > limits.haar_dim_limit) {
    throw GuardError("Haar dimension " + std::to_string(dim) + " exceeds the limit " +
                     std::to_string(limits.haar_dim_limit));
  }
  const auto g = ginibre(dim, cols, stream);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ() * ComplexMatrix::Identity(dim, cols);
  const auto& r = qr.matrixQR();
  for (Eigen::Index k = 0; k < cols; ++k) {
    const Complex diag = r(k, k);
    const double mag = std::abs(diag);
    if (mag == 0.0) throw NumericError("haar_isometry: singular Ginibre sample");
    q.col(k) *= diag / mag;
  }
  return q;
}

ComplexMatrix haar_unitary(Eigen::Index dim, RngStream& stream, const SimulationLimits& limits) {
  return haar_isometry(dim, dim, stream, limits);
}

ComplexMatrix tensor_factor_permutation(const std::vector<long long>& dims, const std::vector<std::size_t>& target) {
  const auto k = dims.size();
  if (target.size() != k) throw ValidationError("tensor_factor_permutation: target size mismatch");
  std::vector<std::size_t> order(k);  // output axis j is input axis order[j]
  std::vector<bool> hit(k, false);
  for (std::size_t i = 0; i < k; ++i) {
    if (target[i] >= k || hit[target[i]]) throw ValidationError("tensor_factor_permutation: not a permutation");
    hit[target[i]] = true;
    order[target[i]] = i;
  }
  long long total = 1;
  for (auto d : dims) total *= d;
  std::vector<Complex> basis(static_cast<std::size_t>(total));
  ComplexMatrix p = ComplexMatrix::Zero(total, total);
  for (long long col = 0; col < total; ++col) {
    std::fill(basis.begin(), basis.end(), Complex{});
    basis[static_cast<std::size_t>(col)] = 1.0;
    const auto image = permute_axes(basis, dims, order);
    for (long long row = 0; row < total; ++row) {
      if (image[static_cast<std::size_t>(row)] != Complex{}) p(row, col) = 1.0;
    }
  }
  return p;
}

std::uint64_t state_dimension(const Graph& graph, long long n) {
  std::uint64_t d = 1;
  for (const auto& leg : graph.legs()) d = saturating_mul(d, static_cast<std::uint64_t>(leg.ratio * n));
  return d;
}

void check_guards(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                  const BuildOptions& options) {
  if (n < 1) throw ValidationError("N must be positive");
  const auto& g = marginal.graph();
  const auto total = state_dimension(g, n);
  if (total > options.limits.state_dim_limit) {
    throw GuardError("state dimension " + std::to_string(total) + " exceeds the limit " +
                     std::to_string(options.limits.state_dim_limit) +
                     " (raise AREALAW_STATE_DIM_LIMIT or --state-dim-limit explicitly)");
  }
  if (uses_wishart(marginal, unitaries, options)) return;
  for (VertexIndex v = 0; v < g.vertex_count(); ++v) {
    if (vertex_mode(marginal, v, unitaries, options) != VertexMode::sample) continue;
    const auto d = vertex_dim(g, v, n);
    if (d > options.limits.haar_dim_limit) {
      throw GuardError("vertex \"" + g.vertex_id(v) + "\" needs a Haar unitary of dimension " + std::to_string(d) +
                       ", above the limit " + std::to_string(options.limits.haar_dim_limit) +
                       " (raise AREALAW_HAAR_DIM_LIMIT or --haar-dim-limit explicitly)");
    }
  }
}

PureState build_pure_state(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                           RngStream& stream, const BuildOptions& options) {
  check_guards(marginal, n, unitaries, options);
  if (uses_wishart(marginal, unitaries, options)) return wishart_pure_state(marginal, n, stream);

  const auto& g = marginal.graph();
  PureState psi;
  std::vector<Complex> data{Complex(1.0)};
  std::vector<Axis> axes;
  double normalization = 1.0;
  // One draw per vertex whether or not it is sampled, so skipping a vertex
  // leaves the unitaries of the others unchanged.
  std::vector<std::uint64_t> vertex_seeds(g.vertex_count());
  for (auto& seed : vertex_seeds) seed = stream();

  for (VertexIndex w = 0; w < g.vertex_count(); ++w) {
    const auto mode = vertex_mode(marginal, w, unitaries, options);
    if (mode == VertexMode::skip) {
      (marginal.surviving(w) == 0 ? psi.skipped_traced : psi.skipped_surviving).push_back(w);
    }
    const auto op = vertex_operator(marginal, w, n, unitaries, vertex_seeds[w], options);

    // Non-loop legs of w, ascending, split into those whose partner vertex
    // was already contracted (an open axis waits for them) and the rest.
    std::vector<LegId> g_legs;
    for (auto leg : g.legs_of(w)) {
      if (!g.edges()[g.leg(leg).edge].is_loop()) g_legs.push_back(leg);
    }
    std::vector<std::size_t> contracted_pos;  // positions in g_legs
    std::vector<std::size_t> fresh_pos;
    std::vector<std::size_t> axis_of(g_legs.size(), 0);
    for (std::size_t i = 0; i < g_legs.size(); ++i) {
      const auto it = std::find_if(axes.begin(), axes.end(),
                                   [&](const Axis& a) { return a.open && a.key == g_legs[i]; });
      if (it != axes.end()) {
        contracted_pos.push_back(i);
        axis_of[i] = static_cast<std::size_t>(it - axes.begin());
      } else {
        fresh_pos.push_back(i);
      }
    }

    // Move the contracted axes to the back, in g_legs order.
    std::vector<std::size_t> order;
    std::vector<bool> is_contracted(axes.size(), false);
    for (auto i : contracted_pos) is_contracted[axis_of[i]] = true;
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (!is_contracted[a]) order.push_back(a);
    for (auto i : contracted_pos) order.push_back(axis_of[i]);
    std::vector<long long> dims;
    for (const auto& a : axes) dims.push_back(a.dim);
    data = permute_axes(data, dims, order);
    std::vector<Axis> kept;
    for (std::size_t a = 0; a < axes.size(); ++a)
      if (!is_contracted[a]) kept.push_back(axes[a]);

    long long cdim = 1;
    for (auto i : contracted_pos) cdim *= leg_dim(g, g_legs[i], n);
    long long fdim = 1;
    for (auto i : fresh_pos) fdim *= leg_dim(g, g_legs[i], n);
    const long long rest = static_cast<long long>(data.size()) / cdim;
    const long long wdim = op.rows();

    // Column index of op from (contracted digits, fresh digits).
    std::vector<long long> col_stride(g_legs.size(), 1);
    for (auto i = g_legs.size(); i > 1; --i) col_stride[i - 2] = col_stride[i - 1] * leg_dim(g, g_legs[i - 1], n);
    auto digits_to_col = [&](long long c, long long f) {
      long long col = 0;
      for (auto k = contracted_pos.size(); k > 0; --k) {
        const auto i = contracted_pos[k - 1];
        const auto d = leg_dim(g, g_legs[i], n);
        col += (c % d) * col_stride[i];
        c /= d;
      }
      for (auto k = fresh_pos.size(); k > 0; --k) {
        const auto i = fresh_pos[k - 1];
        const auto d = leg_dim(g, g_legs[i], n);
        col += (f % d) * col_stride[i];
        f /= d;
      }
      return col;
    };
    RowMatrix m(cdim, wdim * fdim);
    for (long long c = 0; c < cdim; ++c)
      for (long long f = 0; f < fdim; ++f) {
        const auto col = digits_to_col(c, f);
        for (long long i = 0; i < wdim; ++i) m(c, i * fdim + f) = op(i, col);
      }
    for (auto i : contracted_pos) normalization /= std::sqrt(static_cast<double>(leg_dim(g, g_legs[i], n)));

    const Eigen::Map<const RowMatrix> t(data.data(), rest, cdim);
    RowMatrix product = t * m;
    data.assign(product.data(), product.data() + product.size());

    axes = std::move(kept);
    axes.push_back(Axis{false, w, wdim});
    for (auto i : fresh_pos) axes.push_back(Axis{true, Graph::partner(g_legs[i]), leg_dim(g, g_legs[i], n)});
  }

  // Split vertex blocks into legs and sort legs into (surviving, traced).
  std::vector<LegId> leg_axes;
  std::vector<long long> leg_dims;
  for (const auto& a : axes) {
    for (auto leg : g.legs_of(a.key)) {
      leg_axes.push_back(leg);
      leg_dims.push_back(leg_dim(g, leg, n));
    }
  }
  std::vector<std::size_t> order;
  for (int pass = 0; pass < 2; ++pass) {
    const bool want_traced = pass == 1;
    for (LegId leg = 0; leg < g.leg_count(); ++leg) {
      if (marginal.is_traced(leg) != want_traced) continue;
      const auto pos = std::find(leg_axes.begin(), leg_axes.end(), leg) - leg_axes.begin();
      order.push_back(static_cast<std::size_t>(pos));
      (want_traced ? psi.traced_dims : psi.surviving_dims).push_back(leg_dim(g, leg, n));
    }
  }
  data = permute_axes(data, leg_dims, order);

  long long rows = 1;
  for (auto d : psi.surviving_dims) rows *= d;
  long long cols = 1;
  for (auto d : psi.traced_dims) cols *= d;
  psi.amplitudes = Eigen::Map<const RowMatrix>(data.data(), rows, cols) * normalization;
  return psi;
}

ReducedState build_reduced_state(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                                 RngStream& stream, const BuildOptions& options) {
  const auto psi = build_pure_state(marginal, n, unitaries, stream, options);
  ReducedState rho;
  rho.matrix = psi.amplitudes * psi.amplitudes.adjoint();
  rho.dims = psi.surviving_dims;
  return rho;
}

ReducedState sample_wishart_state(long long dim_system, long long dim_environment, RngStream& stream) {
  if (dim_system < 1 || dim_environment < 1) throw ValidationError("Wishart dimensions must be positive");
  const auto g = ginibre(dim_system, dim_environment, stream);
  ReducedState rho;
  rho.matrix = g * g.adjoint();
  rho.matrix /= rho.matrix.trace().real();
  rho.dims = {dim_system};
  return rho;
}

std::vector<double> reduced_spectrum(const PureState& psi) {
  const auto& a = psi.amplitudes;
  ComplexMatrix gram = a.rows() <= a.cols() ? ComplexMatrix(a * a.adjoint()) : ComplexMatrix(a.adjoint() * a);
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(gram, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver failed on a " + std::to_string(gram.rows()) + "x" +
                       std::to_string(gram.cols()) + " Gram matrix");
  }
  const auto& ev = solver.eigenvalues();
  return {ev.data(), ev.data() + ev.size()};
}

SpectralReport spectral_report(std::vector<double> eigenvalues, const std::vector<double>& q_list) {
  SpectralReport report;
  std::sort(eigenvalues.begin(), eigenvalues.end(), std::greater<>());
  const double top = eigenvalues.empty() ? 0.0 : std::max(eigenvalues.front(), 0.0);
  for (auto& x : eigenvalues) {
    if (x < eigenvalue_clamp * top) x = 0.0;
    if (x > rank_threshold * top) ++report.rank;
  }
  for (double x : eigenvalues)
    if (x > 0.0) report.von_neumann -= x * std::log(x);
  for (double q : q_list) {
    double h = 0.0;
    if (q == 0.0) {
      h = std::log(static_cast<double>(report.rank));
    } else if (q == 1.0) {
      h = report.von_neumann;
    } else {
      double sum = 0.0;
      for (double x : eigenvalues)
        if (x > 0.0) sum += std::pow(x, q);
      h = std::log(sum) / (1.0 - q);
    }
    report.renyi.emplace_back(q, h);
  }
  report.eigenvalues = std::move(eigenvalues);
  return report;
}

SpectralReport spectral_report(const ReducedState& rho, const std::vector<double>& q_list) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(rho.matrix, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw NumericError("Hermitian eigensolver failed on a " + std::to_string(rho.matrix.rows()) + "x" +
                       std::to_string(rho.matrix.cols()) + " reduced state");
  }
  const auto& ev = solver.eigenvalues();
  return spectral_report(std::vector<double>(ev.data(), ev.data() + ev.size()), q_list);
}

MCReport run_experiment(const Marginal& marginal, long long n, long long samples, std::uint64_t seed,
                        const std::vector<double>& q_list, const ExperimentOptions& options) {
  if (samples < 1) throw ValidationError("at least one sample is required");
  const VertexUnitaries none;
  check_guards(marginal, n, none, options.build);

  struct Sample {
    SpectralReport spectrum;
    std::vector<double> moments;
  };
  std::vector<Sample> results(static_cast<std::size_t>(samples));
  PureState shape;  // skip flags and dims of sample 0

  std::atomic<long long> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const auto i = next.fetch_add(1);
      if (i >= samples) return;
      try {
        auto stream = make_stream(seed, static_cast<std::uint64_t>(i));
        auto psi = build_pure_state(marginal, n, none, stream, options.build);
        Sample s;
        s.spectrum = spectral_report(reduced_spectrum(psi), q_list);
        for (int p = 1; p <= options.moments; ++p) {
          double tr = 0.0;
          for (double x : s.spectrum.eigenvalues) tr += std::pow(x, p);
          s.moments.push_back(tr);
        }
        results[static_cast<std::size_t>(i)] = std::move(s);
        if (i == 0) {
          psi.amplitudes.resize(0, 0);
          shape = std::move(psi);
        }
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = samples;
        return;
      }
    }
  };
  const auto jobs = static_cast<long long>(std::max(1U, options.jobs));
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (long long j = 0; j < std::min(jobs, samples); ++j) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  MCReport report;
  report.samples = samples;
  report.seed = seed;
  report.n = n;
  report.skipped_traced = shape.skipped_traced;
  report.skipped_surviving = shape.skipped_surviving;
  report.wishart_path = shape.wishart_path;
  report.dim_surviving = 1;
  for (auto d : shape.surviving_dims) report.dim_surviving *= d;
  report.dim_traced = 1;
  for (auto d : shape.traced_dims) report.dim_traced *= d;

  for (const auto& s : results) {
    report.per_sample_h.push_back(s.spectrum.von_neumann);
    report.ranks.push_back(s.spectrum.rank);
    if (options.keep_spectra) report.spectra.push_back(s.spectrum.eigenvalues);
  }
  report.mean_h = kahan_mean(report.per_sample_h);
  if (samples > 1) {
    std::vector<double> sq;
    for (double h : report.per_sample_h) sq.push_back((h - report.mean_h) * (h - report.mean_h));
    const double var = kahan_mean(sq) * static_cast<double>(samples) / static_cast<double>(samples - 1);
    report.stderr_h = std::sqrt(var / static_cast<double>(samples));
  }
  for (std::size_t k = 0; k < q_list.size(); ++k) {
    std::vector<double> values;
    for (const auto& s : results) values.push_back(s.spectrum.renyi[k].second);
    report.mean_renyi.emplace_back(q_list[k], kahan_mean(values));
  }
  for (int p = 0; p < options.moments; ++p) {
    std::vector<double> values;
    for (const auto& s : results) values.push_back(s.moments[static_cast<std::size_t>(p)]);
    report.trace_moments.push_back(kahan_mean(values));
  }
  return report;
}

std::vector<MomentComparison> empirical_vs_mp(const MCReport& report, double c, double rescale) {
  std::vector<MomentComparison> out;
  const auto count = std::min<std::size_t>(4, report.trace_moments.size());
  for (std::size_t k = 0; k < count; ++k) {
    const int p = static_cast<int>(k) + 1;
    MomentComparison cmp;
    cmp.p = p;
    cmp.empirical = std::pow(rescale, p) * report.trace_moments[k] / static_cast<double>(report.dim_surviving);
    cmp.expected = mp_moment(c, p);
    cmp.distance = std::abs(cmp.empirical - cmp.expected);
    out.push_back(cmp);
  }
  return out;
}

}  // namespace arealaw
