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

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <map>
#include <random>
#include <utility>
#include <vector>

#include "arealaw/graph.hpp"

namespace arealaw {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;

/// Per-sample random stream. Streams are derived from (seed, index) so a
/// sample's randomness does not depend on execution order.
using RngStream = std::mt19937_64;

RngStream make_stream(std::uint64_t seed, std::uint64_t index);

struct SimulationLimits {
  std::uint64_t state_dim_limit = std::uint64_t{1} << 24;
  std::uint64_t haar_dim_limit = 4096;

  /// Defaults overridden by AREALAW_STATE_DIM_LIMIT / AREALAW_HAAR_DIM_LIMIT.
  static SimulationLimits from_environment();
};

/// rows x cols matrix of i.i.d. standard complex Gaussians (E|z|^2 = 1).
ComplexMatrix ginibre(Eigen::Index rows, Eigen::Index cols, RngStream& stream);

/// Haar-distributed dim x dim unitary: QR of a Ginibre matrix with the
/// diagonal of R normalized to positive reals.
ComplexMatrix haar_unitary(Eigen::Index dim, RngStream& stream, const SimulationLimits& limits = {});

/// First `cols` columns of a Haar unitary, i.e. U W for any fixed isometry W.
ComplexMatrix haar_isometry(Eigen::Index dim, Eigen::Index cols, RngStream& stream,
                            const SimulationLimits& limits = {});

/// Dense matrix of the unitary that relabels tensor factors: factor k of the
/// input (dims[k]) becomes factor `target[k]` of the output. Factor 0 is the
/// most significant digit.
ComplexMatrix tensor_factor_permutation(const std::vector<long long>& dims, const std::vector<std::size_t>& target);

/// rho_S on the surviving legs, ascending leg order.
struct ReducedState {
  ComplexMatrix matrix;
  std::vector<long long> dims;
};

struct BuildOptions {
  /// Replace unitaries on fully traced vertices by the identity.
  bool skip_traced_vertices = true;
  /// Replace unitaries on fully surviving vertices by the identity (spectrum
  /// invariant, changes rho_S by a local unitary).
  bool skip_surviving_vertices = true;
  /// Sample the single-loop topology as G G^dagger / Tr G G^dagger directly.
  bool wishart_fast_path = true;
  SimulationLimits limits;
};

/// Pure state |Psi> arranged as a matrix: rows index the surviving legs,
/// columns the traced legs (ascending leg order, first leg most significant).
struct PureState {
  Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> amplitudes;
  std::vector<long long> surviving_dims;
  std::vector<long long> traced_dims;
  std::vector<VertexIndex> skipped_traced;
  std::vector<VertexIndex> skipped_surviving;
  bool wishart_path = false;
};

/// Explicit per-vertex unitaries; vertices absent from the map are sampled.
using VertexUnitaries = std::map<VertexIndex, ComplexMatrix>;

/// prod over legs of ratio * N, saturating at UINT64_MAX.
std::uint64_t state_dimension(const Graph& graph, long long n);

/// Throws GuardError if building this marginal would exceed the limits.
void check_guards(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                  const BuildOptions& options);

/// [tensor over V of U_V] (tensor over edges of |Phi+>), arranged as (S, T).
PureState build_pure_state(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                           RngStream& stream, const BuildOptions& options = {});

/// rho_S = tr_T |Psi><Psi|.
ReducedState build_reduced_state(const Marginal& marginal, long long n, const VertexUnitaries& unitaries,
                                 RngStream& stream, const BuildOptions& options = {});

/// Normalized Wishart state G G^dagger / Tr(G G^dagger), G of size
/// dim_system x dim_environment.
ReducedState sample_wishart_state(long long dim_system, long long dim_environment, RngStream& stream);

struct SpectralReport {
  /// Descending, clamped at relative 1e-12.
  std::vector<double> eigenvalues;
  double von_neumann = 0.0;
  /// (q, H_q) in the order requested.
  std::vector<std::pair<double, double>> renyi;
  /// Eigenvalues above relative 1e-9.
  long long rank = 0;
};

inline constexpr double eigenvalue_clamp = 1e-12;
inline constexpr double rank_threshold = 1e-9;

SpectralReport spectral_report(const ReducedState& rho, const std::vector<double>& q_list);
SpectralReport spectral_report(std::vector<double> eigenvalues, const std::vector<double>& q_list);

/// Nonzero-spectrum-preserving eigenvalues of rho_S computed from the smaller
/// Gram matrix of |Psi>.
std::vector<double> reduced_spectrum(const PureState& psi);

struct ExperimentOptions {
  BuildOptions build;
  unsigned jobs = 1;
  bool keep_spectra = false;
  /// Number of trace moments E Tr rho^p recorded, p = 1..moments.
  int moments = 4;
};

struct MCReport {
  long long samples = 0;
  std::uint64_t seed = 0;
  long long n = 0;
  double mean_h = 0.0;
  double stderr_h = 0.0;
  std::vector<double> per_sample_h;
  /// (q, mean H_q).
  std::vector<std::pair<double, double>> mean_renyi;
  /// E Tr rho^p for p = 1..moments.
  std::vector<double> trace_moments;
  long long dim_surviving = 1;
  long long dim_traced = 1;
  std::vector<VertexIndex> skipped_traced;
  std::vector<VertexIndex> skipped_surviving;
  bool wishart_path = false;
  std::vector<long long> ranks;
  std::vector<std::vector<double>> spectra;
};

/// Samples `samples` independent graph states; sample i uses
/// make_stream(seed, i). Results do not depend on `jobs`.
MCReport run_experiment(const Marginal& marginal, long long n, long long samples, std::uint64_t seed,
                        const std::vector<double>& q_list, const ExperimentOptions& options = {});

struct MomentComparison {
  int p = 0;
  double empirical = 0.0;
  double expected = 0.0;
  double distance = 0.0;
};

/// Compares the rescaled empirical measure (1/dim_S) sum delta_{rescale
/// lambda_i} with pi_c through its first four moments.
std::vector<MomentComparison> empirical_vs_mp(const MCReport& report, double c, double rescale);

}  // namespace arealaw
