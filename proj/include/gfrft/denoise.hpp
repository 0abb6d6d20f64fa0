// Copyright 2026 The gfrft Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GFRFT_DENOISE_HPP
#define GFRFT_DENOISE_HPP

#include <cstdint>
#include <limits>
#include <span>
#include <string>

#include <Eigen/Dense>

#include "gfrft/spectral.hpp"
#include "gfrft/transform.hpp"

namespace gfrft {

struct NoiseSpec {
  double epsilon = 0.0;
  std::uint64_t seed = 0;
  /// Upper bound on epsilon; the default matches the documented sweep range.
  double max_epsilon = 8.0;
};

/// X + E with E i.i.d. uniform on [-ε, ε], drawn in column-major order.
GraphSignal add_uniform_noise(const GraphSignal& x, const NoiseSpec& spec);

/// (1/2) Σ_{i<Ω} (p_i p_i^* + q_i q_i^*) x̂, real part.
Eigen::VectorXd bandlimit_box(const FractionalLaplacian& fl, const Eigen::VectorXd& xhat,
                              Index omega);
/// Same projection restricted to the first Ω pairs of frequency_order.
GraphSignal bandlimit_kron(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                           const GraphSignal& xhat, Index omega);
/// Σ_{(i,j) ∈ U_Ω} (p_1i ⊗ p_2j)(p_1i ⊗ p_2j)^* x̂, real part.
GraphSignal bandlimit_dgfrft(const HermitianFractional& h1, const HermitianFractional& h2,
                             const GraphSignal& xhat, Index omega);
Eigen::VectorXd bandlimit_m_kron(std::span<const FractionalLaplacian> factors,
                                 const Eigen::VectorXd& xhat, Index omega);

/// Dispatches to the bandlimiter matching plan.kind().
Eigen::VectorXd bandlimit(const TransformPlan& plan, const Eigen::VectorXd& xhat, Index omega);

// Complex-valued projections; the real-part variants above discard the
// imaginary residual.
Eigen::VectorXcd project_box(const FractionalLaplacian& fl, const Eigen::VectorXd& xhat,
                             Index omega);
Eigen::VectorXcd project_m_kron(std::span<const FractionalLaplacian> factors,
                                const Eigen::VectorXd& xhat, Index omega);
Eigen::VectorXcd project_dgfrft(const HermitianFractional& h1, const HermitianFractional& h2,
                                const GraphSignal& xhat, Index omega);

struct DenoiseMetrics {
  double isnr = 0.0;  // dB
  double snr = 0.0;   // dB
  double bae = 0.0;   // max |X̃ - X|
};

inline constexpr double kInfiniteSnr = std::numeric_limits<double>::infinity();

/// ISNR = -20 log10(|X̂ - X|_F / |X|_F), SNR likewise for X̃, BAE the largest
/// absolute entry of X̃ - X. Exact matches report +inf.
DenoiseMetrics metrics(const Eigen::MatrixXd& x, const Eigen::MatrixXd& xhat,
                       const Eigen::MatrixXd& xtilde);

/// Share of |y1|^2 + |y2|^2 in the first Ω entries of `order`.
double energy_fraction(const SpectrumPair& sp, std::span<const Index> order, Index omega);

struct BoundCheck {
  double lhs = 0.0;
  /// (|L x| + |L^* x|) / (2 r_{Ω-1}); NaN for the Kronecker theorems, which
  /// have no single product factorization.
  double rhs_tight = std::numeric_limits<double>::quiet_NaN();
  /// Sum of the per-factor Kronecker terms over 2 × cutoff.
  double rhs_kron = 0.0;
  double cutoff = 0.0;
  bool vacuous = false;  // cutoff is zero
  bool holds = true;
};

BoundCheck theorem_bound_box(const FractionalLaplacian& product, const Eigen::VectorXd& x,
                             Index omega);
BoundCheck theorem_bound_kron(std::span<const FractionalLaplacian> factors,
                              const Eigen::VectorXd& x, Index omega);

}  // namespace gfrft

#endif  // GFRFT_DENOISE_HPP
