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

#ifndef GFRFT_SPECTRAL_HPP
#define GFRFT_SPECTRAL_HPP

#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfrft/graph.hpp"
#include "gfrft/linalg.hpp"

namespace gfrft {

/// Sign convention revision recorded in exported factorizations.
inline constexpr int kSignConventionVersion = 1;

/// M = left * diag(values) * right^*, with values ascending.
///
/// Matrices are stored complex so the same type carries factorizations of
/// complex fractional Laplacians; `is_real` is set when every entry of both
/// bases has zero imaginary part.
struct SpectralFactorization {
  Eigen::MatrixXcd left;
  Eigen::VectorXd values;
  Eigen::MatrixXcd right;
  bool is_real = true;

  Index size() const { return values.size(); }
  Eigen::MatrixXcd reconstruct() const;
};

/// SVD with singular values in nondecreasing order (stable with respect to
/// the decomposition's own ordering on ties). Each left vector is rotated so
/// its largest-magnitude entry (lowest index among ties) is real and
/// nonnegative; the paired right vector gets the same unit factor. Values at
/// or below n * eps * max are set to zero, and the right vectors spanning
/// that null space are rotated onto the left ones (orthogonal Procrustes),
/// which gives U = V for symmetric positive semidefinite input.
SpectralFactorization svd_ascending(const Eigen::MatrixXd& m);
SpectralFactorization svd_ascending(const Eigen::MatrixXcd& m);

struct MatrixPower {
  Eigen::MatrixXcd value;
  /// True when the imaginary part could not be truncated away.
  bool is_complex = false;
  /// True when an eigenvalue at -1 forced the principal branch onto θ = π.
  bool negative_unit_eigenvalue = false;
};

/// Principal power of a unitary (or real orthogonal) matrix. Uses the
/// complex Schur form M = Z T Z^*, which is diagonal for normal matrices, and
/// raises each eigenvalue e^{iθ}, θ ∈ (-π, π], to e^{iαθ}. The result is
/// truncated to real when its imaginary part is below 1e-8 of the real part
/// (Frobenius norms). alpha == 1 returns the input unchanged.
MatrixPower orthogonal_fractional_power(const Eigen::MatrixXcd& m, double alpha);

enum class LaplacianOrigin { FactorGraph, ProductBox, ProductM };

std::string to_string(LaplacianOrigin origin);

/// L^α = P * diag(R) * Q^* with P = U^α, Q = V^α, R = Σ^α from the SVD
/// L = U Σ V^*.
struct FractionalLaplacian {
  SpectralFactorization factorization;
  /// The assembled L^α. At α = 1 this is the input Laplacian itself.
  Eigen::MatrixXcd matrix;
  double alpha = 1.0;
  LaplacianOrigin origin = LaplacianOrigin::FactorGraph;
  /// Set when P or Q (or a factor's P or Q) is genuinely complex.
  bool complex_power = false;
  /// Factor sizes; one entry for a factor graph.
  std::vector<Index> dims;
  /// Factor fractional Laplacians L_l^α for product origins.
  std::vector<Eigen::MatrixXcd> factor_matrices;

  Index size() const { return factorization.size(); }
  const Eigen::MatrixXcd& left() const { return factorization.left; }
  const Eigen::MatrixXcd& right() const { return factorization.right; }
  const Eigen::VectorXd& values() const { return factorization.values; }
};

struct FractionalOptions {
  /// Permits alpha outside (0, 1].
  bool allow_any_alpha = false;
};

FractionalLaplacian fractional_laplacian(const Eigen::MatrixXd& laplacian, double alpha,
                                         const FractionalOptions& options = {});

/// L_⊠^α = L1^α ⊕ L2^α, refactored by svd_ascending.
FractionalLaplacian product_fractional_laplacian(const FractionalLaplacian& f1,
                                                 const FractionalLaplacian& f2);

/// Sum of I ⊗ L_i^α ⊗ I over all factors, refactored by svd_ascending.
FractionalLaplacian m_product_fractional_laplacian(
    std::span<const FractionalLaplacian> factors);

/// Fractional power of a magnetic Laplacian: L_q = U Λ U^*, basis P = U^α,
/// values Λ^α.
struct HermitianFractional {
  Eigen::MatrixXcd basis;
  Eigen::VectorXd values;
  Eigen::MatrixXcd eigenvectors;
  Eigen::VectorXd eigenvalues;
  double q = 0.5;
  double alpha = 1.0;

  Index size() const { return values.size(); }
};

HermitianFractional hermitian_fractional(const HermitianLaplacian& lq, double alpha,
                                         const FractionalOptions& options = {});

// P.csv / R.csv / Q.csv (+ P_imag.csv, Q_imag.csv when complex) and a JSON
// sidecar factorization.json.
void export_factorization(const FractionalLaplacian& fl, const std::filesystem::path& dir);

}  // namespace gfrft

#endif  // GFRFT_SPECTRAL_HPP
