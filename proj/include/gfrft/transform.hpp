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

#ifndef GFRFT_TRANSFORM_HPP
#define GFRFT_TRANSFORM_HPP

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfrft/graph.hpp"
#include "gfrft/spectral.hpp"

namespace gfrft {

// A product-graph signal is an N2 x N1 matrix X (rows index G2 vertices,
// columns index G1 vertices) or its column-major vectorisation of length
// N1 * N2. For m factors the vector is the tensor with the last factor's axis
// fastest, which matches P_1 ⊗ ... ⊗ P_m.
using GraphSignal = Eigen::MatrixXd;

enum class TransformKind { Box, Kron, Dgfrft, MBox, MKron };

std::string to_string(TransformKind kind);
TransformKind parse_transform_kind(const std::string& name);

struct SpectrumPair {
  Eigen::VectorXcd y1;
  /// Empty for the single-component DGFRFT.
  Eigen::VectorXcd y2;
  TransformKind kind = TransformKind::Box;
  double alpha = 1.0;

  double squared_norm() const { return y1.squaredNorm() + y2.squaredNorm(); }
};

/// Frequencies of a Kronecker-structured transform: every sum of factor
/// frequencies, ascending, ties broken lexicographically by index tuple.
struct ProductFrequencyOrder {
  Eigen::VectorXd taus;
  std::vector<std::vector<Index>> tuples;
  /// Position of each tuple in the vectorised spectrum.
  std::vector<Index> linear;

  Index size() const { return taus.size(); }
};

ProductFrequencyOrder frequency_order(std::span<const Eigen::VectorXd> factor_values);
ProductFrequencyOrder frequency_order(const FractionalLaplacian& f1,
                                      const FractionalLaplacian& f2);

// y1 = (P + Q)^* x / 2, y2 = (P - Q)^* x / 2 for an N x N pair of bases.
SpectrumPair two_basis_forward(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q,
                               const Eigen::VectorXd& x);
// (P (y1 + y2) + Q (y1 - y2)) / 2.
Eigen::VectorXcd two_basis_inverse(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q,
                                   const SpectrumPair& sp);

SpectrumPair box_forward(const FractionalLaplacian& fl, const Eigen::VectorXd& x);
Eigen::VectorXd box_inverse(const FractionalLaplacian& fl, const SpectrumPair& sp);

/// Two-sided fast path: Z1 = X P1, Z2 = P2^* Z1 (and likewise with Q),
/// never forming P1 ⊗ P2.
SpectrumPair kron_forward(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                          const GraphSignal& x);
GraphSignal kron_inverse(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                         const SpectrumPair& sp);

SpectrumPair m_box_forward(const FractionalLaplacian& fl, const Eigen::VectorXd& x);
Eigen::VectorXd m_box_inverse(const FractionalLaplacian& fl, const SpectrumPair& sp);

/// Mode-by-mode application of (P_1 ⊗ ... ⊗ P_m)^*.
SpectrumPair m_kron_forward(std::span<const FractionalLaplacian> factors,
                            const Eigen::VectorXd& x);
Eigen::VectorXd m_kron_inverse(std::span<const FractionalLaplacian> factors,
                               const SpectrumPair& sp);

/// y = (P_1q ⊗ P_2q)^* vec(X), complex.
SpectrumPair dgfrft_forward(const HermitianFractional& h1, const HermitianFractional& h2,
                            const GraphSignal& x);
GraphSignal dgfrft_inverse(const HermitianFractional& h1, const HermitianFractional& h2,
                           const SpectrumPair& sp);

// Integer-order transforms built directly from SVD / eigen bases.
SpectrumPair gft_box(const SpectralFactorization& product_svd, const Eigen::VectorXd& x);
SpectrumPair gft_kron(const SpectralFactorization& svd1, const SpectralFactorization& svd2,
                      const GraphSignal& x);
SpectrumPair hermitian_gft(const Eigen::MatrixXcd& u1, const Eigen::MatrixXcd& u2,
                           const GraphSignal& x);

/// Precomputed frequency components for one transform over G1 ⊠ ... ⊠ Gm.
/// Owns every factorization it needs; forward/inverse/bandlimit take the
/// vectorised signal.
class TransformPlan {
 public:
  struct Options {
    double alpha = 0.7;
    double q = 0.5;
    bool allow_any_alpha = false;
  };

  TransformPlan(TransformKind kind, std::span<const DirectedGraph> factors,
                const Options& options);

  TransformKind kind() const { return kind_; }
  double alpha() const { return options_.alpha; }
  const std::vector<Index>& dims() const { return dims_; }
  Index size() const { return product(dims_); }
  bool is_complex() const;

  SpectrumPair forward(const Eigen::VectorXd& x) const;
  Eigen::VectorXd inverse(const SpectrumPair& sp) const;

  /// Ascending frequencies and the spectrum position of each.
  const Eigen::VectorXd& frequencies() const { return frequencies_; }
  const std::vector<Index>& order() const { return order_; }

  const std::vector<FractionalLaplacian>& factor_laplacians() const { return factors_; }
  const std::optional<FractionalLaplacian>& product_laplacian() const { return product_; }
  const std::vector<HermitianFractional>& hermitian_factors() const { return hermitian_; }

 private:
  TransformKind kind_;
  Options options_;
  std::vector<Index> dims_;
  std::vector<FractionalLaplacian> factors_;
  std::optional<FractionalLaplacian> product_;
  std::vector<HermitianFractional> hermitian_;
  Eigen::VectorXd frequencies_;
  std::vector<Index> order_;
};

/// CSV with columns k,tau_or_r,y1,y2,y1_imag,y2_imag in ascending frequency
/// order plus a JSON metadata file.
void export_spectrum(const TransformPlan& plan, const SpectrumPair& sp,
                     const std::filesystem::path& csv_path,
                     const std::filesystem::path& json_path, std::uint64_t seed = 0);

}  // namespace gfrft

#endif  // GFRFT_TRANSFORM_HPP
