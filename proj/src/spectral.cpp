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

#include "gfrft/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "gfrft/csv.hpp"
#include "gfrft/error.hpp"
#include "json.hpp"

namespace gfrft {

namespace {

// Index of the largest-magnitude entry, lowest index among near-ties.
Index pivot_index(const Eigen::Ref<const Eigen::VectorXcd>& v) {
  const double peak = v.cwiseAbs().maxCoeff();
  for (Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - 1e-12)) return i;
  }
  return 0;
}

// Rotates each column of `left` so its pivot entry is real and nonnegative,
// applying the same unit factor to the matching column of `right`.
void normalize_phases(Eigen::MatrixXcd& left, Eigen::MatrixXcd* right) {
  for (Index k = 0; k < left.cols(); ++k) {
    const cdouble pivot = left(pivot_index(left.col(k)), k);
    const double mag = std::abs(pivot);
    if (mag == 0.0) continue;
    const cdouble unit = std::conj(pivot) / mag;
    if (unit == cdouble(1.0, 0.0)) continue;
    left.col(k) *= unit;
    if (right != nullptr) right->col(k) *= unit;
  }
}

std::vector<Index> ascending_order(const Eigen::VectorXd& values) {
  std::vector<Index> order(static_cast<std::size_t>(values.size()));
  std::iota(order.begin(), order.end(), Index{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Index a, Index b) { return values(a) < values(b); });
  return order;
}

template <typename Mat>
Mat permute_columns(const Mat& m, const std::vector<Index>& order) {
  Mat out(m.rows(), m.cols());
  for (std::size_t k = 0; k < order.size(); ++k) out.col(k) = m.col(order[k]);
  return out;
}

Eigen::VectorXd permute(const Eigen::VectorXd& v, const std::vector<Index>& order) {
  Eigen::VectorXd out(v.size());
  for (std::size_t k = 0; k < order.size(); ++k) out(k) = v(order[k]);
  return out;
}

bool has_zero_imag(const Eigen::MatrixXcd& m) { return (m.imag().array() == 0.0).all(); }

// Singular values at or below n * eps * max are set to exactly zero, so that
// fractional powers keep 0^α = 0 instead of amplifying rounding noise.
Index clamp_null_values(Eigen::VectorXd& values) {
  if (values.size() == 0) return 0;
  const double tol = static_cast<double>(values.size()) *
                     std::numeric_limits<double>::epsilon() * values.maxCoeff();
  Index zeros = 0;
  for (Index i = 0; i < values.size(); ++i) {
    if (values(i) <= tol) {
      values(i) = 0.0;
      ++zeros;
    }
  }
  return zeros;
}

// Any unitary mix of the right null vectors leaves M = U Σ V^* intact. Rotate
// them onto the left null vectors (orthogonal Procrustes) so that symmetric
// inputs get U = V on the null space too.
void align_null_space(const Eigen::MatrixXcd& left, Eigen::MatrixXcd& right, Index zeros) {
  if (zeros == 0) return;
  if (has_zero_imag(left) && has_zero_imag(right)) {
    const Eigen::MatrixXd vn = right.leftCols(zeros).real();
    const Eigen::MatrixXd c = vn.transpose() * left.leftCols(zeros).real();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
    right.leftCols(zeros) = (vn * svd.matrixU() * svd.matrixV().transpose()).cast<cdouble>();
    return;
  }
  const Eigen::MatrixXcd c = right.leftCols(zeros).adjoint() * left.leftCols(zeros);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(c, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const Eigen::MatrixXcd w = svd.matrixU() * svd.matrixV().adjoint();
  right.leftCols(zeros) = (right.leftCols(zeros) * w).eval();
}

void write_matrix_csv(const Eigen::MatrixXd& m, const std::filesystem::path& path) {
  std::ostringstream out;
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) {
      if (c) out << ',';
      out << csv::format_double(m(r, c));
    }
    out << '\n';
  }
  csv::write_text(path, out.str());
}

double check_alpha(double alpha, const FractionalOptions& options) {
  if (!std::isfinite(alpha)) fail(ErrorCode::Parameter, "alpha must be finite");
  if (!options.allow_any_alpha && !(alpha > 0.0 && alpha <= 1.0)) {
    fail(ErrorCode::Parameter, "alpha must lie in (0, 1]");
  }
  return alpha;
}

double power_value(double v, double alpha) {
  if (v <= 0.0) return 0.0;
  return std::pow(v, alpha);
}

}  // namespace

Eigen::MatrixXcd SpectralFactorization::reconstruct() const {
  return left * values.cast<cdouble>().asDiagonal() * right.adjoint();
}

SpectralFactorization svd_ascending(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::Dimension, "svd_ascending: matrix must be square");
  if (!m.allFinite()) fail(ErrorCode::Input, "svd_ascending: non-finite entries");
  Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto order = ascending_order(svd.singularValues());
  SpectralFactorization f;
  f.values = permute(svd.singularValues(), order);
  f.left = permute_columns(Eigen::MatrixXd(svd.matrixU()), order).cast<cdouble>();
  f.right = permute_columns(Eigen::MatrixXd(svd.matrixV()), order).cast<cdouble>();
  normalize_phases(f.left, &f.right);
  align_null_space(f.left, f.right, clamp_null_values(f.values));
  f.is_real = true;
  return f;
}

SpectralFactorization svd_ascending(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) fail(ErrorCode::Dimension, "svd_ascending: matrix must be square");
  if (!m.allFinite()) fail(ErrorCode::Input, "svd_ascending: non-finite entries");
  if (has_zero_imag(m)) return svd_ascending(Eigen::MatrixXd(m.real()));
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto order = ascending_order(svd.singularValues());
  SpectralFactorization f;
  f.values = permute(svd.singularValues(), order);
  f.left = permute_columns(Eigen::MatrixXcd(svd.matrixU()), order);
  f.right = permute_columns(Eigen::MatrixXcd(svd.matrixV()), order);
  normalize_phases(f.left, &f.right);
  align_null_space(f.left, f.right, clamp_null_values(f.values));
  f.is_real = has_zero_imag(f.left) && has_zero_imag(f.right);
  return f;
}

MatrixPower orthogonal_fractional_power(const Eigen::MatrixXcd& m, double alpha) {
  if (m.rows() != m.cols()) fail(ErrorCode::Dimension, "matrix power: matrix must be square");
  const Index n = m.rows();
  const double deviation =
      (m.adjoint() * m - Eigen::MatrixXcd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(deviation <= 1e-8)) {
    fail(ErrorCode::Precondition, "matrix power: input is not unitary");
  }
  MatrixPower out;
  if (alpha == 1.0) {
    out.value = m;
    out.is_complex = !has_zero_imag(m);
    return out;
  }

  Eigen::ComplexSchur<Eigen::MatrixXcd> schur(m);
  const Eigen::MatrixXcd& z = schur.matrixU();
  Eigen::VectorXcd phases(n);
  for (Index j = 0; j < n; ++j) {
    const cdouble lambda = schur.matrixT()(j, j);
    double theta = std::arg(lambda);
    if (std::abs(lambda + 1.0) < 1e-9) {
      theta = std::numbers::pi;
      out.negative_unit_eigenvalue = true;
    }
    phases(j) = std::polar(1.0, alpha * theta);
  }
  out.value = z * phases.asDiagonal() * z.adjoint();

  const double re = out.value.real().norm();
  const double im = out.value.imag().norm();
  if (im < 1e-8 * re) {
    out.value = out.value.real().cast<cdouble>();
  } else {
    out.is_complex = true;
  }
  return out;
}

std::string to_string(LaplacianOrigin origin) {
  switch (origin) {
    case LaplacianOrigin::FactorGraph: return "factor-graph";
    case LaplacianOrigin::ProductBox: return "product-box";
    case LaplacianOrigin::ProductM: return "product-m";
  }
  return "unknown";
}

FractionalLaplacian fractional_laplacian(const Eigen::MatrixXd& laplacian, double alpha,
                                         const FractionalOptions& options) {
  check_alpha(alpha, options);
  SpectralFactorization svd = svd_ascending(laplacian);

  FractionalLaplacian fl;
  fl.alpha = alpha;
  fl.origin = LaplacianOrigin::FactorGraph;
  fl.dims = {laplacian.rows()};
  if (alpha == 1.0) {
    fl.matrix = laplacian.cast<cdouble>();
    fl.factorization = std::move(svd);
    return fl;
  }

  MatrixPower p = orthogonal_fractional_power(svd.left, alpha);
  MatrixPower q = orthogonal_fractional_power(svd.right, alpha);
  Eigen::VectorXd r(svd.values.size());
  for (Index i = 0; i < r.size(); ++i) r(i) = power_value(svd.values(i), alpha);

  // Only a negative alpha (override) can reverse the order.
  const auto order = ascending_order(r);
  fl.factorization.values = permute(r, order);
  fl.factorization.left = permute_columns(p.value, order);
  fl.factorization.right = permute_columns(q.value, order);
  fl.factorization.is_real = !p.is_complex && !q.is_complex;
  fl.complex_power = p.is_complex || q.is_complex;
  fl.matrix = fl.factorization.reconstruct();
  if (!fl.complex_power) fl.matrix = fl.matrix.real().cast<cdouble>();
  return fl;
}

namespace {

FractionalLaplacian assemble_product(std::span<const FractionalLaplacian> factors,
                                     LaplacianOrigin origin) {
  const double alpha = factors.front().alpha;
  FractionalLaplacian fl;
  fl.alpha = alpha;
  fl.origin = origin;
  bool complex_factor = false;
  for (const auto& f : factors) {
    if (f.origin != LaplacianOrigin::FactorGraph) {
      fail(ErrorCode::Parameter, "product factors must be factor-graph Laplacians");
    }
    if (f.alpha != alpha) fail(ErrorCode::Parameter, "product factors have different alpha");
    fl.dims.push_back(f.size());
    fl.factor_matrices.push_back(f.matrix);
    complex_factor = complex_factor || f.complex_power;
  }
  fl.matrix = kronecker_sum(std::span<const Eigen::MatrixXcd>(fl.factor_matrices));
  fl.factorization = svd_ascending(fl.matrix);
  fl.complex_power = complex_factor || !fl.factorization.is_real;
  return fl;
}

}  // namespace

FractionalLaplacian product_fractional_laplacian(const FractionalLaplacian& f1,
                                                 const FractionalLaplacian& f2) {
  const FractionalLaplacian pair[] = {f1, f2};
  return assemble_product(pair, LaplacianOrigin::ProductBox);
}

FractionalLaplacian m_product_fractional_laplacian(
    std::span<const FractionalLaplacian> factors) {
  if (factors.size() < 2) fail(ErrorCode::Parameter, "m-fold product needs at least two factors");
  return assemble_product(factors, LaplacianOrigin::ProductM);
}

HermitianFractional hermitian_fractional(const HermitianLaplacian& lq, double alpha,
                                         const FractionalOptions& options) {
  check_alpha(alpha, options);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(lq.matrix);
  if (es.info() != Eigen::Success) fail(ErrorCode::Numeric, "Hermitian eigensolver failed");

  HermitianFractional hf;
  hf.q = lq.q;
  hf.alpha = alpha;
  hf.eigenvalues = es.eigenvalues();
  const double scale = std::max(1.0, hf.eigenvalues.cwiseAbs().maxCoeff());
  const double tol = static_cast<double>(hf.eigenvalues.size()) *
                     std::numeric_limits<double>::epsilon() * scale;
  for (Index i = 0; i < hf.eigenvalues.size(); ++i) {
    if (hf.eigenvalues(i) < -1e-10 * scale) {
      fail(ErrorCode::Input, "Hermitian Laplacian is not positive semidefinite");
    }
    if (hf.eigenvalues(i) <= tol) hf.eigenvalues(i) = 0.0;
  }
  hf.eigenvectors = es.eigenvectors();
  normalize_phases(hf.eigenvectors, nullptr);

  hf.values.resize(hf.eigenvalues.size());
  for (Index i = 0; i < hf.values.size(); ++i) hf.values(i) = power_value(hf.eigenvalues(i), alpha);
  hf.basis = alpha == 1.0 ? hf.eigenvectors
                          : orthogonal_fractional_power(hf.eigenvectors, alpha).value;
  return hf;
}

void export_factorization(const FractionalLaplacian& fl, const std::filesystem::path& dir) {
  const auto& f = fl.factorization;
  write_matrix_csv(f.left.real(), dir / "P.csv");
  write_matrix_csv(f.values, dir / "R.csv");
  write_matrix_csv(f.right.real(), dir / "Q.csv");
  if (!f.is_real) {
    write_matrix_csv(f.left.imag(), dir / "P_imag.csv");
    write_matrix_csv(f.right.imag(), dir / "Q_imag.csv");
  }
  nlohmann::json meta = {
      {"alpha", fl.alpha},
      {"origin", to_string(fl.origin)},
      {"dims", fl.dims},
      {"complex", !f.is_real},
      {"sign_convention_version", kSignConventionVersion},
      {"tolerances", {{"orthonormality", 1e-10}, {"reconstruction_rel_frobenius", 1e-9}}},
  };
  csv::write_text(dir / "factorization.json", meta.dump(2) + "\n");
}

}  // namespace gfrft
