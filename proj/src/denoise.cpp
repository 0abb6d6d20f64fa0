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

#include "gfrft/denoise.hpp"

#include <cmath>
#include <vector>

#include "gfrft/error.hpp"
#include "gfrft/rng.hpp"

namespace gfrft {

GraphSignal add_uniform_noise(const GraphSignal& x, const NoiseSpec& spec) {
  if (!(spec.epsilon >= 0.0)) fail(ErrorCode::Parameter, "noise epsilon must be nonnegative");
  if (spec.epsilon > spec.max_epsilon) {
    fail(ErrorCode::Parameter, "noise epsilon exceeds the configured maximum");
  }
  if (spec.epsilon == 0.0) return x;
  Rng rng(spec.seed);
  GraphSignal out = x;
  for (Index j = 0; j < x.cols(); ++j) {
    for (Index i = 0; i < x.rows(); ++i) out(i, j) += rng.uniform(-spec.epsilon, spec.epsilon);
  }
  return out;
}

namespace {

void check_omega(Index omega, Index n) {
  if (omega < 1 || omega > n) {
    fail(ErrorCode::Parameter,
         "omega must lie in [1, " + std::to_string(n) + "], got " + std::to_string(omega));
  }
}

std::vector<Index> dims_of(std::span<const Eigen::MatrixXcd> bases) {
  std::vector<Index> dims;
  for (const auto& b : bases) dims.push_back(b.rows());
  return dims;
}

// Coefficients of x in the product basis B_1 ⊗ ... ⊗ B_m, masked to `keep`,
// mapped back.
Eigen::VectorXcd kron_project(std::span<const Eigen::MatrixXcd> bases,
                              const Eigen::VectorXcd& x, std::span<const Index> keep) {
  std::vector<Index> dims = dims_of(bases);
  Eigen::VectorXcd c = x;
  for (std::size_t l = 0; l < bases.size(); ++l) c = mode_product(c, dims, l, bases[l].adjoint());
  Eigen::VectorXcd masked = Eigen::VectorXcd::Zero(c.size());
  for (Index idx : keep) masked(idx) = c(idx);
  for (std::size_t l = 0; l < bases.size(); ++l) masked = mode_product(masked, dims, l, bases[l]);
  return masked;
}

Eigen::VectorXcd two_kron_project(std::span<const FractionalLaplacian> factors,
                                  const Eigen::VectorXd& xhat, Index omega) {
  std::vector<Eigen::MatrixXcd> p;
  std::vector<Eigen::MatrixXcd> q;
  std::vector<Eigen::VectorXd> values;
  for (const auto& f : factors) {
    p.push_back(f.left());
    q.push_back(f.right());
    values.push_back(f.values());
  }
  if (xhat.size() != product(dims_of(p))) fail(ErrorCode::Dimension, "signal length mismatch");
  const auto order = frequency_order(values);
  check_omega(omega, order.size());
  const std::span<const Index> keep(order.linear.data(), static_cast<std::size_t>(omega));
  const Eigen::VectorXcd xc = xhat.cast<cdouble>();
  return 0.5 * (kron_project(p, xc, keep) + kron_project(q, xc, keep));
}

Eigen::VectorXcd apply_embedded(const Eigen::MatrixXcd& m, std::span<const Index> dims,
                                std::size_t mode, const Eigen::VectorXcd& x) {
  std::vector<Index> d(dims.begin(), dims.end());
  return mode_product(x, d, mode, m);
}

// Σ_l ‖(I ⊗ L_l ⊗ I) x‖ + ‖(I ⊗ L_l^* ⊗ I) x‖.
double kron_term_sum(std::span<const Eigen::MatrixXcd> terms, std::span<const Index> dims,
                     const Eigen::VectorXd& x) {
  const Eigen::VectorXcd xc = x.cast<cdouble>();
  double s = 0.0;
  for (std::size_t l = 0; l < terms.size(); ++l) {
    s += apply_embedded(terms[l], dims, l, xc).norm();
    s += apply_embedded(terms[l].adjoint(), dims, l, xc).norm();
  }
  return s;
}

bool is_vacuous(double cutoff, double scale) {
  return !(cutoff > 1e-12 * std::max(1.0, scale));
}

}  // namespace

Eigen::VectorXcd project_box(const FractionalLaplacian& fl, const Eigen::VectorXd& xhat,
                             Index omega) {
  if (xhat.size() != fl.size()) fail(ErrorCode::Dimension, "signal length mismatch");
  check_omega(omega, fl.size());
  const auto p = fl.left().leftCols(omega);
  const auto q = fl.right().leftCols(omega);
  const Eigen::VectorXcd xc = xhat.cast<cdouble>();
  const Eigen::VectorXcd a = p.adjoint() * xc;
  const Eigen::VectorXcd b = q.adjoint() * xc;
  return 0.5 * (p * a + q * b);
}

Eigen::VectorXd bandlimit_box(const FractionalLaplacian& fl, const Eigen::VectorXd& xhat,
                              Index omega) {
  return project_box(fl, xhat, omega).real();
}

GraphSignal bandlimit_kron(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                           const GraphSignal& xhat, Index omega) {
  if (xhat.cols() != f1.size() || xhat.rows() != f2.size()) {
    fail(ErrorCode::Dimension, "signal shape must be N2 x N1");
  }
  const FractionalLaplacian factors[] = {f1, f2};
  const Eigen::VectorXd out = two_kron_project(factors, vec(xhat), omega).real();
  return unvec(out, xhat.rows(), xhat.cols());
}

Eigen::VectorXcd project_m_kron(std::span<const FractionalLaplacian> factors,
                                const Eigen::VectorXd& xhat, Index omega) {
  return two_kron_project(factors, xhat, omega);
}

Eigen::VectorXd bandlimit_m_kron(std::span<const FractionalLaplacian> factors,
                                 const Eigen::VectorXd& xhat, Index omega) {
  return project_m_kron(factors, xhat, omega).real();
}

Eigen::VectorXcd project_dgfrft(const HermitianFractional& h1, const HermitianFractional& h2,
                                const GraphSignal& xhat, Index omega) {
  if (xhat.cols() != h1.size() || xhat.rows() != h2.size()) {
    fail(ErrorCode::Dimension, "signal shape must be N2 x N1");
  }
  const Eigen::VectorXd values[] = {h1.values, h2.values};
  const auto order = frequency_order(values);
  check_omega(omega, order.size());
  const Eigen::MatrixXcd bases[] = {h1.basis, h2.basis};
  return kron_project(bases, vec(xhat).cast<cdouble>(),
                      std::span<const Index>(order.linear.data(), static_cast<std::size_t>(omega)));
}

GraphSignal bandlimit_dgfrft(const HermitianFractional& h1, const HermitianFractional& h2,
                             const GraphSignal& xhat, Index omega) {
  const Eigen::VectorXd out = project_dgfrft(h1, h2, xhat, omega).real();
  return unvec(out, xhat.rows(), xhat.cols());
}

Eigen::VectorXd bandlimit(const TransformPlan& plan, const Eigen::VectorXd& xhat, Index omega) {
  if (xhat.size() != plan.size()) fail(ErrorCode::Dimension, "signal length mismatch");
  const auto& dims = plan.dims();
  switch (plan.kind()) {
    case TransformKind::Box:
    case TransformKind::MBox: return bandlimit_box(*plan.product_laplacian(), xhat, omega);
    case TransformKind::Kron:
    case TransformKind::MKron: return bandlimit_m_kron(plan.factor_laplacians(), xhat, omega);
    case TransformKind::Dgfrft: {
      const auto& h = plan.hermitian_factors();
      return vec(bandlimit_dgfrft(h[0], h[1], unvec(xhat, dims[1], dims[0]), omega));
    }
  }
  fail(ErrorCode::Parameter, "unknown transform kind");
}

DenoiseMetrics metrics(const Eigen::MatrixXd& x, const Eigen::MatrixXd& xhat,
                       const Eigen::MatrixXd& xtilde) {
  if (xhat.rows() != x.rows() || xhat.cols() != x.cols() || xtilde.rows() != x.rows() ||
      xtilde.cols() != x.cols()) {
    fail(ErrorCode::Dimension, "metrics: shapes differ");
  }
  const double ref = x.norm();
  if (ref == 0.0) fail(ErrorCode::Reference, "metrics: reference signal has zero norm");
  auto db = [ref](double err) {
    return err == 0.0 ? kInfiniteSnr : -20.0 * std::log10(err / ref);
  };
  DenoiseMetrics m;
  m.isnr = db((xhat - x).norm());
  m.snr = db((xtilde - x).norm());
  m.bae = x.size() == 0 ? 0.0 : (xtilde - x).cwiseAbs().maxCoeff();
  return m;
}

double energy_fraction(const SpectrumPair& sp, std::span<const Index> order, Index omega) {
  const Index n = sp.y1.size();
  check_omega(omega, n);
  if (static_cast<Index>(order.size()) != n) fail(ErrorCode::Dimension, "order length mismatch");
  const double total = sp.squared_norm();
  if (total == 0.0) return 1.0;
  const bool has_y2 = sp.y2.size() == n;
  double low = 0.0;
  for (Index k = 0; k < omega; ++k) {
    const Index idx = order[static_cast<std::size_t>(k)];
    low += std::norm(sp.y1(idx));
    if (has_y2) low += std::norm(sp.y2(idx));
  }
  return low / total;
}

BoundCheck theorem_bound_box(const FractionalLaplacian& product, const Eigen::VectorXd& x,
                             Index omega) {
  if (product.origin == LaplacianOrigin::FactorGraph) {
    fail(ErrorCode::Parameter, "theorem_bound_box needs a product fractional Laplacian");
  }
  BoundCheck b;
  b.lhs = (x.cast<cdouble>() - project_box(product, x, omega)).norm();
  b.cutoff = product.values()(omega - 1);
  b.vacuous = is_vacuous(b.cutoff, product.values().maxCoeff());
  if (b.vacuous) {
    b.rhs_tight = b.rhs_kron = std::numeric_limits<double>::infinity();
    return b;
  }
  const Eigen::VectorXcd xc = x.cast<cdouble>();
  b.rhs_tight = ((product.matrix * xc).norm() + (product.matrix.adjoint() * xc).norm()) /
                (2.0 * b.cutoff);
  b.rhs_kron = kron_term_sum(product.factor_matrices, product.dims, x) / (2.0 * b.cutoff);
  b.holds = b.lhs <= b.rhs_tight + 1e-9 && b.lhs <= b.rhs_kron + 1e-9;
  return b;
}

BoundCheck theorem_bound_kron(std::span<const FractionalLaplacian> factors,
                              const Eigen::VectorXd& x, Index omega) {
  std::vector<Eigen::VectorXd> values;
  std::vector<Eigen::MatrixXcd> terms;
  std::vector<Index> dims;
  double scale = 0.0;
  for (const auto& f : factors) {
    values.push_back(f.values());
    terms.push_back(f.matrix);
    dims.push_back(f.size());
    scale += f.values().maxCoeff();
  }
  BoundCheck b;
  b.lhs = (x.cast<cdouble>() - project_m_kron(factors, x, omega)).norm();
  b.cutoff = frequency_order(values).taus(omega - 1);
  b.vacuous = is_vacuous(b.cutoff, scale);
  if (b.vacuous) {
    b.rhs_kron = std::numeric_limits<double>::infinity();
    return b;
  }
  b.rhs_kron = kron_term_sum(terms, dims, x) / (2.0 * b.cutoff);
  b.holds = b.lhs <= b.rhs_kron + 1e-9;
  return b;
}

}  // namespace gfrft
