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

#include "gfrft/transform.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "gfrft/csv.hpp"
#include "gfrft/error.hpp"
#include "json.hpp"

namespace gfrft {

std::string to_string(TransformKind kind) {
  switch (kind) {
    case TransformKind::Box: return "box";
    case TransformKind::Kron: return "kron";
    case TransformKind::Dgfrft: return "dgfrft";
    case TransformKind::MBox: return "m-box";
    case TransformKind::MKron: return "m-kron";
  }
  return "unknown";
}

TransformKind parse_transform_kind(const std::string& name) {
  if (name == "box") return TransformKind::Box;
  if (name == "kron") return TransformKind::Kron;
  if (name == "dgfrft") return TransformKind::Dgfrft;
  if (name == "m-box" || name == "mbox") return TransformKind::MBox;
  if (name == "m-kron" || name == "mkron") return TransformKind::MKron;
  fail(ErrorCode::Parameter, "unknown transform '" + name + "'");
}

ProductFrequencyOrder frequency_order(std::span<const Eigen::VectorXd> factor_values) {
  if (factor_values.empty()) fail(ErrorCode::Parameter, "frequency_order: no factors");
  std::vector<Index> dims;
  for (const auto& v : factor_values) dims.push_back(v.size());
  const Index n = product(dims);

  // Enumerating linear indices in increasing order visits tuples in
  // lexicographic order, so a stable sort breaks ties lexicographically.
  Eigen::VectorXd sums(n);
  std::vector<Index> tuple(dims.size(), 0);
  for (Index lin = 0; lin < n; ++lin) {
    double s = 0.0;
    for (std::size_t l = 0; l < dims.size(); ++l) s += factor_values[l](tuple[l]);
    sums(lin) = s;
    for (std::size_t l = dims.size(); l-- > 0;) {
      if (++tuple[l] < dims[l]) break;
      tuple[l] = 0;
    }
  }
  ProductFrequencyOrder out;
  out.linear.resize(static_cast<std::size_t>(n));
  std::iota(out.linear.begin(), out.linear.end(), Index{0});
  std::stable_sort(out.linear.begin(), out.linear.end(),
                   [&](Index a, Index b) { return sums(a) < sums(b); });
  out.taus.resize(n);
  out.tuples.reserve(static_cast<std::size_t>(n));
  for (Index k = 0; k < n; ++k) {
    Index lin = out.linear[k];
    out.taus(k) = sums(lin);
    std::vector<Index> t(dims.size());
    for (std::size_t l = dims.size(); l-- > 0;) {
      t[l] = lin % dims[l];
      lin /= dims[l];
    }
    out.tuples.push_back(std::move(t));
  }
  return out;
}

ProductFrequencyOrder frequency_order(const FractionalLaplacian& f1,
                                      const FractionalLaplacian& f2) {
  const Eigen::VectorXd values[] = {f1.values(), f2.values()};
  return frequency_order(values);
}

SpectrumPair two_basis_forward(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q,
                               const Eigen::VectorXd& x) {
  if (p.rows() != x.size() || q.rows() != x.size()) {
    fail(ErrorCode::Dimension, "signal length does not match the transform");
  }
  const Eigen::VectorXcd xc = x.cast<cdouble>();
  const Eigen::VectorXcd a = p.adjoint() * xc;
  const Eigen::VectorXcd b = q.adjoint() * xc;
  SpectrumPair sp;
  sp.y1 = 0.5 * (a + b);
  sp.y2 = 0.5 * (a - b);
  return sp;
}

Eigen::VectorXcd two_basis_inverse(const Eigen::MatrixXcd& p, const Eigen::MatrixXcd& q,
                                   const SpectrumPair& sp) {
  if (sp.y1.size() != p.cols() || sp.y2.size() != q.cols()) {
    fail(ErrorCode::Dimension, "spectrum length does not match the transform");
  }
  return 0.5 * (p * (sp.y1 + sp.y2) + q * (sp.y1 - sp.y2));
}

namespace {

void require_origin(const FractionalLaplacian& fl, LaplacianOrigin origin, const char* what) {
  if (fl.origin != origin) {
    fail(ErrorCode::Parameter, std::string(what) + " needs a " + to_string(origin) +
                                   " fractional Laplacian, got " + to_string(fl.origin));
  }
}

void require_kind(const SpectrumPair& sp, TransformKind kind) {
  if (sp.kind != kind) {
    fail(ErrorCode::Parameter,
         "spectrum was produced by " + to_string(sp.kind) + ", not " + to_string(kind));
  }
}

// Two-sided evaluation with conjugate transposes: vec(P2^* X conj(P1)) = (P1 ⊗ P2)^* vec(X).
SpectrumPair kron_apply(const Eigen::MatrixXcd& p1, const Eigen::MatrixXcd& q1,
                        const Eigen::MatrixXcd& p2, const Eigen::MatrixXcd& q2,
                        const GraphSignal& x) {
  if (x.cols() != p1.rows() || x.rows() != p2.rows()) {
    fail(ErrorCode::Dimension, "signal shape must be N2 x N1");
  }
  const Eigen::MatrixXcd xc = x.cast<cdouble>();
  const Eigen::MatrixXcd z1 = xc * p1.conjugate();
  const Eigen::MatrixXcd z1t = xc * q1.conjugate();
  const Eigen::MatrixXcd z2 = p2.adjoint() * z1;
  const Eigen::MatrixXcd z2t = q2.adjoint() * z1t;
  const Eigen::MatrixXcd c1 = 0.5 * (z2 + z2t);
  const Eigen::MatrixXcd c2 = 0.5 * (z2 - z2t);
  SpectrumPair sp;
  sp.y1 = Eigen::Map<const Eigen::VectorXcd>(c1.data(), c1.size());
  sp.y2 = Eigen::Map<const Eigen::VectorXcd>(c2.data(), c2.size());
  return sp;
}

// Two-sided inverse: W1 = (Y1 + Y2) P1^T, W2 = P2 W1, likewise with Q; X = (W2 + W~2) / 2.
GraphSignal kron_unapply(const Eigen::MatrixXcd& p1, const Eigen::MatrixXcd& q1,
                         const Eigen::MatrixXcd& p2, const Eigen::MatrixXcd& q2,
                         const SpectrumPair& sp) {
  const Index n1 = p1.rows();
  const Index n2 = p2.rows();
  if (sp.y1.size() != n1 * n2 || sp.y2.size() != n1 * n2) {
    fail(ErrorCode::Dimension, "spectrum length does not match the transform");
  }
  Eigen::Map<const Eigen::MatrixXcd> y1(sp.y1.data(), n2, n1);
  Eigen::Map<const Eigen::MatrixXcd> y2(sp.y2.data(), n2, n1);
  const Eigen::MatrixXcd w1 = (y1 + y2) * p1.transpose();
  const Eigen::MatrixXcd w1t = (y1 - y2) * q1.transpose();
  const Eigen::MatrixXcd w2 = p2 * w1;
  const Eigen::MatrixXcd w2t = q2 * w1t;
  return (0.5 * (w2 + w2t)).real();
}

Eigen::VectorXcd apply_modes(Eigen::VectorXcd data, std::vector<Index> dims,
                             std::span<const FractionalLaplacian> factors, bool use_left,
                             bool adjoint) {
  for (std::size_t l = 0; l < factors.size(); ++l) {
    const Eigen::MatrixXcd& b = use_left ? factors[l].left() : factors[l].right();
    data = adjoint ? mode_product(data, dims, l, b.adjoint()) : mode_product(data, dims, l, b);
  }
  return data;
}

std::vector<Index> factor_dims(std::span<const FractionalLaplacian> factors) {
  std::vector<Index> dims;
  for (const auto& f : factors) {
    require_origin(f, LaplacianOrigin::FactorGraph, "Kronecker transform");
    dims.push_back(f.size());
  }
  return dims;
}

}  // namespace

SpectrumPair box_forward(const FractionalLaplacian& fl, const Eigen::VectorXd& x) {
  require_origin(fl, LaplacianOrigin::ProductBox, "box_forward");
  SpectrumPair sp = two_basis_forward(fl.left(), fl.right(), x);
  sp.kind = TransformKind::Box;
  sp.alpha = fl.alpha;
  return sp;
}

Eigen::VectorXd box_inverse(const FractionalLaplacian& fl, const SpectrumPair& sp) {
  require_origin(fl, LaplacianOrigin::ProductBox, "box_inverse");
  require_kind(sp, TransformKind::Box);
  return two_basis_inverse(fl.left(), fl.right(), sp).real();
}

SpectrumPair m_box_forward(const FractionalLaplacian& fl, const Eigen::VectorXd& x) {
  require_origin(fl, LaplacianOrigin::ProductM, "m_box_forward");
  SpectrumPair sp = two_basis_forward(fl.left(), fl.right(), x);
  sp.kind = TransformKind::MBox;
  sp.alpha = fl.alpha;
  return sp;
}

Eigen::VectorXd m_box_inverse(const FractionalLaplacian& fl, const SpectrumPair& sp) {
  require_origin(fl, LaplacianOrigin::ProductM, "m_box_inverse");
  require_kind(sp, TransformKind::MBox);
  return two_basis_inverse(fl.left(), fl.right(), sp).real();
}

SpectrumPair kron_forward(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                          const GraphSignal& x) {
  require_origin(f1, LaplacianOrigin::FactorGraph, "kron_forward");
  require_origin(f2, LaplacianOrigin::FactorGraph, "kron_forward");
  if (f1.alpha != f2.alpha) fail(ErrorCode::Parameter, "factors have different alpha");
  SpectrumPair sp = kron_apply(f1.left(), f1.right(), f2.left(), f2.right(), x);
  sp.kind = TransformKind::Kron;
  sp.alpha = f1.alpha;
  return sp;
}

GraphSignal kron_inverse(const FractionalLaplacian& f1, const FractionalLaplacian& f2,
                         const SpectrumPair& sp) {
  require_origin(f1, LaplacianOrigin::FactorGraph, "kron_inverse");
  require_origin(f2, LaplacianOrigin::FactorGraph, "kron_inverse");
  require_kind(sp, TransformKind::Kron);
  return kron_unapply(f1.left(), f1.right(), f2.left(), f2.right(), sp);
}

SpectrumPair m_kron_forward(std::span<const FractionalLaplacian> factors,
                            const Eigen::VectorXd& x) {
  const auto dims = factor_dims(factors);
  if (factors.size() < 2) fail(ErrorCode::Parameter, "m-fold transform needs two or more factors");
  if (x.size() != product(dims)) fail(ErrorCode::Dimension, "signal length does not match");
  const Eigen::VectorXcd xc = x.cast<cdouble>();
  const Eigen::VectorXcd a = apply_modes(xc, dims, factors, true, true);
  const Eigen::VectorXcd b = apply_modes(xc, dims, factors, false, true);
  SpectrumPair sp;
  sp.y1 = 0.5 * (a + b);
  sp.y2 = 0.5 * (a - b);
  sp.kind = TransformKind::MKron;
  sp.alpha = factors.front().alpha;
  return sp;
}

Eigen::VectorXd m_kron_inverse(std::span<const FractionalLaplacian> factors,
                               const SpectrumPair& sp) {
  const auto dims = factor_dims(factors);
  require_kind(sp, TransformKind::MKron);
  if (sp.y1.size() != product(dims) || sp.y2.size() != product(dims)) {
    fail(ErrorCode::Dimension, "spectrum length does not match the transform");
  }
  const Eigen::VectorXcd a = apply_modes(sp.y1 + sp.y2, dims, factors, true, false);
  const Eigen::VectorXcd b = apply_modes(sp.y1 - sp.y2, dims, factors, false, false);
  return (0.5 * (a + b)).real();
}

SpectrumPair hermitian_gft(const Eigen::MatrixXcd& u1, const Eigen::MatrixXcd& u2,
                           const GraphSignal& x) {
  if (x.cols() != u1.rows() || x.rows() != u2.rows()) {
    fail(ErrorCode::Dimension, "signal shape must be N2 x N1");
  }
  const Eigen::MatrixXcd y = u2.adjoint() * (x.cast<cdouble>() * u1.conjugate());
  SpectrumPair sp;
  sp.y1 = Eigen::Map<const Eigen::VectorXcd>(y.data(), y.size());
  sp.kind = TransformKind::Dgfrft;
  sp.alpha = 1.0;
  return sp;
}

SpectrumPair dgfrft_forward(const HermitianFractional& h1, const HermitianFractional& h2,
                            const GraphSignal& x) {
  SpectrumPair sp = hermitian_gft(h1.basis, h2.basis, x);
  sp.alpha = h1.alpha;
  return sp;
}

GraphSignal dgfrft_inverse(const HermitianFractional& h1, const HermitianFractional& h2,
                           const SpectrumPair& sp) {
  require_kind(sp, TransformKind::Dgfrft);
  const Index n1 = h1.size();
  const Index n2 = h2.size();
  if (sp.y1.size() != n1 * n2) fail(ErrorCode::Dimension, "spectrum length does not match");
  Eigen::Map<const Eigen::MatrixXcd> y(sp.y1.data(), n2, n1);
  return (h2.basis * y * h1.basis.transpose()).real();
}

SpectrumPair gft_box(const SpectralFactorization& product_svd, const Eigen::VectorXd& x) {
  SpectrumPair sp = two_basis_forward(product_svd.left, product_svd.right, x);
  sp.kind = TransformKind::Box;
  return sp;
}

SpectrumPair gft_kron(const SpectralFactorization& svd1, const SpectralFactorization& svd2,
                      const GraphSignal& x) {
  SpectrumPair sp = kron_apply(svd1.left, svd1.right, svd2.left, svd2.right, x);
  sp.kind = TransformKind::Kron;
  return sp;
}

TransformPlan::TransformPlan(TransformKind kind, std::span<const DirectedGraph> factors,
                             const Options& options)
    : kind_(kind), options_(options) {
  const bool pairwise =
      kind == TransformKind::Box || kind == TransformKind::Kron || kind == TransformKind::Dgfrft;
  if (pairwise && factors.size() != 2) {
    fail(ErrorCode::Parameter, to_string(kind) + " takes exactly two factor graphs");
  }
  if (!pairwise && factors.size() < 2) {
    fail(ErrorCode::Parameter, to_string(kind) + " takes at least two factor graphs");
  }
  for (const auto& g : factors) dims_.push_back(g.size());
  const FractionalOptions fopts{options.allow_any_alpha};

  if (kind == TransformKind::Dgfrft) {
    std::vector<Eigen::VectorXd> values;
    for (const auto& g : factors) {
      hermitian_.push_back(hermitian_fractional(hermitian_laplacian(g, options.q),
                                                options.alpha, fopts));
      values.push_back(hermitian_.back().values);
    }
    auto order = frequency_order(values);
    frequencies_ = std::move(order.taus);
    order_ = std::move(order.linear);
    return;
  }

  for (const auto& g : factors) {
    factors_.push_back(fractional_laplacian(laplacian(g), options.alpha, fopts));
  }
  if (kind == TransformKind::Box || kind == TransformKind::MBox) {
    product_ = kind == TransformKind::Box
                   ? product_fractional_laplacian(factors_[0], factors_[1])
                   : m_product_fractional_laplacian(factors_);
    frequencies_ = product_->values();
    order_.resize(static_cast<std::size_t>(frequencies_.size()));
    std::iota(order_.begin(), order_.end(), Index{0});
  } else {
    std::vector<Eigen::VectorXd> values;
    for (const auto& f : factors_) values.push_back(f.values());
    auto order = frequency_order(values);
    frequencies_ = std::move(order.taus);
    order_ = std::move(order.linear);
  }
}

bool TransformPlan::is_complex() const {
  if (product_ && product_->complex_power) return true;
  for (const auto& f : factors_) {
    if (f.complex_power) return true;
  }
  for (const auto& h : hermitian_) {
    if ((h.basis.imag().array() != 0.0).any()) return true;
  }
  return false;
}

SpectrumPair TransformPlan::forward(const Eigen::VectorXd& x) const {
  if (x.size() != size()) fail(ErrorCode::Dimension, "signal length does not match the plan");
  switch (kind_) {
    case TransformKind::Box: return box_forward(*product_, x);
    case TransformKind::MBox: return m_box_forward(*product_, x);
    case TransformKind::Kron:
      return kron_forward(factors_[0], factors_[1], unvec(x, dims_[1], dims_[0]));
    case TransformKind::MKron: return m_kron_forward(factors_, x);
    case TransformKind::Dgfrft:
      return dgfrft_forward(hermitian_[0], hermitian_[1], unvec(x, dims_[1], dims_[0]));
  }
  fail(ErrorCode::Parameter, "unknown transform kind");
}

Eigen::VectorXd TransformPlan::inverse(const SpectrumPair& sp) const {
  switch (kind_) {
    case TransformKind::Box: return box_inverse(*product_, sp);
    case TransformKind::MBox: return m_box_inverse(*product_, sp);
    case TransformKind::Kron: return vec(kron_inverse(factors_[0], factors_[1], sp));
    case TransformKind::MKron: return m_kron_inverse(factors_, sp);
    case TransformKind::Dgfrft: return vec(dgfrft_inverse(hermitian_[0], hermitian_[1], sp));
  }
  fail(ErrorCode::Parameter, "unknown transform kind");
}

void export_spectrum(const TransformPlan& plan, const SpectrumPair& sp,
                     const std::filesystem::path& csv_path,
                     const std::filesystem::path& json_path, std::uint64_t seed) {
  const Index n = plan.size();
  if (sp.y1.size() != n) fail(ErrorCode::Dimension, "spectrum does not match the plan");
  const bool has_y2 = sp.y2.size() == n;
  std::ostringstream out;
  out << "k,tau_or_r,y1,y2,y1_imag,y2_imag\n";
  for (Index k = 0; k < n; ++k) {
    const Index idx = plan.order()[k];
    out << k << ',' << csv::format_double(plan.frequencies()(k)) << ','
        << csv::format_double(sp.y1(idx).real()) << ','
        << (has_y2 ? csv::format_double(sp.y2(idx).real()) : "") << ','
        << csv::format_double(sp.y1(idx).imag()) << ','
        << (has_y2 ? csv::format_double(sp.y2(idx).imag()) : "") << '\n';
  }
  csv::write_text(csv_path, out.str());

  nlohmann::json meta = {
      {"transform", to_string(plan.kind())},
      {"alpha", plan.alpha()},
      {"dims", plan.dims()},
      {"n", n},
      {"complex", plan.is_complex()},
      {"seed", seed},
      {"order", "ascending frequency"},
      {"columns", {"k", "tau_or_r", "y1", "y2", "y1_imag", "y2_imag"}},
  };
  csv::write_text(json_path, meta.dump(2) + "\n");
}

}  // namespace gfrft
