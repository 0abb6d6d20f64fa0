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

#ifndef GFRFT_LINALG_HPP
#define GFRFT_LINALG_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "gfrft/error.hpp"

namespace gfrft {

using Index = Eigen::Index;
using cdouble = std::complex<double>;

/// Kronecker product A ⊗ B.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kron(
    const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> out(a.rows() * b.rows(),
                                                            a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i) {
    for (Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          a(i, j) * b.template cast<Scalar>();
    }
  }
  return out;
}

/// Kronecker sum M1 ⊕ M2 = M1 ⊗ I + I ⊗ M2. Both operands must be square.
template <typename DerivedA, typename DerivedB>
Eigen::Matrix<typename DerivedA::Scalar, Eigen::Dynamic, Eigen::Dynamic> kronecker_sum(
    const Eigen::MatrixBase<DerivedA>& m1, const Eigen::MatrixBase<DerivedB>& m2) {
  using Scalar = typename DerivedA::Scalar;
  using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
  if (m1.rows() != m1.cols() || m2.rows() != m2.cols()) {
    fail(ErrorCode::Dimension, "kronecker_sum: operands must be square");
  }
  const Index n1 = m1.rows();
  const Index n2 = m2.rows();
  Mat out = kron(m1, Mat::Identity(n2, n2));
  for (Index i = 0; i < n1; ++i) {
    out.block(i * n2, i * n2, n2, n2) += m2.template cast<Scalar>();
  }
  return out;
}

/// Sum over l of I ⊗ M_l ⊗ I, with M_l in the l-th slot.
Eigen::MatrixXcd kronecker_sum(std::span<const Eigen::MatrixXcd> terms);

/// I_{before} ⊗ M ⊗ I_{after}, where before/after are products of the
/// dimensions preceding and following `mode`.
Eigen::MatrixXcd embed_mode(const Eigen::MatrixXcd& m, std::span<const Index> dims,
                            std::size_t mode);

/// Applies `m` along axis `mode` of the tensor stored in `data` with shape
/// `dims` (last axis fastest, i.e. the layout of a Kronecker product
/// A_1 ⊗ ... ⊗ A_m acting on a vector). The axis length may change from
/// m.cols() to m.rows(); `dims` is updated accordingly.
Eigen::VectorXcd mode_product(const Eigen::VectorXcd& data, std::vector<Index>& dims,
                              std::size_t mode, const Eigen::MatrixXcd& m);

/// Column-major vectorisation of a matrix.
inline Eigen::VectorXd vec(const Eigen::MatrixXd& x) {
  return Eigen::Map<const Eigen::VectorXd>(x.data(), x.size());
}

inline Eigen::MatrixXd unvec(const Eigen::VectorXd& v, Index rows, Index cols) {
  if (v.size() != rows * cols) {
    fail(ErrorCode::Dimension, "unvec: length does not match shape");
  }
  return Eigen::Map<const Eigen::MatrixXd>(v.data(), rows, cols);
}

inline Index product(std::span<const Index> dims) {
  Index n = 1;
  for (Index d : dims) n *= d;
  return n;
}

}  // namespace gfrft

#endif  // GFRFT_LINALG_HPP
