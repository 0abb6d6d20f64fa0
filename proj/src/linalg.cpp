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

#include "gfrft/linalg.hpp"

namespace gfrft {

Eigen::MatrixXcd embed_mode(const Eigen::MatrixXcd& m, std::span<const Index> dims,
                            std::size_t mode) {
  if (mode >= dims.size() || m.rows() != dims[mode] || m.cols() != dims[mode]) {
    fail(ErrorCode::Dimension, "embed_mode: operator does not match its axis");
  }
  Index before = 1;
  Index after = 1;
  for (std::size_t l = 0; l < mode; ++l) before *= dims[l];
  for (std::size_t l = mode + 1; l < dims.size(); ++l) after *= dims[l];
  Eigen::MatrixXcd out = kron(Eigen::MatrixXcd::Identity(before, before).eval(), m);
  return kron(out, Eigen::MatrixXcd::Identity(after, after).eval());
}

Eigen::MatrixXcd kronecker_sum(std::span<const Eigen::MatrixXcd> terms) {
  std::vector<Index> dims;
  for (const auto& t : terms) {
    if (t.rows() != t.cols()) fail(ErrorCode::Dimension, "kronecker_sum: operands must be square");
    dims.push_back(t.rows());
  }
  const Index n = product(dims);
  Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
  for (std::size_t l = 0; l < terms.size(); ++l) out += embed_mode(terms[l], dims, l);
  return out;
}

Eigen::VectorXcd mode_product(const Eigen::VectorXcd& data, std::vector<Index>& dims,
                              std::size_t mode, const Eigen::MatrixXcd& m) {
  if (mode >= dims.size() || m.cols() != dims[mode] || data.size() != product(dims)) {
    fail(ErrorCode::Dimension, "mode_product: shape mismatch");
  }
  Index outer = 1;
  Index inner = 1;
  for (std::size_t l = 0; l < mode; ++l) outer *= dims[l];
  for (std::size_t l = mode + 1; l < dims.size(); ++l) inner *= dims[l];
  const Index len_in = dims[mode];
  const Index len_out = m.rows();

  Eigen::VectorXcd out(outer * len_out * inner);
  for (Index o = 0; o < outer; ++o) {
    // Slab o is a column-major inner x len_in matrix; right-multiply by m^T.
    Eigen::Map<const Eigen::MatrixXcd> slab(data.data() + o * len_in * inner, inner, len_in);
    Eigen::Map<Eigen::MatrixXcd> dst(out.data() + o * len_out * inner, inner, len_out);
    dst.noalias() = slab * m.transpose();
  }
  dims[mode] = len_out;
  return out;
}

}  // namespace gfrft
