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

#ifndef GFRFT_TESTS_SUPPORT_HPP
#define GFRFT_TESTS_SUPPORT_HPP

#include <cstdint>
#include <filesystem>
#include <string>

#include <Eigen/Dense>

#include "gfrft/graph.hpp"
#include "gfrft/rng.hpp"

namespace gfrft::testing {

// Random directed graph: each off-diagonal pair gets an edge with
// probability `density` and a weight in [0.5, 2].
inline DirectedGraph random_digraph(Index n, Rng& rng, double density = 0.5) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      if (i != j && rng.canonical() < density) a(i, j) = rng.uniform(0.5, 2.0);
    }
  }
  return DirectedGraph(std::move(a));
}

inline DirectedGraph random_undirected(Index n, Rng& rng, double density = 0.5) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      if (rng.canonical() < density) a(i, j) = a(j, i) = rng.uniform(0.5, 2.0);
    }
  }
  return DirectedGraph(std::move(a));
}

inline Eigen::VectorXd random_vector(Index n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (Index i = 0; i < n; ++i) v(i) = rng.uniform(-1.0, 1.0);
  return v;
}

inline Eigen::MatrixXd random_matrix(Index rows, Index cols, Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (Index c = 0; c < cols; ++c) {
    for (Index r = 0; r < rows; ++r) m(r, c) = rng.uniform(-1.0, 1.0);
  }
  return m;
}

inline Eigen::Matrix2d rotation(double theta) {
  Eigen::Matrix2d r;
  r << std::cos(theta), -std::sin(theta), std::sin(theta), std::cos(theta);
  return r;
}

template <typename A, typename B>
double max_abs_diff(const A& a, const B& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("gfrft_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace gfrft::testing

#endif  // GFRFT_TESTS_SUPPORT_HPP
