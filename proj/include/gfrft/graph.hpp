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

#ifndef GFRFT_GRAPH_HPP
#define GFRFT_GRAPH_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gfrft/linalg.hpp"

namespace gfrft {

using EdgeMask = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>;

/// Weighted directed graph on n vertices. adjacency(m, n) is the weight of
/// the edge m -> n, zero when absent. Weights are finite and nonnegative and
/// the diagonal is zero. The edge set defaults to the nonzero weights; an
/// explicit mask keeps zero-weight edges.
class DirectedGraph {
 public:
  explicit DirectedGraph(Eigen::MatrixXd adjacency);
  DirectedGraph(Eigen::MatrixXd adjacency, EdgeMask edges);

  static DirectedGraph edgeless(Index n);
  /// Unweighted directed line 0 -> 1 -> ... -> n-1.
  static DirectedGraph directed_path(Index n);

  Index size() const { return adjacency_.rows(); }
  const Eigen::MatrixXd& adjacency() const { return adjacency_; }
  const EdgeMask& edges() const { return edges_; }
  bool has_edge(Index m, Index n) const { return edges_(m, n); }
  Index edge_count() const { return edges_.count(); }

 private:
  Eigen::MatrixXd adjacency_;
  EdgeMask edges_;
};

/// L = D - A with D the out-degree (row sum) diagonal, so L * 1 = 0.
Eigen::MatrixXd laplacian(const DirectedGraph& g);

/// A1 ⊕ A2.
Eigen::MatrixXd product_adjacency(const DirectedGraph& g1, const DirectedGraph& g2);

/// Entries (a_mn + a_nm) / 2.
Eigen::MatrixXd symmetrized_adjacency(const DirectedGraph& g);
/// Undirected version with edge set E u E^T.
DirectedGraph symmetrize(const DirectedGraph& g);

struct HermitianLaplacian {
  Eigen::MatrixXcd matrix;
  double q = 0.5;
};

/// Magnetic Laplacian L_q = D_s - Γ_q ⊙ A_s with
/// Γ_q(m, n) = exp(i 2π q (a_mn - a_nm)).
HermitianLaplacian hermitian_laplacian(const DirectedGraph& g, double q = 0.5);

struct StationTable {
  std::vector<std::string> ids;
  std::vector<double> lat;  // degrees
  std::vector<double> lon;  // degrees

  Index size() const { return static_cast<Index>(ids.size()); }
  /// Throws Reference when the id is unknown.
  Index index_of(const std::string& id) const;
  /// Checks unique ids and finite coordinates.
  void validate() const;
};

/// Great-circle distance on a sphere of radius 6371 km.
double haversine_km(double lat1, double lon1, double lat2, double lon2);

enum class WeightScheme { W1, W2, W3 };

std::string to_string(WeightScheme scheme);
WeightScheme parse_weight_scheme(const std::string& name);

struct KnnOptions {
  Index k = 5;
  WeightScheme scheme = WeightScheme::W1;
  std::uint64_t seed = 0;
  /// Forces every perturbation u(i, j) to zero.
  bool zero_perturbation = false;
};

/// For every station i adds an edge j -> i from each of its k geodesically
/// nearest stations j. Weights:
///   w1 = 1 + u,  w2 = max(|corr(x_i, x_j)| + u, 0),
///   w3 = max(|mean(x_i) - mean(x_j)| + u, 0),
/// with u(i, j) uniform on [-0.2, 0.2], drawn for every ordered pair in
/// row-major order. `signals` holds one series per station and is required
/// for w2 and w3.
DirectedGraph knn_graph(const StationTable& stations, const KnnOptions& options,
                        const std::vector<Eigen::VectorXd>& signals = {});

// Edge list: first line "n=<count>", then "src,dst,weight" and one row per
// edge, zero-weight edges included.
void save_edge_list(const DirectedGraph& g, const std::filesystem::path& path);
DirectedGraph load_edge_list(const std::filesystem::path& path);

// Station table CSV with header "id,lat,lon".
StationTable load_stations(const std::filesystem::path& path);
void save_stations(const StationTable& stations, const std::filesystem::path& path);

}  // namespace gfrft

#endif  // GFRFT_GRAPH_HPP
