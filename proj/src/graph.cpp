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

#include "gfrft/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>

#include "gfrft/csv.hpp"
#include "gfrft/error.hpp"
#include "gfrft/rng.hpp"

namespace gfrft {

DirectedGraph::DirectedGraph(Eigen::MatrixXd adjacency) : adjacency_(std::move(adjacency)) {
  if (adjacency_.rows() < 1 || adjacency_.rows() != adjacency_.cols()) {
    fail(ErrorCode::Dimension, "adjacency must be a nonempty square matrix");
  }
  if (!adjacency_.allFinite()) fail(ErrorCode::Input, "adjacency has non-finite weights");
  if ((adjacency_.array() < 0.0).any()) fail(ErrorCode::Input, "adjacency has negative weights");
  if ((adjacency_.diagonal().array() != 0.0).any()) {
    fail(ErrorCode::Input, "adjacency has self-loops");
  }
  edges_ = adjacency_.array() != 0.0;
}

DirectedGraph::DirectedGraph(Eigen::MatrixXd adjacency, EdgeMask edges)
    : DirectedGraph(std::move(adjacency)) {
  if (edges.rows() != size() || edges.cols() != size()) {
    fail(ErrorCode::Dimension, "edge mask shape differs from the adjacency");
  }
  if (edges.diagonal().any()) fail(ErrorCode::Input, "edge mask has self-loops");
  if ((edges_.array() && !edges.array()).any()) {
    fail(ErrorCode::Input, "nonzero weight outside the edge mask");
  }
  edges_ = std::move(edges);
}

DirectedGraph DirectedGraph::edgeless(Index n) {
  return DirectedGraph(Eigen::MatrixXd::Zero(n, n));
}

DirectedGraph DirectedGraph::directed_path(Index n) {
  if (n < 1) fail(ErrorCode::Parameter, "directed_path: n must be positive");
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Index i = 0; i + 1 < n; ++i) a(i, i + 1) = 1.0;
  return DirectedGraph(std::move(a));
}

Eigen::MatrixXd laplacian(const DirectedGraph& g) {
  Eigen::MatrixXd l = -g.adjacency();
  l.diagonal() += g.adjacency().rowwise().sum();
  return l;
}

Eigen::MatrixXd product_adjacency(const DirectedGraph& g1, const DirectedGraph& g2) {
  return kronecker_sum(g1.adjacency(), g2.adjacency());
}

Eigen::MatrixXd symmetrized_adjacency(const DirectedGraph& g) {
  return 0.5 * (g.adjacency() + g.adjacency().transpose());
}

DirectedGraph symmetrize(const DirectedGraph& g) {
  EdgeMask edges = g.edges().array() || g.edges().transpose().array();
  return DirectedGraph(symmetrized_adjacency(g), std::move(edges));
}

HermitianLaplacian hermitian_laplacian(const DirectedGraph& g, double q) {
  const Eigen::MatrixXd& a = g.adjacency();
  const Eigen::MatrixXd as = symmetrized_adjacency(g);
  const Index n = g.size();
  Eigen::MatrixXcd l(n, n);
  const double two_pi_q = 2.0 * std::numbers::pi * q;
  for (Index c = 0; c < n; ++c) {
    for (Index r = 0; r < n; ++r) {
      l(r, c) = -as(r, c) * std::polar(1.0, two_pi_q * (a(r, c) - a(c, r)));
    }
  }
  l.diagonal() += as.rowwise().sum().cast<cdouble>();
  return {std::move(l), q};
}

Index StationTable::index_of(const std::string& id) const {
  auto it = std::find(ids.begin(), ids.end(), id);
  if (it == ids.end()) fail(ErrorCode::Reference, "unknown station id '" + id + "'");
  return static_cast<Index>(it - ids.begin());
}

void StationTable::validate() const {
  if (lat.size() != ids.size() || lon.size() != ids.size()) {
    fail(ErrorCode::Dimension, "station table columns differ in length");
  }
  std::set<std::string> seen;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    if (!seen.insert(ids[i]).second) fail(ErrorCode::Input, "duplicate station id '" + ids[i] + "'");
    if (!std::isfinite(lat[i]) || !std::isfinite(lon[i])) {
      fail(ErrorCode::Input, "station '" + ids[i] + "' has non-finite coordinates");
    }
  }
}

double haversine_km(double lat1, double lon1, double lat2, double lon2) {
  constexpr double kEarthRadiusKm = 6371.0;
  constexpr double kDeg = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * kDeg;
  const double dlon = (lon2 - lon1) * kDeg;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * kDeg) * std::cos(lat2 * kDeg) * std::sin(dlon / 2) *
                       std::sin(dlon / 2);
  return 2.0 * kEarthRadiusKm * std::asin(std::min(1.0, std::sqrt(h)));
}

std::string to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::W1: return "w1";
    case WeightScheme::W2: return "w2";
    case WeightScheme::W3: return "w3";
  }
  return "w?";
}

WeightScheme parse_weight_scheme(const std::string& name) {
  if (name == "w1") return WeightScheme::W1;
  if (name == "w2") return WeightScheme::W2;
  if (name == "w3") return WeightScheme::W3;
  fail(ErrorCode::Parameter, "unknown weight scheme '" + name + "'");
}

namespace {

double abs_correlation(const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const Eigen::ArrayXd dx = x.array() - x.mean();
  const Eigen::ArrayXd dy = y.array() - y.mean();
  const double sx = std::sqrt((dx * dx).sum());
  const double sy = std::sqrt((dy * dy).sum());
  if (sx == 0.0 || sy == 0.0) return 0.0;
  return std::abs((dx * dy).sum()) / (sx * sy);
}

}  // namespace

DirectedGraph knn_graph(const StationTable& stations, const KnnOptions& options,
                        const std::vector<Eigen::VectorXd>& signals) {
  stations.validate();
  const Index n = stations.size();
  if (options.k < 1 || options.k >= n) {
    fail(ErrorCode::Parameter, "k must satisfy 1 <= k < station count");
  }
  if (options.scheme != WeightScheme::W1) {
    if (static_cast<Index>(signals.size()) != n) {
      fail(ErrorCode::Input, "weight schemes w2/w3 need one signal per station");
    }
    for (const auto& s : signals) {
      if (s.size() != signals.front().size() || s.size() < 1) {
        fail(ErrorCode::Input, "station signals must be nonempty and of equal length");
      }
    }
  }

  Eigen::MatrixXd u = Eigen::MatrixXd::Zero(n, n);
  if (!options.zero_perturbation) {
    Rng rng(options.seed);
    for (Index i = 0; i < n; ++i) {
      for (Index j = 0; j < n; ++j) u(i, j) = rng.uniform(-0.2, 0.2);
    }
  }

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  EdgeMask edges = EdgeMask::Constant(n, n, false);
  std::vector<Index> order(static_cast<std::size_t>(n));
  std::vector<double> dist(static_cast<std::size_t>(n));
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      dist[j] = haversine_km(stations.lat[i], stations.lon[i], stations.lat[j], stations.lon[j]);
    }
    std::iota(order.begin(), order.end(), Index{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](Index x, Index y) { return dist[x] < dist[y]; });
    Index added = 0;
    for (Index j : order) {
      if (j == i) continue;
      if (added == options.k) break;
      double w = 0.0;
      switch (options.scheme) {
        case WeightScheme::W1: w = 1.0 + u(i, j); break;
        case WeightScheme::W2:
          w = std::max(abs_correlation(signals[i], signals[j]) + u(i, j), 0.0);
          break;
        case WeightScheme::W3:
          w = std::max(std::abs(signals[i].mean() - signals[j].mean()) + u(i, j), 0.0);
          break;
      }
      a(j, i) = w;  // edge j -> i
      edges(j, i) = true;
      ++added;
    }
  }
  return DirectedGraph(std::move(a), std::move(edges));
}

void save_edge_list(const DirectedGraph& g, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "n=" << g.size() << "\nsrc,dst,weight\n";
  const Eigen::MatrixXd& a = g.adjacency();
  for (Index m = 0; m < g.size(); ++m) {
    for (Index n = 0; n < g.size(); ++n) {
      if (g.has_edge(m, n)) out << m << ',' << n << ',' << csv::format_double(a(m, n)) << '\n';
    }
  }
  csv::write_text(path, out.str());
}

DirectedGraph load_edge_list(const std::filesystem::path& path) {
  const auto lines = csv::read_lines(path);
  const std::string ctx = path.string();
  if (lines.size() < 2 || lines[0].rfind("n=", 0) != 0) {
    fail(ErrorCode::Parse, ctx + ":1: expected 'n=<count>'");
  }
  const long long n = csv::parse_int(std::string_view(lines[0]).substr(2), ctx + ":1");
  if (n < 1) fail(ErrorCode::Parse, ctx + ":1: vertex count must be positive");
  if (csv::trim(lines[1]) != "src,dst,weight") {
    fail(ErrorCode::Parse, ctx + ":2: expected header 'src,dst,weight'");
  }
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  EdgeMask edges = EdgeMask::Constant(n, n, false);
  for (std::size_t ln = 2; ln < lines.size(); ++ln) {
    if (csv::trim(lines[ln]).empty()) continue;
    const std::string where = ctx + ":" + std::to_string(ln + 1);
    const auto f = csv::split(lines[ln]);
    if (f.size() != 3) fail(ErrorCode::Parse, where + ": expected 3 fields");
    const long long s = csv::parse_int(f[0], where);
    const long long d = csv::parse_int(f[1], where);
    if (s < 0 || s >= n || d < 0 || d >= n) fail(ErrorCode::Parse, where + ": vertex out of range");
    if (edges(s, d)) fail(ErrorCode::Parse, where + ": duplicate edge");
    a(s, d) = csv::parse_double(f[2], where);
    edges(s, d) = true;
  }
  return DirectedGraph(std::move(a), std::move(edges));
}

StationTable load_stations(const std::filesystem::path& path) {
  const auto lines = csv::read_lines(path);
  const std::string ctx = path.string();
  if (lines.empty() || csv::trim(lines[0]) != "id,lat,lon") {
    fail(ErrorCode::Parse, ctx + ":1: expected header 'id,lat,lon'");
  }
  StationTable st;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    if (csv::trim(lines[ln]).empty()) continue;
    const std::string where = ctx + ":" + std::to_string(ln + 1);
    const auto f = csv::split(lines[ln]);
    if (f.size() != 3) fail(ErrorCode::Parse, where + ": expected 3 fields");
    st.ids.emplace_back(csv::trim(f[0]));
    st.lat.push_back(csv::parse_double(f[1], where));
    st.lon.push_back(csv::parse_double(f[2], where));
  }
  st.validate();
  return st;
}

void save_stations(const StationTable& stations, const std::filesystem::path& path) {
  std::ostringstream out;
  out << "id,lat,lon\n";
  for (Index i = 0; i < stations.size(); ++i) {
    out << stations.ids[i] << ',' << csv::format_double(stations.lat[i]) << ','
        << csv::format_double(stations.lon[i]) << '\n';
  }
  csv::write_text(path, out.str());
}

}  // namespace gfrft
