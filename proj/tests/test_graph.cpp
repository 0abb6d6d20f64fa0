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

#include <complex>
#include <fstream>
#include <set>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "gfrft/graph.hpp"
#include "support.hpp"

using namespace gfrft;
using gfrft::testing::max_abs_diff;

namespace {

Eigen::MatrixXd two_path() {
  Eigen::MatrixXd a(2, 2);
  a << 0, 1, 0, 0;
  return a;
}

StationTable ring_stations(Index n) {
  StationTable s;
  for (Index i = 0; i < n; ++i) {
    s.ids.push_back("S" + std::to_string(i));
    s.lat.push_back(48.0 + 0.1 * static_cast<double>(i % 4));
    s.lon.push_back(-4.0 + 0.15 * static_cast<double>(i / 4));
  }
  return s;
}

}  // namespace

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(DirectedGraph(Eigen::MatrixXd(2, 3)), Error);
  Eigen::MatrixXd neg = two_path();
  neg(0, 1) = -1.0;
  CHECK_THROWS_AS(DirectedGraph{neg}, Error);
  Eigen::MatrixXd loop = two_path();
  loop(1, 1) = 1.0;
  CHECK_THROWS_AS(DirectedGraph{loop}, Error);
  Eigen::MatrixXd nan = two_path();
  nan(1, 0) = std::nan("");
  CHECK_THROWS_AS(DirectedGraph{nan}, Error);

  EdgeMask mask = EdgeMask::Constant(2, 2, false);
  CHECK_THROWS_AS(DirectedGraph(two_path(), mask), Error);
  mask(0, 1) = true;
  mask(1, 0) = true;
  DirectedGraph g(two_path(), mask);
  CHECK(g.edge_count() == 2);
  CHECK(g.has_edge(1, 0));
}

TEST_CASE("laplacian") {
  CHECK(laplacian(DirectedGraph::edgeless(1)) == Eigen::MatrixXd::Zero(1, 1));

  Eigen::MatrixXd expected(2, 2);
  expected << 1, -1, 0, 0;
  CHECK(laplacian(DirectedGraph(two_path())) == expected);

  Rng rng(7);
  for (int t = 0; t < 20; ++t) {
    const auto g = gfrft::testing::random_digraph(2 + t % 7, rng);
    CHECK(laplacian(g).rowwise().sum().cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("directed path") {
  const auto g = DirectedGraph::directed_path(4);
  CHECK(g.edge_count() == 3);
  CHECK(g.adjacency()(0, 1) == 1.0);
  CHECK(g.adjacency()(1, 0) == 0.0);
  CHECK_THROWS_AS(DirectedGraph::directed_path(0), Error);
}

TEST_CASE("kronecker sum small cases") {
  Eigen::MatrixXd a(1, 1), b(1, 1);
  a << 2.5;
  b << -1.0;
  CHECK(kronecker_sum(a, b)(0, 0) == 1.5);
  CHECK(kronecker_sum(Eigen::MatrixXd::Identity(2, 2), Eigen::MatrixXd::Identity(2, 2)) ==
        2.0 * Eigen::MatrixXd::Identity(4, 4));

  // Hand expansion of L ⊕ L for the 2-path, L = [[1,-1],[0,0]]:
  // L ⊗ I = [[1,0,-1,0],[0,1,0,-1],[0,0,0,0],[0,0,0,0]],
  // I ⊗ L = [[1,-1,0,0],[0,0,0,0],[0,0,1,-1],[0,0,0,0]].
  const Eigen::MatrixXd l = laplacian(DirectedGraph(two_path()));
  Eigen::MatrixXd expected(4, 4);
  expected << 2, -1, -1, 0,
              0, 1, 0, -1,
              0, 0, 1, -1,
              0, 0, 0, 0;
  CHECK(kronecker_sum(l, l) == expected);
  CHECK_THROWS_AS(kronecker_sum(Eigen::MatrixXd(2, 3), l), Error);
}

TEST_CASE("kronecker sum matches double loop") {
  Rng rng(11);
  for (Index n1 = 1; n1 <= 4; ++n1) {
    for (Index n2 = 1; n2 <= 4; ++n2) {
      const Eigen::MatrixXd m1 = gfrft::testing::random_matrix(n1, n1, rng);
      const Eigen::MatrixXd m2 = gfrft::testing::random_matrix(n2, n2, rng);
      const Eigen::MatrixXd got = kronecker_sum(m1, m2);
      Eigen::MatrixXd want = Eigen::MatrixXd::Zero(n1 * n2, n1 * n2);
      for (Index i = 0; i < n1; ++i)
        for (Index j = 0; j < n2; ++j)
          for (Index k = 0; k < n1; ++k)
            for (Index l = 0; l < n2; ++l)
              want(i * n2 + j, k * n2 + l) =
                  m1(i, k) * (j == l ? 1.0 : 0.0) + (i == k ? 1.0 : 0.0) * m2(j, l);
      CHECK(max_abs_diff(got, want) == 0.0);
    }
  }
}

TEST_CASE("m-fold kronecker sum and embedding") {
  Rng rng(12);
  const Eigen::MatrixXcd a = gfrft::testing::random_matrix(2, 2, rng).cast<cdouble>();
  const Eigen::MatrixXcd b = gfrft::testing::random_matrix(3, 3, rng).cast<cdouble>();
  const Eigen::MatrixXcd c = gfrft::testing::random_matrix(2, 2, rng).cast<cdouble>();
  const std::vector<Eigen::MatrixXcd> terms{a, b, c};
  const Eigen::MatrixXcd i2 = Eigen::MatrixXcd::Identity(2, 2);
  const Eigen::MatrixXcd i3 = Eigen::MatrixXcd::Identity(3, 3);
  const Eigen::MatrixXcd want = kron(kron(a, i3), i2) + kron(kron(i2, b), i2) +
                                kron(kron(i2, i3), c);
  CHECK(max_abs_diff(kronecker_sum(terms), want) < 1e-14);

  const std::vector<Index> dims{2, 3, 2};
  CHECK(max_abs_diff(embed_mode(b, dims, 1), kron(kron(i2, b), i2)) == 0.0);
  CHECK(max_abs_diff(kronecker_sum(std::vector<Eigen::MatrixXcd>{a, b}), kronecker_sum(a, b)) <
        1e-15);
}

TEST_CASE("product adjacency") {
  const auto e = DirectedGraph::edgeless(3);
  CHECK(product_adjacency(e, DirectedGraph::edgeless(2)).isZero());

  const DirectedGraph p(two_path());
  CHECK(product_adjacency(p, DirectedGraph::edgeless(1)) == p.adjacency());

  // Enumerate edges of P2 ⊠ P2: (v1,v2) -> (w1,w2) iff
  // [v1 -> w1 and v2 == w2] or [v1 == w1 and v2 -> w2].
  const Eigen::MatrixXd got = product_adjacency(p, p);
  const auto& a = p.adjacency();
  for (Index v1 = 0; v1 < 2; ++v1)
    for (Index v2 = 0; v2 < 2; ++v2)
      for (Index w1 = 0; w1 < 2; ++w1)
        for (Index w2 = 0; w2 < 2; ++w2) {
          const bool edge = (a(v1, w1) != 0 && v2 == w2) || (v1 == w1 && a(v2, w2) != 0);
          CHECK((got(v1 * 2 + v2, w1 * 2 + w2) != 0.0) == edge);
        }
}

TEST_CASE("symmetrize") {
  Eigen::MatrixXd expected(2, 2);
  expected << 0, 0.5, 0.5, 0;
  CHECK(symmetrized_adjacency(DirectedGraph(two_path())) == expected);
  const DirectedGraph s = symmetrize(DirectedGraph(two_path()));
  CHECK(s.edge_count() == 2);

  Rng rng(3);
  const auto u = gfrft::testing::random_undirected(6, rng);
  CHECK(symmetrized_adjacency(u) == u.adjacency());
  const auto d = gfrft::testing::random_digraph(6, rng);
  const Eigen::MatrixXd sd = symmetrized_adjacency(d);
  CHECK((sd - sd.transpose()).isZero(0.0));
}

TEST_CASE("hermitian laplacian") {
  Rng rng(5);
  const auto d = gfrft::testing::random_digraph(5, rng);
  const auto l0 = hermitian_laplacian(d, 0.0);
  Eigen::MatrixXd ls = -symmetrized_adjacency(d);
  ls.diagonal() += symmetrized_adjacency(d).rowwise().sum();
  CHECK(max_abs_diff(l0.matrix, ls.cast<cdouble>()) < 1e-15);

  const auto u = gfrft::testing::random_undirected(5, rng);
  const auto lu = hermitian_laplacian(u, 0.37);
  CHECK(lu.matrix.imag().cwiseAbs().maxCoeff() == 0.0);

  const auto lq = hermitian_laplacian(d, 0.5);
  CHECK(max_abs_diff(lq.matrix, lq.matrix.adjoint().eval()) < 1e-12);

  // 2-path, q = 1/2: A_s = [[0, .5], [.5, 0]], Γ(0,1) = exp(iπ) = -1, so
  // L = [[.5, .5], [.5, .5]] with eigenvalues 0 and 1.
  const auto l2 = hermitian_laplacian(DirectedGraph(two_path()), 0.5);
  CHECK(std::abs(l2.matrix(0, 1) - cdouble(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(l2.matrix(1, 0) - cdouble(0.5, 0.0)) < 1e-15);
  CHECK(std::abs(l2.matrix(0, 0) - cdouble(0.5, 0.0)) < 1e-15);
  const Eigen::Vector2d ev = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(l2.matrix).eigenvalues();
  CHECK(ev(0) == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(ev(1) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("haversine") {
  CHECK(haversine_km(48.0, -4.0, 48.0, -4.0) == 0.0);
  // One degree of latitude on the 6371 km sphere.
  CHECK(haversine_km(0.0, 0.0, 1.0, 0.0) == doctest::Approx(6371.0 * M_PI / 180.0));
  CHECK(haversine_km(0.0, 0.0, 0.0, 180.0) == doctest::Approx(6371.0 * M_PI));
  CHECK(haversine_km(10, 20, 30, 40) == doctest::Approx(haversine_km(30, 40, 10, 20)));
}

TEST_CASE("weight scheme names") {
  CHECK(parse_weight_scheme("w2") == WeightScheme::W2);
  CHECK(to_string(WeightScheme::W3) == "w3");
  CHECK_THROWS_AS(parse_weight_scheme("w4"), Error);
}

TEST_CASE("knn graph") {
  const StationTable st = ring_stations(12);
  KnnOptions opt;
  opt.k = 3;
  opt.zero_perturbation = true;
  const DirectedGraph g = knn_graph(st, opt);
  CHECK(g.edge_count() == 36);
  for (Index i = 0; i < 12; ++i) {
    CHECK(g.edges().col(i).count() == 3);
    for (Index j = 0; j < 12; ++j) {
      if (g.has_edge(j, i)) CHECK(g.adjacency()(j, i) == 1.0);
    }
  }

  // Each in-neighbour set is the 3 nearest stations.
  for (Index i = 0; i < 12; ++i) {
    std::vector<std::pair<double, Index>> d;
    for (Index j = 0; j < 12; ++j) {
      if (j != i) d.emplace_back(haversine_km(st.lat[i], st.lon[i], st.lat[j], st.lon[j]), j);
    }
    std::stable_sort(d.begin(), d.end(),
                     [](const auto& x, const auto& y) { return x.first < y.first; });
    for (int r = 0; r < 3; ++r) CHECK(g.has_edge(d[r].second, i));
  }

  opt.zero_perturbation = false;
  opt.seed = 99;
  const DirectedGraph p1 = knn_graph(st, opt);
  const DirectedGraph p2 = knn_graph(st, opt);
  CHECK(p1.adjacency() == p2.adjacency());
  for (Index i = 0; i < 12; ++i)
    for (Index j = 0; j < 12; ++j)
      if (p1.has_edge(j, i)) {
        CHECK(p1.adjacency()(j, i) >= 0.8);
        CHECK(p1.adjacency()(j, i) <= 1.2);
      }
  opt.seed = 100;
  CHECK(knn_graph(st, opt).adjacency() != p1.adjacency());

  opt.k = 12;
  CHECK_THROWS_AS(knn_graph(st, opt), Error);
}

TEST_CASE("knn weight schemes") {
  const StationTable st = ring_stations(6);
  KnnOptions opt;
  opt.k = 2;
  opt.zero_perturbation = true;

  std::vector<Eigen::VectorXd> same(6, Eigen::VectorXd::LinSpaced(10, 0.0, 1.0));
  opt.scheme = WeightScheme::W2;
  const auto g2 = knn_graph(st, opt, same);
  opt.scheme = WeightScheme::W3;
  const auto g3 = knn_graph(st, opt, same);
  CHECK(g3.edge_count() == 12);  // zero-weight edges are kept
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j) {
      if (g2.has_edge(j, i)) CHECK(g2.adjacency()(j, i) == doctest::Approx(1.0));
      CHECK(g3.adjacency()(j, i) == 0.0);
    }

  // w3 weight is the absolute difference of means.
  std::vector<Eigen::VectorXd> shifted;
  for (int i = 0; i < 6; ++i) shifted.push_back(Eigen::VectorXd::Constant(4, 0.5 * i));
  const auto g3s = knn_graph(st, opt, shifted);
  for (Index i = 0; i < 6; ++i)
    for (Index j = 0; j < 6; ++j)
      if (g3s.has_edge(j, i)) CHECK(g3s.adjacency()(j, i) == doctest::Approx(0.5 * std::abs(i - j)));

  CHECK_THROWS_AS(knn_graph(st, opt), Error);
}

TEST_CASE("edge list round trip keeps zero-weight edges") {
  const auto dir = gfrft::testing::scratch_dir("edges");
  const StationTable st = ring_stations(8);
  KnnOptions opt;
  opt.k = 2;
  opt.scheme = WeightScheme::W3;
  opt.zero_perturbation = true;
  std::vector<Eigen::VectorXd> flat(8, Eigen::VectorXd::Ones(3));
  const auto g = knn_graph(st, opt, flat);
  save_edge_list(g, dir / "g.csv");
  const auto back = load_edge_list(dir / "g.csv");
  CHECK(back.edge_count() == 16);
  CHECK(back.edges() == g.edges());

  Rng rng(4);
  const auto r = gfrft::testing::random_digraph(7, rng);
  save_edge_list(r, dir / "r.csv");
  CHECK(load_edge_list(dir / "r.csv").adjacency() == r.adjacency());

  std::ofstream(dir / "bad.csv") << "n=2\nsrc,dst,weight\n0,5,1\n";
  CHECK_THROWS_AS(load_edge_list(dir / "bad.csv"), Error);
  std::ofstream(dir / "dup.csv") << "n=2\nsrc,dst,weight\n0,1,1\n0,1,2\n";
  CHECK_THROWS_AS(load_edge_list(dir / "dup.csv"), Error);
}

TEST_CASE("station table") {
  const auto dir = gfrft::testing::scratch_dir("stations");
  const StationTable st = ring_stations(5);
  save_stations(st, dir / "s.csv");
  const StationTable back = load_stations(dir / "s.csv");
  CHECK(back.ids == st.ids);
  CHECK(back.lat == st.lat);
  CHECK(back.lon == st.lon);
  CHECK(back.index_of("S3") == 3);
  CHECK_THROWS_AS(back.index_of("nope"), Error);

  StationTable dup = st;
  dup.ids[1] = dup.ids[0];
  CHECK_THROWS_AS(dup.validate(), Error);
}
