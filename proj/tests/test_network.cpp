#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <sstream>

#include "ctqw/network.hpp"
#include "ctqw/network_io.hpp"
#include "test_util.hpp"

using namespace ctqw;

TEST_CASE("complete graphs") {
  CHECK(complete_graph(2).edges.size() == 1);
  auto k4 = complete_graph(4);
  CHECK(k4.edges.size() == 6);
  for (int d : k4.degrees()) CHECK(d == 3);
  CHECK(complete_graph(1024).edges.size() == 523776);
  CHECK_THROWS_AS(complete_graph(1), std::invalid_argument);
  k4.validate();
}

TEST_CASE("hypercubic lattices") {
  auto ring4 = hypercubic_lattice({4});
  CHECK(ring4.n_sites == 4);
  CHECK(ring4.edges.size() == 4);
  for (int d : ring4.degrees()) CHECK(d == 2);

  auto torus33 = hypercubic_lattice({3, 3});
  CHECK(torus33.n_sites == 9);
  for (int d : torus33.degrees()) CHECK(d == 4);
  torus33.validate();

  auto torus5d = hypercubic_lattice({4, 4, 4, 4, 4});
  CHECK(torus5d.n_sites == 1024);
  for (int d : torus5d.degrees()) CHECK(d == 10);
  torus5d.validate();
  CHECK(torus5d.descriptor.d_nominal() == doctest::Approx(5.0));

  CHECK_THROWS_AS(hypercubic_lattice({2, 4}), std::invalid_argument);
  auto open22 = hypercubic_lattice({2, 2}, false);
  CHECK(open22.edges.size() == 4);
  open22.validate();
}

TEST_CASE("mk hierarchical closed forms") {
  CHECK(mk_hierarchical(2, 6).n_sites == 2732);
  CHECK(mk_hierarchical(3, 5).n_sites == 4667);
  auto base = mk_hierarchical(2, 0);
  CHECK(base.n_sites == 2);
  CHECK(base.edges.size() == 1);

  for (int b : {2, 3, 4}) {
    for (int g = 0; g <= 5; ++g) {
      auto net = mk_hierarchical(b, g, 1000000);
      CAPTURE(b);
      CAPTURE(g);
      CHECK(net.n_sites == mk_site_count(b, g));
      CHECK(static_cast<long>(net.edges.size()) == mk_edge_count(b, g));
      net.validate();
    }
  }
  CHECK_THROWS_AS(mk_hierarchical(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(mk_hierarchical(2, -1), std::invalid_argument);
}

TEST_CASE("mk level bookkeeping and effective dimension") {
  auto net = mk_hierarchical(3, 4);
  CHECK(net.max_level() == 4);
  CHECK(net.sites_at_level(0).size() == 2);
  long edges = 1;
  for (int k = 1; k <= 4; ++k) {
    CHECK(static_cast<long>(net.sites_at_level(k).size()) == 3 * edges);
    edges *= 6;
  }
  CHECK(net.descriptor.d_nominal() == doctest::Approx(1.0 + std::log2(3.0)));
  CHECK(mk_hierarchical(2, 1).descriptor.d_nominal() == doctest::Approx(2.0));
}

TEST_CASE("mk self-similarity under level restriction") {
  for (int b : {2, 3}) {
    for (int g = 1; g <= 4; ++g) {
      auto fine = mk_hierarchical(b, g);
      auto coarse = mk_hierarchical(b, g - 1);
      // old sites keep their indices; every level-g midpoint joins exactly
      // one coarse edge, b midpoints per edge
      std::map<int, std::vector<int>> midpoint_ends;
      for (auto [u, v] : fine.edges) {
        const int mid = fine.site_level[u] == g ? u : v;
        const int old_end = fine.site_level[u] == g ? v : u;
        REQUIRE(fine.site_level[mid] == g);
        midpoint_ends[mid].push_back(old_end);
      }
      std::map<std::pair<int, int>, int> contracted;
      for (auto& [mid, ends] : midpoint_ends) {
        REQUIRE(ends.size() == 2);
        contracted[{std::min(ends[0], ends[1]), std::max(ends[0], ends[1])}]++;
      }
      std::set<std::pair<int, int>> coarse_edges;
      for (auto [u, v] : coarse.edges)
        coarse_edges.insert({std::min(u, v), std::max(u, v)});
      REQUIRE(contracted.size() == coarse_edges.size());
      for (auto& [edge, count] : contracted) {
        CHECK(count == b);
        CHECK(coarse_edges.count(edge) == 1);
      }
    }
  }
}

TEST_CASE("laplacian matrices") {
  auto lap2 = laplacian_dense(mk_hierarchical(2, 0));
  CHECK(lap2(0, 0) == 1.0);
  CHECK(lap2(0, 1) == -1.0);
  CHECK(lap2(1, 0) == -1.0);
  CHECK(lap2(1, 1) == 1.0);

  auto lap_k4 = laplacian_dense(complete_graph(4));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) CHECK(lap_k4(i, j) == (i == j ? 3.0 : -1.0));

  auto ring = hypercubic_lattice({4});
  auto lap_ring = laplacian_dense(ring);
  for (int i = 0; i < 4; ++i) {
    CHECK(lap_ring(i, i) == 2.0);
    CHECK(lap_ring.row(i).sum() == 0.0);
  }
  CHECK((lap_ring - lap_ring.transpose()).norm() == 0.0);

  Eigen::SparseMatrix<double> sparse = laplacian(ring);
  CHECK((Eigen::MatrixXd(sparse) - lap_ring).norm() == 0.0);
}

TEST_CASE("row sums vanish and kernel is one-dimensional on every family") {
  for (const auto& net :
       {complete_graph(7), hypercubic_lattice({3, 5}), mk_hierarchical(2, 3),
        testutil::random_connected_graph(24, 7)}) {
    auto lap = laplacian_dense(net);
    for (int i = 0; i < net.n_sites; ++i) CHECK(lap.row(i).sum() == 0.0);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(lap);
    CHECK(std::abs(es.eigenvalues()[0]) < 1e-12);
    CHECK(es.eigenvalues()[1] > 1e-10);  // connected: single zero mode
  }
}

TEST_CASE("disconnected input is rejected") {
  Network net;
  net.n_sites = 4;
  net.edges = {{0, 1}, {2, 3}};
  CHECK(!is_connected(net));
  CHECK_THROWS_AS(laplacian(net), std::invalid_argument);
  CHECK_THROWS(net.validate());
}

TEST_CASE("validate rejects malformed networks") {
  Network loop;
  loop.n_sites = 2;
  loop.edges = {{0, 0}, {0, 1}};
  CHECK_THROWS(loop.validate());

  Network dup;
  dup.n_sites = 3;
  dup.edges = {{0, 1}, {1, 0}, {1, 2}};
  CHECK_THROWS(dup.validate());
}

TEST_CASE("edge-list serialization round trip") {
  for (const auto& net : {mk_hierarchical(2, 3), complete_graph(5),
                          hypercubic_lattice({3, 3})}) {
    std::ostringstream first;
    write_network(net, first);
    std::istringstream in(first.str());
    Network reread = read_network(in);
    reread.validate();
    CHECK(reread.n_sites == net.n_sites);
    CHECK(reread.edges == net.edges);
    CHECK(reread.site_level == net.site_level);
    CHECK(reread.descriptor.params_string() == net.descriptor.params_string());
    std::ostringstream second;
    write_network(reread, second);
    CHECK(first.str() == second.str());
  }
}

TEST_CASE("serialization errors") {
  std::istringstream bad("M 4 FAMILY complete PARAMS n=4\n");
  CHECK_THROWS(read_network(bad));
  std::istringstream truncated("N 4 FAMILY complete PARAMS n=4\nLEVELS 0\nEDGES 3\n0 1\n");
  CHECK_THROWS(read_network(truncated));
}
