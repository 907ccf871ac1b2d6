#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ctqw/network.hpp"
#include "ctqw/spectrum.hpp"
#include "test_util.hpp"

using namespace ctqw;

namespace {

void check_same_multiset(const Eigen::VectorXd& a, const Eigen::VectorXd& b,
                         double tol) {
  REQUIRE(a.size() == b.size());
  for (int i = 0; i < a.size(); ++i) CHECK(std::abs(a[i] - b[i]) < tol);
}

}  // namespace

TEST_CASE("dense eigendecomposition oracles") {
  auto k4 = eigendecompose(laplacian_dense(complete_graph(4)));
  const double expected_k4[] = {0, 4, 4, 4};
  for (int i = 0; i < 4; ++i)
    CHECK(k4.eigenvalues[i] == doctest::Approx(expected_k4[i]).epsilon(1e-12));

  auto ring4 = eigendecompose(laplacian_dense(hypercubic_lattice({4})));
  const double expected_ring[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i)
    CHECK(ring4.eigenvalues[i] == doctest::Approx(expected_ring[i]).epsilon(1e-12));

  auto edge = eigendecompose(laplacian_dense(mk_hierarchical(2, 0)));
  CHECK(edge.eigenvalues[0] == doctest::Approx(0.0));
  CHECK(edge.eigenvalues[1] == doctest::Approx(2.0));
}

TEST_CASE("eigenvector invariants") {
  auto net = mk_hierarchical(2, 3);
  auto lap = laplacian_dense(net);
  auto spec = eigendecompose(lap);
  const int n = spec.n();
  // orthonormality
  Eigen::MatrixXd gram = spec.eigenvectors.transpose() * spec.eigenvectors;
  CHECK((gram - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-10);
  // residuals
  Eigen::MatrixXd resid =
      lap * spec.eigenvectors - spec.eigenvectors * spec.eigenvalues.asDiagonal();
  CHECK(resid.cwiseAbs().maxCoeff() < 1e-8 * spec.lambda_max());
  // trace equals degree sum exactly up to rounding
  double degree_sum = 0;
  for (int d : net.degrees()) degree_sum += d;
  CHECK(spec.eigenvalues.sum() == doctest::Approx(degree_sum).epsilon(1e-12));
}

TEST_CASE("dense guard") {
  CHECK_THROWS_AS(eigendecompose(laplacian_dense(complete_graph(8)), 4),
                  std::invalid_argument);
}

TEST_CASE("analytic lattice spectra") {
  auto ring4 = lattice_spectrum_analytic({4});
  const double expected_ring[] = {0, 2, 2, 4};
  for (int i = 0; i < 4; ++i)
    CHECK(ring4.eigenvalues[i] == doctest::Approx(expected_ring[i]));
  CHECK(ring4.analytic);
  CHECK(!ring4.has_eigenvectors());

  auto torus33 = lattice_spectrum_analytic({3, 3});
  const double expected_torus[] = {0, 3, 3, 3, 3, 6, 6, 6, 6};
  for (int i = 0; i < 9; ++i)
    CHECK(torus33.eigenvalues[i] == doctest::Approx(expected_torus[i]));

  CHECK_THROWS_AS(lattice_spectrum_analytic({2, 2}), std::invalid_argument);
}

TEST_CASE("analytic spectra match the dense route") {
  for (const auto& sides : std::vector<std::vector<int>>{
           {4}, {32}, {3, 3}, {8, 8}, {4, 4, 4}, {3, 3, 3, 3}}) {
    auto analytic = lattice_spectrum_analytic(sides);
    auto dense = eigendecompose(laplacian_dense(hypercubic_lattice(sides)));
    check_same_multiset(analytic.eigenvalues, dense.eigenvalues, 1e-9);
  }
  auto k16 = complete_spectrum_analytic(16);
  auto k16_dense = eigendecompose(laplacian_dense(complete_graph(16)));
  check_same_multiset(k16.eigenvalues, k16_dense.eigenvalues, 1e-9);
}

TEST_CASE("grouping by target site") {
  auto k4 = eigendecompose(laplacian_dense(complete_graph(4)));
  for (int w : {0, 1, 2, 3}) {
    auto grouped = group_by_target(k4, w);
    REQUIRE(grouped.groups.size() == 2);
    CHECK(grouped.groups[0].value == 0.0);
    CHECK(grouped.groups[0].weight == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(grouped.groups[1].multiplicity == 3);
    CHECK(grouped.groups[1].weight == doctest::Approx(0.75).epsilon(1e-12));
  }

  auto edge = eigendecompose(laplacian_dense(mk_hierarchical(2, 0)));
  auto grouped = group_by_target(edge, 0);
  REQUIRE(grouped.groups.size() == 2);
  CHECK(grouped.groups[0].weight == doctest::Approx(0.5));
  CHECK(grouped.groups[1].weight == doctest::Approx(0.5));

  auto torus = lattice_spectrum_analytic({3, 3, 3, 3, 3});
  auto analytic_grouped = group_by_target(torus, 11);
  for (const auto& grp : analytic_grouped.groups)
    CHECK(grp.weight ==
          doctest::Approx(static_cast<double>(grp.multiplicity) / 243));
  CHECK(analytic_grouped.total_weight() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("grouping completeness and kernel weight across networks") {
  for (const auto& net :
       {mk_hierarchical(2, 4), mk_hierarchical(3, 3),
        testutil::random_connected_graph(32, 11)}) {
    auto spec = eigendecompose(laplacian_dense(net));
    for (int w : {0, net.n_sites / 2, net.n_sites - 1}) {
      auto grouped = group_by_target(spec, w);
      CHECK(std::abs(grouped.total_weight() - 1.0) < 1e-10);
      CHECK(std::abs(grouped.groups[0].weight - 1.0 / net.n_sites) < 1e-12);
      int multiplicity_sum = 0;
      for (const auto& grp : grouped.groups) multiplicity_sum += grp.multiplicity;
      CHECK(multiplicity_sum == net.n_sites);
    }
  }
  CHECK_THROWS_AS(
      group_by_target(eigendecompose(laplacian_dense(complete_graph(4))), 7),
      std::invalid_argument);
}

TEST_CASE("spectral zeta values") {
  auto k4 = eigendecompose(laplacian_dense(complete_graph(4)));
  CHECK(zeta_spectral(k4, 1).value == doctest::Approx(3.0 / 16).epsilon(1e-14));
  CHECK(zeta_spectral(k4, 2).value == doctest::Approx(3.0 / 64).epsilon(1e-14));

  auto ring4 = lattice_spectrum_analytic({4});
  CHECK(zeta_spectral(ring4, 1).value == doctest::Approx(5.0 / 16).epsilon(1e-14));

  auto edge = eigendecompose(laplacian_dense(mk_hierarchical(2, 0)));
  CHECK(zeta_spectral(edge, 1).value == doctest::Approx(0.25).epsilon(1e-14));

  CHECK_THROWS_AS(zeta_spectral(k4, 0), std::invalid_argument);
}

TEST_CASE("logdet zeta oracles") {
  auto lap_k4 = laplacian_dense(complete_graph(4));
  auto z1 = zeta_logdet(lap_k4, 1);
  CHECK(z1.value == doctest::Approx(3.0 / 16).epsilon(1e-9));
  CHECK(z1.route == ZetaRoute::LogDet);
  auto z2 = zeta_logdet(lap_k4, 2);
  CHECK(z2.value == doctest::Approx(3.0 / 64).epsilon(1e-9));

  auto lap_edge = laplacian_dense(mk_hierarchical(2, 0));
  CHECK(zeta_logdet(lap_edge, 1).value == doctest::Approx(0.25).epsilon(1e-9));

  CHECK_THROWS_AS(zeta_logdet(lap_k4, 3), std::invalid_argument);
}

TEST_CASE("zeta route equivalence") {
  auto check_routes = [](const Network& net) {
    auto lap = laplacian_dense(net);
    LaplacianSpectrum spec;
    spec.eigenvalues = eigenvalues_only(lap);
    for (int j : {1, 2}) {
      const double spectral = zeta_spectral(spec, j).value;
      const auto logdet = zeta_logdet(lap, j);
      CAPTURE(net.n_sites);
      CAPTURE(j);
      CHECK(std::abs(logdet.value - spectral) < 1e-7 * spectral);
    }
  };
  check_routes(complete_graph(16));
  check_routes(hypercubic_lattice({64}));
  check_routes(hypercubic_lattice({128}));
  check_routes(mk_hierarchical(2, 3));
  check_routes(mk_hierarchical(3, 3));
  check_routes(testutil::random_connected_graph(40, 3));
}

TEST_CASE("zeta power-mean inequality") {
  for (const auto& net : {complete_graph(8), mk_hierarchical(2, 4),
                          mk_hierarchical(3, 3), hypercubic_lattice({5, 5})}) {
    LaplacianSpectrum spec;
    spec.eigenvalues = eigenvalues_only(laplacian_dense(net));
    const double i1 = zeta_spectral(spec, 1).value;
    const double i2 = zeta_spectral(spec, 2).value;
    CHECK(i1 > 0.0);
    CHECK(i2 >= i1 * i1);
  }
}

TEST_CASE("I_1 growth with generation by branch count") {
  // d_s = 2 (b = 2): I_1 keeps growing; d_s = 3 (b = 4): ratios shrink to 1
  std::vector<double> i1_b2;
  for (int g = 1; g <= 5; ++g) {
    LaplacianSpectrum spec;
    spec.eigenvalues = eigenvalues_only(laplacian_dense(mk_hierarchical(2, g)));
    i1_b2.push_back(zeta_spectral(spec, 1).value);
  }
  for (size_t k = 1; k < i1_b2.size(); ++k) CHECK(i1_b2[k] / i1_b2[k - 1] > 1.0);

  std::vector<double> i1_b4;
  for (int g = 1; g <= 3; ++g) {
    LaplacianSpectrum spec;
    spec.eigenvalues = eigenvalues_only(laplacian_dense(mk_hierarchical(4, g)));
    i1_b4.push_back(zeta_spectral(spec, 1).value);
  }
  CHECK(i1_b4[1] / i1_b4[0] > i1_b4[2] / i1_b4[1]);  // approaching constancy
  CHECK(i1_b4[2] / i1_b4[1] < 1.2);
}

TEST_CASE("spectral dimension estimates") {
  auto ring = spectral_dimension_estimate(lattice_spectrum_analytic({1024}));
  CHECK(std::abs(ring.value - 1.0) < 0.1);
  CHECK(ring.std_error > 0.0);

  auto torus = spectral_dimension_estimate(lattice_spectrum_analytic({32, 32}));
  CHECK(std::abs(torus.value - 2.0) < 0.15);

  CHECK_THROWS_AS(spectral_dimension_estimate(complete_spectrum_analytic(64)),
                  std::invalid_argument);  // N < 100
  // complete graph: single distinct nonzero eigenvalue, no fit window
  CHECK_THROWS_AS(spectral_dimension_estimate(complete_spectrum_analytic(256)),
                  std::runtime_error);
}
