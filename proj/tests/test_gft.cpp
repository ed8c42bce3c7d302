#include <catch2/catch_amalgamated.hpp>

#include "dgsp/gft.hpp"
#include "dgsp/jordan.hpp"
#include "fixtures.hpp"

using namespace dgsp;

namespace {

Digraph undirected_path(int n) {
  Digraph g(n);
  for (int i = 0; i + 1 < n; ++i) {
    g.add_edge(i, i + 1);
    g.add_edge(i + 1, i);
  }
  return g;
}

}  // namespace

TEST_CASE("build_fourier") {
  SECTION("4-cycle: DFT-type basis, lambda = 1 mode first") {
    FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(4)));
    REQUIRE(fb.tv(0) == Catch::Approx(0.0).margin(1e-10));
    REQUIRE(std::abs(fb.eigenvalues(0) - Complex(1, 0)) < 1e-10);
    for (int k = 1; k < 4; ++k) REQUIRE(fb.tv(k) >= fb.tv(k - 1) - 1e-12);
    REQUIRE((fb.f * fb.v - Eigen::MatrixXcd::Identity(4, 4)).norm() < 1e-8);
  }
  SECTION("defective shift refused") {
    REQUIRE_THROWS_AS(build_fourier(adjacency_matrix(fixtures::path_graph(4))),
                      NumericalError);
  }
  SECTION("symmetric graph gives an orthonormal basis") {
    FourierBasis fb = build_fourier(adjacency_matrix(undirected_path(5)));
    REQUIRE(condition_number(fb.v) <= 1.0 + 1e-6);
  }
}

TEST_CASE("total_variation") {
  Eigen::MatrixXcd c4 = adjacency_matrix(fixtures::cycle_graph(4)).cast<Complex>();
  SECTION("lambda = lambda_max eigenvector has zero TV") {
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(4, 0.25);  // unit 1-norm, lambda 1
    REQUIRE(total_variation(c4, v, 1.0) == Catch::Approx(0.0).margin(1e-12));
  }
  SECTION("lambda = -1 eigenvector has TV 2") {
    Eigen::VectorXcd v(4);
    v << 0.25, -0.25, 0.25, -0.25;
    REQUIRE(total_variation(c4, v, 1.0) == Catch::Approx(2.0));
  }
  SECTION("zero vector") {
    REQUIRE(total_variation(c4, Eigen::VectorXcd::Zero(4), 1.0) == 0.0);
  }
  SECTION("nilpotent shift refused") {
    Eigen::MatrixXcd p3 = adjacency_matrix(fixtures::path_graph(3)).cast<Complex>();
    REQUIRE_THROWS_AS(total_variation(p3, Eigen::VectorXcd::Ones(3)), NumericalError);
  }
  SECTION("exact eigenpair identity |1 - lambda / lambda_max|") {
    FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(5)));
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXcd v = fb.v.col(k);
      v /= v.lpNorm<1>();
      double expect = std::abs(1.0 - fb.eigenvalues(k) / fb.lambda_max_abs);
      REQUIRE(total_variation(Eigen::MatrixXcd(adjacency_matrix(fixtures::cycle_graph(5)).cast<Complex>()),
                              v, fb.lambda_max_abs) == Catch::Approx(expect).margin(1e-10));
    }
  }
}

TEST_CASE("transform round trip") {
  FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(6)));
  SECTION("column of V maps to a unit coordinate vector") {
    Eigen::VectorXcd shat = fb.transform(fb.v.col(2));
    for (int k = 0; k < 6; ++k)
      REQUIRE(std::abs(shat(k) - (k == 2 ? Complex(1, 0) : Complex(0, 0))) < 1e-10);
  }
  SECTION("zero maps to zero") {
    REQUIRE(fb.transform(Eigen::VectorXcd::Zero(6)).norm() == 0.0);
  }
  SECTION("constant signal concentrates on the lambda = 1 mode") {
    Eigen::VectorXcd shat = fb.transform(Eigen::VectorXcd::Ones(6));
    for (int k = 0; k < 6; ++k) {
      bool is_dc = std::abs(fb.eigenvalues(k) - Complex(1, 0)) < 1e-9;
      if (!is_dc) REQUIRE(std::abs(shat(k)) < 1e-9);
    }
  }
  SECTION("random round trip") {
    std::mt19937_64 rng(5);
    Eigen::VectorXcd s(6);
    for (int i = 0; i < 6; ++i)
      s(i) = Complex(static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5,
                     static_cast<double>(rng() >> 11) * 0x1.0p-53 - 0.5);
    Eigen::VectorXcd back = fb.inverse_transform(fb.transform(s));
    REQUIRE((back - s).norm() <= 1e-8 * condition_number(fb.v) * s.norm());
  }
  SECTION("length mismatch") {
    REQUIRE_THROWS_AS(fb.transform(Eigen::VectorXcd::Zero(5)), NumericalError);
  }
}

TEST_CASE("diag_residual") {
  SECTION("unperturbed shift: residual vanishes") {
    Eigen::MatrixXcd m = adjacency_matrix(fixtures::cycle_graph(5)).cast<Complex>();
    FourierBasis fb = build_fourier(m);
    DiagResidual r = diag_residual(fb, m);
    REQUIRE(r.residual.norm() < 1e-10);
    REQUIRE(r.rank == 0);
  }
  SECTION("P_n against the n-cycle basis: rank 1") {
    Eigen::MatrixXcd pn = adjacency_matrix(fixtures::path_graph(6)).cast<Complex>();
    FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(6)));
    DiagResidual r = diag_residual(fb, pn);
    REQUIRE(r.rank == 1);
  }
  SECTION("example 1 against its repair: rank at most 2") {
    Digraph g = fixtures::example1_graph();
    Digraph repaired = g.with_edge(5, 0).with_edge(6, 1);
    FourierBasis fb = build_fourier(adjacency_matrix(repaired));
    DiagResidual r = diag_residual(fb, adjacency_matrix(g).cast<Complex>());
    REQUIRE(r.rank <= 2);
    REQUIRE(r.rank >= 1);
  }
}

TEST_CASE("l0_residual") {
  SECTION("exact eigenvector gives 0") {
    Eigen::MatrixXcd m = adjacency_matrix(fixtures::cycle_graph(4)).cast<Complex>();
    FourierBasis fb = build_fourier(m);
    REQUIRE(l0_residual(m, fb.v.col(1), fb.eigenvalues(1)) == 0);
  }
  SECTION("P_n with an n-cycle eigenvector touches exactly one row") {
    int n = 6;
    Eigen::MatrixXcd pn = adjacency_matrix(fixtures::path_graph(n)).cast<Complex>();
    FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(n)));
    for (int k = 0; k < n; ++k)
      REQUIRE(l0_residual(pn, fb.v.col(k), fb.eigenvalues(k)) == 1);
  }
  SECTION("example-1 repair touches at most the two added rows") {
    Digraph g = fixtures::example1_graph();
    Digraph repaired = g.with_edge(5, 0).with_edge(6, 1);
    FourierBasis fb = build_fourier(adjacency_matrix(repaired));
    Eigen::MatrixXcd m = adjacency_matrix(g).cast<Complex>();
    for (int k = 0; k < 7; ++k)
      REQUIRE(l0_residual(m, fb.v.col(k), fb.eigenvalues(k)) <= 2);
  }
  SECTION("non-unit vector rejected") {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Identity(2, 2);
    REQUIRE_THROWS_AS(l0_residual(m, Eigen::VectorXcd::Constant(2, 1.0), 1.0),
                      NumericalError);
  }
}

TEST_CASE("spearman") {
  REQUIRE(spearman({1, 2, 3}, {10, 20, 30}) == Catch::Approx(1.0));
  REQUIRE(spearman({1, 2, 3}, {30, 20, 10}) == Catch::Approx(-1.0));
  REQUIRE(spearman({1, 1, 1}, {3, 2, 1}) == Catch::Approx(1.0));  // constant side
  REQUIRE_THROWS_AS(spearman({1.0}, {1.0, 2.0}), NumericalError);
}

TEST_CASE("tv_compare") {
  SECTION("identical shifts correlate perfectly") {
    Eigen::MatrixXcd m = adjacency_matrix(fixtures::cycle_graph(5)).cast<Complex>();
    FourierBasis fb = build_fourier(m);
    TvComparison c = tv_compare(m, m, fb);
    REQUIRE(c.correlation == Catch::Approx(1.0));
    for (auto& [a, b] : c.pairs) REQUIRE(a == Catch::Approx(b).margin(1e-10));
  }
  SECTION("P_4 against the 4-cycle") {
    Eigen::MatrixXcd p4 = adjacency_matrix(fixtures::path_graph(4)).cast<Complex>();
    FourierBasis fb = build_fourier(adjacency_matrix(fixtures::cycle_graph(4)));
    TvComparison c = tv_compare(p4, adjacency_matrix(fixtures::cycle_graph(4)).cast<Complex>(), fb);
    REQUIRE(c.old_unnormalized);  // P_4 is nilpotent
    for (int k = 0; k < 4; ++k) {
      double expect = std::abs(1.0 - fb.eigenvalues(k));
      REQUIRE(c.pairs[k].second == Catch::Approx(expect).margin(1e-10));
    }
  }
}
