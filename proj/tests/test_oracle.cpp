#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "dgsp/oracle.hpp"
#include "fixtures.hpp"

using namespace dgsp;

TEST_CASE("rational matrix basics") {
  RationalMatrix m(2, 2);
  m(0, 0) = Rational(1, 2);
  m(0, 1) = 1;
  m(1, 1) = Rational(1, 2);
  RationalMatrix sq = m * m;
  REQUIRE(sq(0, 0) == Rational(1, 4));
  REQUIRE(sq(0, 1) == 1);
  REQUIRE(m.rank() == 2);
  RationalMatrix s(2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  REQUIRE(s.rank() == 1);
  REQUIRE((m - m).is_zero());
  REQUIRE(RationalMatrix::identity(3).trace() == 3);
}

TEST_CASE("polynomial arithmetic") {
  IntPolynomial x = IntPolynomial::monomial(1);
  IntPolynomial p = x * x - IntPolynomial::constant(1);  // x^2 - 1
  REQUIRE(p.degree() == 2);
  REQUIRE(p.eval(2) == 3);
  REQUIRE(p.eval(1) == 0);
  auto [q, r] = p.divmod(x - IntPolynomial::constant(1));
  REQUIRE(r.is_zero());
  REQUIRE(q == x + IntPolynomial::constant(1));
  REQUIRE(poly_gcd(p, p.derivative()).degree() == 0);
  REQUIRE(is_squarefree(p));
  IntPolynomial sq = p * p;
  REQUIRE_FALSE(is_squarefree(sq));
  REQUIRE(p.str() == "x^2 - 1");
}

TEST_CASE("characteristic polynomial, exact") {
  SECTION("3-cycle: x^3 - 1") {
    IntPolynomial p = char_poly_exact(rational_adjacency(fixtures::cycle_graph(3)));
    REQUIRE(p == IntPolynomial(std::vector<Rational>{-1, 0, 0, 1}));
  }
  SECTION("P_4: x^4") {
    IntPolynomial p = char_poly_exact(rational_adjacency(fixtures::path_graph(4)));
    REQUIRE(p == IntPolynomial::monomial(4));
  }
  SECTION("example 1: x^7 - x^4") {
    IntPolynomial p = char_poly_exact(rational_adjacency(fixtures::example1_graph()));
    REQUIRE(p == fixtures::example1_charpoly());
  }
  SECTION("size bound") {
    REQUIRE_THROWS_AS(char_poly_exact(RationalMatrix(40, 40)), OracleError);
  }
}

TEST_CASE("characteristic polynomial via cycle covers") {
  REQUIRE(char_poly_coates(fixtures::cycle_graph(3)) ==
          IntPolynomial(std::vector<Rational>{-1, 0, 0, 1}));
  REQUIRE(char_poly_coates(fixtures::example1_graph()) ==
          fixtures::example1_charpoly());
  SECTION("self-loop counts as a 1-cycle") {
    Digraph g(2);
    g.add_edge(0, 0);
    g.add_edge(0, 1);
    // char poly of [[1,1],[0,0]] is x(x-1)
    REQUIRE(char_poly_coates(g) == IntPolynomial(std::vector<Rational>{0, -1, 1}));
  }
  SECTION("weighted graphs rejected") {
    Digraph g(2);
    g.add_edge(0, 1, 2.0);
    REQUIRE_THROWS_AS(char_poly_coates(g), OracleError);
  }
}

TEST_CASE("coates and algebraic routes agree on random digraphs") {
  std::mt19937_64 rng(321);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + static_cast<int>(rng() % 6);  // n in [2, 7]
    Digraph g(n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((rng() & 3u) == 0u && !g.has_edge(i, j)) g.add_edge(i, j);
    REQUIRE(char_poly_coates(g) == char_poly_exact(rational_adjacency(g)));
  }
}

TEST_CASE("minimal polynomial and diagonalizability") {
  SECTION("identity: m(x) = x - 1") {
    REQUIRE(minimal_polynomial(RationalMatrix::identity(4)) ==
            IntPolynomial(std::vector<Rational>{-1, 1}));
    REQUIRE(is_diagonalizable_exact(RationalMatrix::identity(4)));
  }
  SECTION("P_3: m(x) = x^3, not diagonalizable") {
    RationalMatrix a = rational_adjacency(fixtures::path_graph(3));
    REQUIRE(minimal_polynomial(a) == IntPolynomial::monomial(3));
    REQUIRE_FALSE(is_diagonalizable_exact(a));
  }
  SECTION("3-cycle is diagonalizable over C") {
    REQUIRE(is_diagonalizable_exact(rational_adjacency(fixtures::cycle_graph(3))));
  }
  SECTION("minimal polynomial divides the characteristic polynomial") {
    RationalMatrix a = rational_adjacency(fixtures::example1_graph());
    REQUIRE(minimal_polynomial(a).divides(char_poly_exact(a)));
  }
}

TEST_CASE("jordan structure from rank sequences") {
  SECTION("example 1 at zero: {2, 2}") {
    auto s = jordan_structure_at(rational_adjacency(fixtures::example1_graph()), 0);
    REQUIRE(s == std::vector<int>{2, 2});
  }
  SECTION("P_4 at zero: one block of size 4") {
    auto s = jordan_structure_at(rational_adjacency(fixtures::path_graph(4)), 0);
    REQUIRE(s == std::vector<int>{4});
  }
  SECTION("identity at one: all blocks size 1") {
    auto s = jordan_structure_at(RationalMatrix::identity(3), 1);
    REQUIRE(s == std::vector<int>{1, 1, 1});
  }
  SECTION("grid at zero: {5, 3, 1}") {
    auto s = jordan_structure_at(rational_adjacency(fixtures::grid3_graph()), 0);
    REQUIRE(s == std::vector<int>{5, 3, 1});
  }
  SECTION("non-eigenvalue rejected") {
    REQUIRE_THROWS_AS(jordan_structure_at(RationalMatrix::identity(2), 5),
                      OracleError);
  }
}

TEST_CASE("rank-1 update of the characteristic polynomial") {
  // P_4 plus edge (3,0) becomes the 4-cycle: x^4 - 1
  RationalMatrix a = rational_adjacency(fixtures::path_graph(4));
  std::vector<Rational> e4{0, 0, 0, 1}, e1{1, 0, 0, 0};
  IntPolynomial p = char_poly_after_rank1(a, e4, e1);
  REQUIRE(p == IntPolynomial(std::vector<Rational>{-1, 0, 0, 0, 1}));
}

TEST_CASE("rational laplacian") {
  RationalMatrix l = rational_laplacian(fixtures::path_graph(2), DegreeConvention::InDegree);
  REQUIRE(l(0, 0) == 0);
  REQUIRE(l(0, 1) == -1);
  REQUIRE(l(1, 1) == 1);
  // grid in-degree Laplacian has eigenvalues 1 and 2 with the frozen structures
  RationalMatrix gl = rational_laplacian(fixtures::grid3_graph(), DegreeConvention::InDegree);
  REQUIRE(jordan_structure_at(gl, 1) == std::vector<int>{2, 2});
  REQUIRE(jordan_structure_at(gl, 2) == std::vector<int>{3, 1});
}
