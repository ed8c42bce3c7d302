#pragma once

// Shared graphs and exact reference data used across the test suites.

#include <vector>

#include "dgsp/dgsp.hpp"

namespace fixtures {

inline dgsp::Digraph path_graph(int n) {
  dgsp::Digraph g(n);
  for (int i = 0; i + 1 < n; ++i) g.add_edge(i, i + 1);
  return g;
}

inline dgsp::Digraph cycle_graph(int n) {
  dgsp::Digraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// 7-vertex graph whose adjacency has two Jordan blocks of size 2 at zero;
// characteristic polynomial x^7 - x^4.
inline dgsp::Digraph example1_graph() {
  dgsp::Digraph g(7);
  const int e[][2] = {{0, 1}, {0, 3}, {0, 4}, {1, 2}, {1, 5}, {1, 6},
                      {2, 0}, {2, 4}, {2, 5}, {2, 6}, {3, 6}, {4, 5}};
  for (const auto& p : e) g.add_edge(p[0], p[1]);
  return g;
}

// Exact right/left eigenvectors at zero for the two size-2 blocks of the
// example-1 adjacency, in block order.
struct Example1Blocks {
  std::vector<dgsp::Rational> v1{-1, -1, 0, 0, 1, 0, 0};
  std::vector<dgsp::Rational> v2{0, -1, 0, 1, 0, 0, 0};
  std::vector<dgsp::Rational> u1{0, 0, 0, 0, 0, 1, 0};
  std::vector<dgsp::Rational> u2{0, 0, 0, 0, 0, 0, 1};
};

// Characteristic polynomial of the repaired example-1 graph (edges (5,0) and
// (6,1) added): x^7 - x^5 - 4x^4 - x^3 - 2x^2 - 1.
inline dgsp::IntPolynomial example1_repaired_charpoly() {
  return dgsp::IntPolynomial(
      std::vector<dgsp::Rational>{-1, 0, -2, -1, -4, -1, 0, 1});
}

inline dgsp::IntPolynomial example1_charpoly() {
  // x^7 - x^4
  return dgsp::IntPolynomial(
      std::vector<dgsp::Rational>{0, 0, 0, 0, -1, 0, 0, 1});
}

// 3x3 directed acyclic grid; vertex (row, col) -> 3*row + col, edges to the
// right and upward.
inline dgsp::Digraph grid3_graph() {
  dgsp::Digraph g(9);
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      int v = 3 * r + c;
      if (c < 2) g.add_edge(v, v + 1);
      if (r < 2) g.add_edge(v, v + 3);
    }
  return g;
}

// Exact eigenvectors at zero for the two largest adjacency blocks of the
// grid (sizes 5 and 3), plus the lambda = 2 data of the in-degree Laplacian.
struct Grid3Blocks {
  std::vector<dgsp::Rational> adj_v1{6, 0, 0, 0, 0, 0, 0, 0, 0};
  std::vector<dgsp::Rational> adj_u1{0, 0, 0, 0, 0, 0, 0, 0, 1};
  std::vector<dgsp::Rational> adj_v2{0, -1, 0, 1, 0, 0, 0, 0, 0};
  std::vector<dgsp::Rational> adj_u2{0, 0, 0, 0, 0, {-1, 2}, 0, {1, 2}, 0};
  std::vector<dgsp::Rational> lap2_v{2, -2, 0, -2, 2, 0, 0, 0, 0};
  std::vector<dgsp::Rational> lap2_u{0, 0, 0, 0, 0, 0, 0, 0, 1};
};

inline dgsp::RationalMatrix column(const std::vector<dgsp::Rational>& v) {
  dgsp::RationalMatrix m(static_cast<int>(v.size()), 1);
  for (size_t i = 0; i < v.size(); ++i) m(static_cast<int>(i), 0) = v[i];
  return m;
}

inline Eigen::VectorXcd to_unit_complex(const std::vector<dgsp::Rational>& v) {
  Eigen::VectorXcd x(static_cast<int>(v.size()));
  for (size_t i = 0; i < v.size(); ++i)
    x(static_cast<int>(i)) = v[i].get_d();
  x.normalize();
  return x;
}

}  // namespace fixtures
