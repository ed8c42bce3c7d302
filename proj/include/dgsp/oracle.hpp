#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "dgsp/graph.hpp"
#include "dgsp/polynomial.hpp"
#include "dgsp/rational.hpp"

namespace dgsp {

// Exact routines are verification oracles for small instances; the bounds
// keep the cost proportionate (Faddeev-LeVerrier is O(n^4) big-rational ops,
// the cycle-cover enumeration is exponential).
inline constexpr int kMaxExactSize = 32;   // algebraic route (contract: >= 16)
inline constexpr int kMaxCoatesSize = 12;  // combinatorial route

namespace detail {

inline void check_exact_size(const RationalMatrix& m) {
  if (m.rows() != m.cols()) throw OracleError("matrix must be square");
  if (m.rows() == 0) throw OracleError("matrix must be non-empty");
  if (m.rows() > kMaxExactSize)
    throw OracleError("exact routines are bounded at n = " +
                      std::to_string(kMaxExactSize));
}

}  // namespace detail

/// Exact monic characteristic polynomial det(xI - M) via Faddeev-LeVerrier.
inline IntPolynomial char_poly_exact(const RationalMatrix& m) {
  detail::check_exact_size(m);
  const int n = m.rows();
  std::vector<Rational> c(n + 1, 0);
  c[n] = 1;
  RationalMatrix mk(n, n);  // starts at zero; iteration: M_k = M (M_{k-1} + c_{n-k+1} I)
  Rational ck = 1;
  for (int k = 1; k <= n; ++k) {
    for (int i = 0; i < n; ++i) mk(i, i) += ck;
    mk = m * mk;
    ck = -mk.trace() / k;
    c[n - k] = ck;
  }
  return IntPolynomial(std::move(c));
}

/// Independent combinatorial route: coefficients from vertex-disjoint unions
/// of simple directed cycles, signed by (-1)^{number of cycles}. Unweighted
/// graphs only; self-loops count as 1-cycles.
inline IntPolynomial char_poly_coates(const Digraph& g) {
  if (g.weighted()) throw OracleError("cycle-cover route requires an unweighted graph");
  const int n = g.num_vertices();
  if (n == 0) throw OracleError("graph must be non-empty");
  if (n > kMaxCoatesSize)
    throw OracleError("cycle-cover enumeration is bounded at n = " +
                      std::to_string(kMaxCoatesSize));

  std::vector<std::vector<int>> adj(n);
  for (const auto& [i, j] : g.edges()) adj[i].push_back(j);

  // f[S] = sum over decompositions of S into vertex-disjoint simple cycles
  // (covering all of S) of (-1)^{#cycles}; f[empty] = 1. Computed by
  // enumerating the cycle through the lowest vertex of S and recursing.
  std::vector<long long> f(1u << n, 0);
  std::vector<char> computed(1u << n, 0);
  f[0] = 1;
  computed[0] = 1;

  // DFS over cycles starting at the lowest vertex of S, restricted to S.
  struct Solver {
    int n;
    const std::vector<std::vector<int>>& adj;
    std::vector<long long>& f;
    std::vector<char>& computed;

    long long solve(std::uint32_t s) {
      if (computed[s]) return f[s];
      computed[s] = 1;
      int start = __builtin_ctz(s);
      long long total = 0;
      // walk: current vertex, set of visited vertices on the path
      dfs(start, start, static_cast<std::uint32_t>(1u << start), s, total);
      f[s] = total;
      return total;
    }

    void dfs(int start, int v, std::uint32_t path, std::uint32_t s,
             long long& total) {
      for (int w : adj[v]) {
        if (!((s >> w) & 1u)) continue;
        if (w == start) {
          total -= solve(s & ~path);  // one more cycle: factor (-1)
        } else if (!((path >> w) & 1u) && w > start) {
          dfs(start, w, path | (1u << w), s, total);
        }
      }
    }
  } solver{n, adj, f, computed};

  std::vector<Rational> c(n + 1, 0);
  c[n] = 1;
  for (std::uint32_t s = 1; s < (1u << n); ++s) {
    long long v = solver.solve(s);
    if (v != 0) c[n - __builtin_popcount(s)] += static_cast<long>(v);
  }
  return IntPolynomial(std::move(c));
}

/// Least-degree monic annihilator: first exact linear dependence among the
/// vectorized powers I, M, M^2, ...
inline IntPolynomial minimal_polynomial(const RationalMatrix& m) {
  detail::check_exact_size(m);
  const int n = m.rows();
  const int dim = n * n;
  // Row-reduced basis of the span of vec(M^0..M^{d-1}), with the expression
  // of each reduced row in terms of the original powers.
  std::vector<std::vector<Rational>> basis;       // reduced vectors
  std::vector<std::vector<Rational>> coords;      // coefficients over powers
  std::vector<int> pivot_of;                      // pivot index per basis row

  RationalMatrix pw = RationalMatrix::identity(n);
  for (int d = 0;; ++d) {
    std::vector<Rational> v(dim);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[i * n + j] = pw(i, j);
    std::vector<Rational> coord(d + 1, 0);
    coord[d] = 1;
    // reduce against basis
    for (size_t r = 0; r < basis.size(); ++r) {
      const Rational& x = v[pivot_of[r]];
      if (x == 0) continue;
      Rational fctr = x;  // basis rows are pivot-normalized to 1
      for (int k = 0; k < dim; ++k) v[k] -= fctr * basis[r][k];
      for (size_t k = 0; k < coords[r].size(); ++k)
        coord[k] -= fctr * coords[r][k];
    }
    int piv = -1;
    for (int k = 0; k < dim; ++k)
      if (v[k] != 0) {
        piv = k;
        break;
      }
    if (piv < 0) {
      // dependence found: sum coord[k] M^k = 0, coord[d] = 1 => monic
      return IntPolynomial(std::move(coord));
    }
    Rational inv = 1 / v[piv];
    for (int k = 0; k < dim; ++k) v[k] *= inv;
    for (auto& x : coord) x *= inv;
    basis.push_back(std::move(v));
    coords.push_back(std::move(coord));
    pivot_of.push_back(piv);
    pw = pw * m;
  }
}

/// Diagonalizable over C iff the minimal polynomial is square-free.
inline bool is_diagonalizable_exact(const RationalMatrix& m) {
  return is_squarefree(minimal_polynomial(m));
}

/// Multiset of Jordan block sizes for an exact rational eigenvalue, from the
/// rank sequence r_k = rank((M - lambda I)^k): the number of blocks of size
/// >= k is r_{k-1} - r_k. Returned sorted descending.
inline std::vector<int> jordan_structure_at(const RationalMatrix& m,
                                            const Rational& lambda) {
  detail::check_exact_size(m);
  const int n = m.rows();
  if (char_poly_exact(m).eval(lambda) != 0)
    throw OracleError("lambda is not an eigenvalue");
  RationalMatrix shifted = m;
  for (int i = 0; i < n; ++i) shifted(i, i) -= lambda;
  std::vector<int> ranks{n};
  RationalMatrix pw = shifted;
  while (true) {
    int r = pw.rank();
    ranks.push_back(r);
    if (r == ranks[ranks.size() - 2]) break;  // stabilized
    pw = pw * shifted;
  }
  // blocks of size exactly k: (r_{k-1} - r_k) - (r_k - r_{k+1})
  std::vector<int> sizes;
  for (size_t k = 1; k + 1 < ranks.size(); ++k) {
    int exact = (ranks[k - 1] - ranks[k]) - (ranks[k] - ranks[k + 1]);
    for (int b = 0; b < exact; ++b) sizes.push_back(static_cast<int>(k));
  }
  std::sort(sizes.rbegin(), sizes.rend());
  return sizes;
}

/// Exact characteristic polynomial of M + a b^T. The roots are the solutions
/// of the rank-one eigenvalue-migration equation.
inline IntPolynomial char_poly_after_rank1(const RationalMatrix& m,
                                           const std::vector<Rational>& a,
                                           const std::vector<Rational>& b) {
  detail::check_exact_size(m);
  const int n = m.rows();
  if (static_cast<int>(a.size()) != n || static_cast<int>(b.size()) != n)
    throw OracleError("vector dimension mismatch");
  RationalMatrix p = m;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (a[i] != 0 && b[j] != 0) p(i, j) += a[i] * b[j];
  return char_poly_exact(p);
}

inline RationalMatrix rational_adjacency(const Digraph& g) {
  const int n = g.num_vertices();
  RationalMatrix m(n, n);
  for (const auto& [i, j] : g.edges()) m(i, j) = Rational(g.weight(i, j));
  return m;
}

inline RationalMatrix rational_laplacian(const Digraph& g, DegreeConvention c) {
  if (g.has_self_loop())
    throw GraphError("Laplacian is not defined for graphs with self-loops");
  const int n = g.num_vertices();
  RationalMatrix a = rational_adjacency(g);
  RationalMatrix l(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      l(i, j) = -a(i, j);
      if (i == j) {
        Rational deg = 0;
        for (int k = 0; k < n; ++k)
          deg += (c == DegreeConvention::InDegree) ? a(k, i) : a(i, k);
        l(i, j) += deg;
      }
    }
  return l;
}

}  // namespace dgsp
