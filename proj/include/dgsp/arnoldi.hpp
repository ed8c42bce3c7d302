#pragma once

#include <cmath>
#include <complex>
#include <random>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "dgsp/numla.hpp"

namespace dgsp {

struct SparseEigenResult {
  Complex value;
  Eigen::VectorXcd vector;  // unit 2-norm
  double residual;          // ||A v - lambda v||_2
};

/// Smallest-magnitude eigenpair of a sparse matrix via Arnoldi iteration with
/// full reorthogonalization. No shift-invert: the matrices of interest are
/// exactly singular, so the subspace is grown until the smallest-magnitude
/// Ritz pair meets the residual target (worst case the full space, which is
/// exact). The starting vector is derived from `seed`, making the result
/// deterministic per seed. Early termination on Arnoldi breakdown: the Krylov
/// space is then invariant and the Ritz pairs exact.
inline SparseEigenResult sparse_eigenpair_near_zero(
    const Eigen::SparseMatrix<double>& a, std::uint64_t seed = 0,
    double rel_tol = 1e-8) {
  const int n = static_cast<int>(a.rows());
  if (a.cols() != n) throw NumericalError("matrix must be square");
  if (n == 0) throw NumericalError("matrix must be non-empty");
  const double anorm = a.norm();
  if (anorm == 0.0) {
    SparseEigenResult r{Complex(0, 0), Eigen::VectorXcd::Zero(n), 0.0};
    r.vector(0) = 1.0;
    return r;
  }

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  Eigen::VectorXcd v0(n);
  for (int i = 0; i < n; ++i) v0(i) = Complex(unif(rng), unif(rng));
  v0.normalize();

  Eigen::MatrixXcd q(n, n + 1);
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(n + 1, n);
  q.col(0) = v0;

  auto extract = [&](int m) -> SparseEigenResult {
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(h.topLeftCorner(m, m));
    int best = 0;
    for (int k = 1; k < m; ++k)
      if (std::abs(es.eigenvalues()(k)) < std::abs(es.eigenvalues()(best)))
        best = k;
    Complex theta = es.eigenvalues()(best);
    Eigen::VectorXcd y = es.eigenvectors().col(best);
    Eigen::VectorXcd v = q.leftCols(m) * y;
    v.normalize();
    Eigen::VectorXcd av = a.cast<Complex>() * v;
    double res = (av - theta * v).norm();
    return SparseEigenResult{theta, v, res};
  };

  int m = 0;
  bool breakdown = false;
  while (m < n && !breakdown) {
    int target = std::min(n, m == 0 ? std::min(n, 24) : m * 2);
    for (; m < target; ++m) {
      Eigen::VectorXcd w = a.cast<Complex>() * q.col(m);
      // modified Gram-Schmidt, twice
      for (int pass = 0; pass < 2; ++pass) {
        for (int i = 0; i <= m; ++i) {
          Complex c = q.col(i).dot(w);
          h(i, m) += c;
          w -= c * q.col(i);
        }
      }
      double beta = w.norm();
      h(m + 1, m) = beta;
      if (beta < 1e-14 * anorm) {
        breakdown = true;
        ++m;
        break;
      }
      q.col(m + 1) = w / beta;
    }
    SparseEigenResult r = extract(m);
    if (r.residual <= rel_tol * anorm || breakdown || m == n) {
      if (r.residual <= rel_tol * anorm) return r;
      if (breakdown || m == n)
        throw NumericalError(
            "Arnoldi did not reach the residual target; achieved residual " +
            std::to_string(r.residual));
    }
  }
  throw NumericalError("Arnoldi iteration failed");
}

}  // namespace dgsp
