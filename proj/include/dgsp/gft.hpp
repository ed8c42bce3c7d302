#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "dgsp/numla.hpp"

namespace dgsp {

/// Fourier basis of a diagonalizable shift. Columns of `v` are unit-2-norm
/// eigenvectors ordered by ascending total variation; `f` is the inverse.
/// Immutable after build; transforms are pure.
class FourierBasis {
 public:
  Eigen::VectorXcd eigenvalues;
  Eigen::MatrixXcd v;
  Eigen::MatrixXcd f;
  Eigen::VectorXd tv;
  double lambda_max_abs = 0.0;
  // set when |lambda_max| fell below eps_zero and tv is the unnormalized
  // ||v - M v||_1 instead of the normalized form
  bool unnormalized_tv = false;

  int size() const { return static_cast<int>(eigenvalues.size()); }

  Eigen::VectorXcd transform(const Eigen::VectorXcd& s) const {
    if (s.size() != v.rows()) throw NumericalError("signal length mismatch");
    return lu_.solve(s);
  }

  Eigen::VectorXcd inverse_transform(const Eigen::VectorXcd& shat) const {
    if (shat.size() != v.cols()) throw NumericalError("spectrum length mismatch");
    return v * shat;
  }

  void seal() { lu_.compute(v); }

 private:
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
};

/// Total variation of a vector under shift m, with the max-magnitude
/// eigenvalue supplied by the caller.
inline double total_variation(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                              double lambda_max_abs) {
  if (x.size() != m.rows()) throw NumericalError("vector length mismatch");
  if (lambda_max_abs <= 0)
    throw NumericalError("total variation undefined: |lambda_max| is zero");
  return (x - (m * x) / lambda_max_abs).lpNorm<1>();
}

/// Convenience form computing |lambda_max| from m itself. Refuses nearly
/// nilpotent shifts (|lambda_max| <= eps_zero), where the normalization
/// degenerates.
inline double total_variation(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                              const Tolerances& tol = {}) {
  double lam = eig_general(m).values.cwiseAbs().maxCoeff();
  if (lam <= tol.eps_zero)
    throw NumericalError("total variation undefined: shift is nearly nilpotent");
  return total_variation(m, x, lam);
}

/// Build the Fourier basis of a diagonalizable shift. Ordering is ascending
/// total variation; ties break by eigenvalue argument, then by the solver's
/// output index, so spectra files are deterministic.
inline FourierBasis build_fourier(const Eigen::MatrixXcd& m,
                                  const Tolerances& tol = {}) {
  tol.validate();
  EigenPairs ep = eig_general(m);
  const int n = ep.size();
  if (numerical_rank(ep.vectors, tol.eps_rank) < n)
    throw NumericalError(
        "eigenvector matrix is rank-deficient: the shift is not numerically "
        "diagonalizable; run destroy_jordan_blocks first");

  FourierBasis fb;
  fb.lambda_max_abs = ep.values.cwiseAbs().maxCoeff();
  fb.unnormalized_tv = fb.lambda_max_abs <= tol.eps_zero;

  Eigen::VectorXd tv(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd x = ep.vectors.col(k);
    double l1 = x.lpNorm<1>();
    if (l1 > 0) x /= l1;  // evaluate on the unit-1-norm representative
    tv(k) = fb.unnormalized_tv ? (x - m * x).lpNorm<1>()
                               : total_variation(m, x, fb.lambda_max_abs);
  }

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (std::abs(tv(a) - tv(b)) > 1e-12) return tv(a) < tv(b);
    double aa = std::arg(ep.values(a)), ab = std::arg(ep.values(b));
    if (std::abs(aa - ab) > 1e-12) return aa < ab;
    return a < b;
  });

  fb.eigenvalues.resize(n);
  fb.v.resize(n, n);
  fb.tv.resize(n);
  for (int k = 0; k < n; ++k) {
    fb.eigenvalues(k) = ep.values(order[k]);
    fb.v.col(k) = ep.vectors.col(order[k]);
    fb.tv(k) = tv(order[k]);
  }
  fb.f = invert(fb.v, tol.eps_rank);
  fb.seal();
  return fb;
}

inline FourierBasis build_fourier(const Eigen::MatrixXd& m,
                                  const Tolerances& tol = {}) {
  return build_fourier(Eigen::MatrixXcd(m.cast<Complex>()), tol);
}

struct DiagResidual {
  Eigen::MatrixXcd residual;  // F M V - diag(eigenvalues of fb)
  int rank = 0;
};

/// How far the basis of the repaired shift is from diagonalizing the original
/// one. The rank of the residual is bounded by the rank of the perturbation.
inline DiagResidual diag_residual(const FourierBasis& fb, const Eigen::MatrixXcd& m,
                                  double eps_rank = 1e-6) {
  if (m.rows() != fb.v.rows() || m.cols() != fb.v.rows())
    throw NumericalError("shape mismatch");
  DiagResidual out;
  out.residual = fb.f * m * fb.v;
  out.residual.diagonal() -= fb.eigenvalues;
  out.rank = numerical_rank(out.residual, eps_rank);
  return out;
}

/// Number of entries of M v - lambda v above zero_tol: how many rows of the
/// eigen-relation the perturbation actually broke.
inline int l0_residual(const Eigen::MatrixXcd& m, const Eigen::VectorXcd& x,
                       Complex lambda, double zero_tol = 1e-8) {
  if (x.size() != m.rows()) throw NumericalError("vector length mismatch");
  if (std::abs(x.norm() - 1.0) > 1e-8)
    throw NumericalError("l0_residual requires a unit-2-norm vector");
  Eigen::VectorXcd r = m * x - lambda * x;
  int count = 0;
  for (int i = 0; i < r.size(); ++i)
    if (std::abs(r(i)) > zero_tol) ++count;
  return count;
}

namespace detail {

// Average-rank assignment (ties share the mean of their rank span).
inline std::vector<double> fractional_ranks(const std::vector<double>& x) {
  const int n = static_cast<int>(x.size());
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) { return x[a] < x[b]; });
  std::vector<double> rank(n);
  int i = 0;
  while (i < n) {
    int j = i;
    while (j + 1 < n && x[order[j + 1]] == x[order[i]]) ++j;
    double avg = (i + j) / 2.0 + 1.0;
    for (int k = i; k <= j; ++k) rank[order[k]] = avg;
    i = j + 1;
  }
  return rank;
}

}  // namespace detail

/// Spearman rank correlation; 1.0 when either side is constant (identical
/// orderings by convention, covers the n = 1 and M_old = M_new cases).
inline double spearman(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size() || a.empty())
    throw NumericalError("spearman requires two equal non-empty sequences");
  std::vector<double> ra = detail::fractional_ranks(a);
  std::vector<double> rb = detail::fractional_ranks(b);
  const int n = static_cast<int>(a.size());
  double ma = 0, mb = 0;
  for (int i = 0; i < n; ++i) {
    ma += ra[i];
    mb += rb[i];
  }
  ma /= n;
  mb /= n;
  double num = 0, da = 0, db = 0;
  for (int i = 0; i < n; ++i) {
    num += (ra[i] - ma) * (rb[i] - mb);
    da += (ra[i] - ma) * (ra[i] - ma);
    db += (rb[i] - mb) * (rb[i] - mb);
  }
  if (da == 0 || db == 0) return 1.0;
  return num / std::sqrt(da * db);
}

struct TvComparison {
  std::vector<std::pair<double, double>> pairs;  // (tv_old, tv_new) per column
  double correlation = 1.0;
  bool old_unnormalized = false;  // M_old nearly nilpotent, tv_old is ||v - Mv||_1
};

/// Per-eigenvector total variation under the original and the repaired shift,
/// with the Spearman correlation of the two orderings.
inline TvComparison tv_compare(const Eigen::MatrixXcd& m_old,
                               const Eigen::MatrixXcd& m_new,
                               const FourierBasis& fb, const Tolerances& tol = {}) {
  if (m_old.rows() != fb.v.rows() || m_new.rows() != fb.v.rows())
    throw NumericalError("shape mismatch");
  TvComparison out;
  double lam_old = eig_general(m_old).values.cwiseAbs().maxCoeff();
  out.old_unnormalized = lam_old <= tol.eps_zero;
  const int n = fb.size();
  std::vector<double> tv_old(n), tv_new(n);
  for (int k = 0; k < n; ++k) {
    Eigen::VectorXcd x = fb.v.col(k);
    double l1 = x.lpNorm<1>();
    if (l1 > 0) x /= l1;
    tv_old[k] = out.old_unnormalized ? (x - m_old * x).lpNorm<1>()
                                     : total_variation(m_old, x, lam_old);
    tv_new[k] = fb.tv(k);
    out.pairs.emplace_back(tv_old[k], tv_new[k]);
  }
  out.correlation = spearman(tv_old, tv_new);
  return out;
}

}  // namespace dgsp
