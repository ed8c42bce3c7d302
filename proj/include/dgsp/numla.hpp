#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace dgsp {

using Complex = std::complex<double>;

class NumericalError : public std::runtime_error {
 public:
  explicit NumericalError(const std::string& msg) : std::runtime_error(msg) {}
};

/// The three numerical knobs of the destroy algorithms.
struct Tolerances {
  double eps_rank = 1e-6;       // smallest singular value for "full rank"
  double eps_angle_deg = 1.0;   // eigenvector collinearity angle, degrees
  double eps_zero = 1e-3;       // |lambda| below this counts as zero

  void validate() const {
    if (eps_rank <= 0 || eps_angle_deg <= 0 || eps_zero <= 0)
      throw NumericalError("tolerances must be strictly positive");
    if (eps_angle_deg >= 90)
      throw NumericalError("eps_angle_deg must be below 90 degrees");
  }
};

/// Eigenvalues and unit-2-norm eigenvector columns. For defective input the
/// columns of a Jordan block repeat (near-)identically instead of failing.
struct EigenPairs {
  Eigen::VectorXcd values;
  Eigen::MatrixXcd vectors;
  // Set by eig_left when two eigenvalue clusters overlap within 1e-10 and the
  // greedy pairing is therefore ambiguous.
  bool pairing_ambiguous = false;

  int size() const { return static_cast<int>(values.size()); }
};

namespace detail {

inline void normalize_columns(Eigen::MatrixXcd& v) {
  for (int k = 0; k < v.cols(); ++k) {
    double nrm = v.col(k).norm();
    if (nrm > 0) v.col(k) /= nrm;
  }
}

}  // namespace detail

/// General (non-symmetric) dense eigendecomposition. Backed by Eigen's
/// Schur-based solvers, which perform no balancing; eigenvector entry
/// magnitudes are therefore not distorted by diagonal similarity scaling.
/// Residual contract: ||M v_k - lambda_k v_k|| <= c n eps_mach ||M|| with
/// c a small constant (observed < 100 on random inputs up to n = 200).
inline EigenPairs eig_general(const Eigen::MatrixXcd& m) {
  if (m.rows() != m.cols()) throw NumericalError("matrix must be square");
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition did not converge");
  EigenPairs out{es.eigenvalues(), es.eigenvectors()};
  detail::normalize_columns(out.vectors);
  return out;
}

inline EigenPairs eig_general(const Eigen::MatrixXd& m) {
  if (m.rows() != m.cols()) throw NumericalError("matrix must be square");
  Eigen::EigenSolver<Eigen::MatrixXd> es(m);
  if (es.info() != Eigen::Success)
    throw NumericalError("eigendecomposition did not converge");
  EigenPairs out{es.eigenvalues(), es.eigenvectors()};
  detail::normalize_columns(out.vectors);
  return out;
}

/// Left eigenvectors, computed from the transpose and reordered so that
/// column k matches the k-th eigenvalue of `right` by greedy nearest-value
/// pairing (ties by index order). Overlapping clusters within 1e-10 set the
/// ambiguity flag.
template <typename Derived>
inline EigenPairs eig_left(const Eigen::MatrixBase<Derived>& m,
                           const EigenPairs& right) {
  using Plain = typename Derived::PlainObject;
  EigenPairs lft = eig_general(Plain(m.transpose()));
  const int n = lft.size();
  if (n != right.size()) throw NumericalError("dimension mismatch");
  std::vector<bool> used(n, false);
  EigenPairs out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  bool ambiguous = false;
  for (int k = 0; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    double second = best;
    int bj = -1;
    for (int j = 0; j < n; ++j) {
      if (used[j]) continue;
      double d = std::abs(lft.values(j) - right.values(k));
      if (d < best) {
        second = best;
        best = d;
        bj = j;
      } else if (d < second) {
        second = d;
      }
    }
    if (second - best < 1e-10 && second < std::numeric_limits<double>::infinity())
      ambiguous = true;
    used[bj] = true;
    out.values(k) = lft.values(bj);
    out.vectors.col(k) = lft.vectors.col(bj);
  }
  out.pairing_ambiguous = ambiguous;
  return out;
}

template <typename Derived>
inline EigenPairs eig_left(const Eigen::MatrixBase<Derived>& m) {
  return eig_left(m, eig_general(m.eval()));
}

inline Eigen::VectorXd singular_values(const Eigen::MatrixXcd& m) {
  if (m.rows() == 0 || m.cols() == 0)
    throw NumericalError("matrix must be non-empty");
  if (m.rows() >= 32 && m.cols() >= 32) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues();
}

/// Number of singular values above `eps`.
inline int numerical_rank(const Eigen::MatrixXcd& m, double eps) {
  Eigen::VectorXd sv = singular_values(m);
  int r = 0;
  for (int i = 0; i < sv.size(); ++i)
    if (sv(i) > eps) ++r;
  return r;
}

inline int numerical_rank(const Eigen::MatrixXd& m, double eps) {
  return numerical_rank(Eigen::MatrixXcd(m.cast<Complex>()), eps);
}

/// Pairwise angles (degrees) between the one-dimensional subspaces spanned by
/// the unit columns of v: acos(|v_i^H v_j|) entrywise.
inline Eigen::MatrixXd subspace_angles(const Eigen::MatrixXcd& v) {
  const int n = static_cast<int>(v.cols());
  for (int k = 0; k < n; ++k)
    if (std::abs(v.col(k).norm() - 1.0) > 1e-8)
      throw NumericalError("subspace_angles requires unit-norm columns");
  Eigen::MatrixXd d(n, n);
  constexpr double kRadToDeg = 180.0 / std::numbers::pi;
  for (int i = 0; i < n; ++i) {
    d(i, i) = 0.0;
    for (int j = i + 1; j < n; ++j) {
      double c = std::min(1.0, std::abs(Complex(v.col(i).adjoint() * v.col(j))));
      double ang = std::acos(c) * kRadToDeg;
      d(i, j) = ang;
      d(j, i) = ang;
    }
  }
  return d;
}

inline double condition_number(const Eigen::MatrixXcd& m) {
  Eigen::VectorXd sv = singular_values(m);
  double smax = sv(0);
  double smin = sv(sv.size() - 1);
  if (smax == 0) throw NumericalError("condition number of zero matrix");
  if (smin == 0) return std::numeric_limits<double>::infinity();
  return smax / smin;
}

inline double condition_number(const Eigen::MatrixXd& m) {
  return condition_number(Eigen::MatrixXcd(m.cast<Complex>()));
}

/// Inverse of a numerically full-rank matrix. Refuses rank-deficient input at
/// `eps_rank` -- the "not yet diagonalizable" signal.
inline Eigen::MatrixXcd invert(const Eigen::MatrixXcd& v, double eps_rank = 1e-6) {
  const int n = static_cast<int>(v.rows());
  if (v.cols() != n) throw NumericalError("matrix must be square");
  if (numerical_rank(v, eps_rank) < n)
    throw NumericalError("matrix is rank-deficient at tolerance " +
                         std::to_string(eps_rank));
  return v.partialPivLu().inverse();
}

}  // namespace dgsp
