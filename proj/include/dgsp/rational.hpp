#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dgsp {

using Rational = mpq_class;

class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Dense matrix of exact rationals (arbitrary-precision, canonical reduced
/// form as maintained by GMP).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<size_t>(rows) * cols, 0) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static RationalMatrix from_double(const Eigen::MatrixXd& a) {
    RationalMatrix m(static_cast<int>(a.rows()), static_cast<int>(a.cols()));
    for (int i = 0; i < m.rows_; ++i)
      for (int j = 0; j < m.cols_; ++j) m(i, j) = Rational(a(i, j));
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Rational& operator()(int i, int j) { return data_[idx(i, j)]; }
  const Rational& operator()(int i, int j) const { return data_[idx(i, j)]; }

  bool operator==(const RationalMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

  RationalMatrix operator*(const RationalMatrix& o) const {
    if (cols_ != o.rows_) throw OracleError("matrix dimension mismatch");
    RationalMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
      for (int k = 0; k < cols_; ++k) {
        const Rational& a = (*this)(i, k);
        if (a == 0) continue;
        for (int j = 0; j < o.cols_; ++j) {
          const Rational& b = o(k, j);
          if (b != 0) r(i, j) += a * b;
        }
      }
    return r;
  }

  RationalMatrix operator+(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw OracleError("matrix dimension mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] + o.data_[i];
    return r;
  }

  RationalMatrix operator-(const RationalMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw OracleError("matrix dimension mismatch");
    RationalMatrix r(rows_, cols_);
    for (size_t i = 0; i < data_.size(); ++i) r.data_[i] = data_[i] - o.data_[i];
    return r;
  }

  RationalMatrix& operator-=(const RationalMatrix& o) { return *this = *this - o; }

  Rational trace() const {
    Rational t = 0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  /// Exact rank via Gaussian elimination over Q.
  int rank() const {
    RationalMatrix m(*this);
    int r = 0;
    for (int c = 0; c < cols_ && r < rows_; ++c) {
      int piv = -1;
      for (int i = r; i < rows_; ++i)
        if (m(i, c) != 0) {
          piv = i;
          break;
        }
      if (piv < 0) continue;
      if (piv != r)
        for (int j = 0; j < cols_; ++j) std::swap(m(piv, j), m(r, j));
      Rational inv = 1 / m(r, c);
      for (int j = c; j < cols_; ++j) m(r, j) *= inv;
      for (int i = 0; i < rows_; ++i) {
        if (i == r || m(i, c) == 0) continue;
        Rational f = m(i, c);
        for (int j = c; j < cols_; ++j) m(i, j) -= f * m(r, j);
      }
      ++r;
    }
    return r;
  }

 private:
  size_t idx(int i, int j) const {
    if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
      throw OracleError("matrix index out of range");
    return static_cast<size_t>(i) * cols_ + j;
  }

  int rows_ = 0;
  int cols_ = 0;
  std::vector<Rational> data_;
};

}  // namespace dgsp
