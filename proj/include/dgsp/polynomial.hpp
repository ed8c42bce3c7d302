#pragma once

#include <sstream>
#include <string>
#include <vector>

#include "dgsp/rational.hpp"

namespace dgsp {

/// Univariate polynomial with exact rational coefficients, lowest degree
/// first. The zero polynomial has an empty coefficient list.
class IntPolynomial {
 public:
  IntPolynomial() = default;
  explicit IntPolynomial(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    trim();
  }

  static IntPolynomial zero() { return IntPolynomial(); }
  static IntPolynomial constant(const Rational& a) { return IntPolynomial({a}); }

  /// x^n with optional scale.
  static IntPolynomial monomial(int n, const Rational& a = 1) {
    std::vector<Rational> c(n + 1, 0);
    c[n] = a;
    return IntPolynomial(std::move(c));
  }

  const std::vector<Rational>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero

  const Rational& operator[](int k) const {
    static const Rational kZero = 0;
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[k] : kZero;
  }

  Rational leading() const { return is_zero() ? Rational(0) : c_.back(); }
  bool is_monic() const { return !is_zero() && c_.back() == 1; }

  bool operator==(const IntPolynomial& o) const { return c_ == o.c_; }

  Rational eval(const Rational& x) const {
    Rational v = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * x + *it;
    return v;
  }

  IntPolynomial operator+(const IntPolynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return IntPolynomial(std::move(r));
  }

  IntPolynomial operator-(const IntPolynomial& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return IntPolynomial(std::move(r));
  }

  IntPolynomial operator*(const IntPolynomial& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return IntPolynomial(std::move(r));
  }

  IntPolynomial scaled(const Rational& a) const {
    std::vector<Rational> r(c_);
    for (auto& x : r) x *= a;
    return IntPolynomial(std::move(r));
  }

  IntPolynomial monic() const {
    if (is_zero()) return *this;
    return scaled(1 / c_.back());
  }

  IntPolynomial derivative() const {
    if (c_.size() <= 1) return zero();
    std::vector<Rational> r(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(static_cast<long>(i));
    return IntPolynomial(std::move(r));
  }

  /// Euclidean division; returns (quotient, remainder).
  std::pair<IntPolynomial, IntPolynomial> divmod(const IntPolynomial& d) const {
    if (d.is_zero()) throw OracleError("polynomial division by zero");
    IntPolynomial rem = *this;
    std::vector<Rational> q;
    if (rem.degree() >= d.degree())
      q.assign(rem.degree() - d.degree() + 1, 0);
    while (!rem.is_zero() && rem.degree() >= d.degree()) {
      int shift = rem.degree() - d.degree();
      Rational f = rem.leading() / d.leading();
      q[shift] = f;
      rem = rem - d.scaled(f) * monomial(shift);
    }
    return {IntPolynomial(std::move(q)), rem};
  }

  bool divides(const IntPolynomial& other) const {
    return other.divmod(*this).second.is_zero();
  }

  std::string str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rational& a = c_[k];
      if (a == 0) continue;
      Rational mag = abs(a);
      if (first) {
        if (a < 0) os << "-";
        first = false;
      } else {
        os << (a < 0 ? " - " : " + ");
      }
      if (k == 0 || mag != 1) os << mag.get_str();
      if (k > 0) {
        os << "x";
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }

  std::vector<Rational> c_;
};

/// Monic gcd over Q.
inline IntPolynomial poly_gcd(IntPolynomial a, IntPolynomial b) {
  while (!b.is_zero()) {
    IntPolynomial r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

inline bool is_squarefree(const IntPolynomial& p) {
  if (p.is_zero()) return false;
  return poly_gcd(p, p.derivative()).degree() == 0;
}

}  // namespace dgsp
