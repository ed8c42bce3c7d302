#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "dgsp/gft.hpp"

namespace dgsp {

/// Energy-preserving shift A_e = V Lambda_e V^{-1} with unit-circle
/// eigenvalues exp(-2 pi i k / n). The index k follows the basis's TV order
/// (the correspondence between sorted eigenvectors and the unit-circle
/// frequencies is a convention; this one is deterministic and documented).
struct EnergyShift {
  Eigen::MatrixXcd a_e;
  Eigen::MatrixXcd v;
  Eigen::MatrixXcd f;
  Eigen::VectorXcd lambda_e;

  int size() const { return static_cast<int>(lambda_e.size()); }

  /// A_e^k y through the eigenbasis, avoiding dense matrix powers.
  Eigen::VectorXcd apply_power(const Eigen::VectorXcd& y, int k) const {
    if (y.size() != v.rows()) throw NumericalError("signal length mismatch");
    if (k < 0) throw NumericalError("negative power");
    Eigen::VectorXcd yhat = f * y;
    for (int t = 0; t < k; ++t) yhat.array() *= lambda_e.array();
    return v * yhat;
  }
};

inline EnergyShift energy_shift(const FourierBasis& fb) {
  const int n = fb.size();
  EnergyShift es;
  es.v = fb.v;
  es.f = fb.f;
  es.lambda_e.resize(n);
  for (int k = 0; k < n; ++k) {
    double ang = -2.0 * std::numbers::pi * k / n;
    es.lambda_e(k) = Complex(std::cos(ang), std::sin(ang));
  }
  es.a_e = fb.v * es.lambda_e.asDiagonal() * fb.f;
  return es;
}

struct WienerDesign {
  Eigen::VectorXcd h;
  int order = 0;
  double residual = 0.0;     // ||B h - x||_2 for the regressor matrix B
  bool ls_fallback = false;  // regressor matrix rank-deficient, minimum-norm h
};

/// Order-L graph Wiener filter: h minimizing ||B h - x||_2 with regressor
/// columns B = [y, A_e y, ..., A_e^{L-1} y], solved by column-pivoted QR.
/// The normal-equation form R_{y,y} h = r_{x,y} is algebraically equivalent
/// and kept to tests as a cross-check.
inline WienerDesign wiener_design(const Eigen::VectorXcd& x,
                                  const Eigen::VectorXcd& y,
                                  const EnergyShift& ae, int order) {
  const int n = ae.size();
  if (order < 1 || order > n) throw NumericalError("filter order out of range");
  if (x.size() != n || y.size() != n) throw NumericalError("signal length mismatch");

  Eigen::MatrixXcd b(n, order);
  Eigen::VectorXcd yhat = ae.f * y;
  for (int k = 0; k < order; ++k) {
    b.col(k) = ae.v * yhat;
    yhat.array() *= ae.lambda_e.array();
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(b);
  WienerDesign d;
  d.order = order;
  d.h = qr.solve(x);
  d.residual = (b * d.h - x).norm();
  d.ls_fallback = qr.rank() < order;
  return d;
}

inline Eigen::VectorXcd wiener_apply(const WienerDesign& d, const EnergyShift& ae,
                                     const Eigen::VectorXcd& y) {
  if (y.size() != ae.size()) throw NumericalError("signal length mismatch");
  Eigen::VectorXcd yhat = ae.f * y;
  Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(y.size());
  for (int k = 0; k < d.order; ++k) {
    acc += d.h(k) * (ae.v * yhat);
    yhat.array() *= ae.lambda_e.array();
  }
  return acc;
}

/// Additive white Gaussian noise, deterministic per seed across platforms
/// (hand-rolled Box-Muller on top of mt19937_64; std::normal_distribution is
/// implementation-defined).
inline Eigen::VectorXd awgn(const Eigen::VectorXd& s, double sigma,
                            std::uint64_t seed) {
  if (sigma < 0) throw NumericalError("sigma must be nonnegative");
  Eigen::VectorXd out = s;
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed ^ 0xda3e39cb94b95bdbULL);
  auto unif = [&]() {
    return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  };
  const int n = static_cast<int>(s.size());
  for (int i = 0; i < n; i += 2) {
    double u1 = unif(), u2 = unif();
    double r = std::sqrt(-2.0 * std::log(u1));
    out(i) += sigma * r * std::cos(2.0 * std::numbers::pi * u2);
    if (i + 1 < n) out(i + 1) += sigma * r * std::sin(2.0 * std::numbers::pi * u2);
  }
  return out;
}

/// 10 log10(||x||^2 / ||noise||^2) decibel.
inline double snr(const Eigen::VectorXd& x, const Eigen::VectorXd& noise) {
  if (x.size() != noise.size()) throw NumericalError("length mismatch");
  double nn = noise.squaredNorm();
  if (nn == 0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(x.squaredNorm() / nn);
}

}  // namespace dgsp
