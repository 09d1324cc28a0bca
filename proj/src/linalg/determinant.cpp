#include "detineq/determinant.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "detineq/errors.hpp"

namespace detineq {

namespace {

Complex normalized(Complex z) { return z / std::abs(z); }

}  // namespace

SignedLogDet::SignedLogDet(Complex phase, double log_magnitude)
    : phase_(normalized(phase)), log_magnitude_(log_magnitude) {
  if (!std::isfinite(log_magnitude) || std::abs(phase) == 0.0)
    throw ArgumentError("SignedLogDet: phase must be nonzero and log magnitude finite");
}

SignedLogDet SignedLogDet::zero() {
  SignedLogDet d;
  d.is_zero_ = true;
  d.phase_ = 0.0;
  d.log_magnitude_ = 0.0;
  return d;
}

SignedLogDet SignedLogDet::from_value(Complex value) {
  const double mag = std::abs(value);
  if (mag == 0.0) return zero();
  return SignedLogDet(value / mag, std::log(mag));
}

SignedLogDet SignedLogDet::from_log(double log_magnitude) {
  return SignedLogDet(1.0, log_magnitude);
}

double SignedLogDet::log_magnitude() const {
  return is_zero_ ? -std::numeric_limits<double>::infinity() : log_magnitude_;
}

Complex SignedLogDet::value() const {
  if (is_zero_) return 0.0;
  return phase_ * std::exp(log_magnitude_);
}

SignedLogDet SignedLogDet::abs() const {
  if (is_zero_) return zero();
  return from_log(log_magnitude_);
}

SignedLogDet& SignedLogDet::operator*=(const SignedLogDet& other) {
  if (is_zero_ || other.is_zero_) return *this = zero();
  phase_ = normalized(phase_ * other.phase_);
  log_magnitude_ += other.log_magnitude_;
  return *this;
}

SignedLogDet& SignedLogDet::operator/=(const SignedLogDet& other) {
  if (other.is_zero_) throw ArgumentError("SignedLogDet: division by a zero determinant");
  if (is_zero_) return *this;
  phase_ = normalized(phase_ / other.phase_);
  log_magnitude_ -= other.log_magnitude_;
  return *this;
}

SignedLogDet operator*(SignedLogDet a, const SignedLogDet& b) { return a *= b; }
SignedLogDet operator/(SignedLogDet a, const SignedLogDet& b) { return a /= b; }

LuDecomposition::LuDecomposition(const ComplexMatrix& a, const Tolerances& tol)
    : lu_(a), perm_(a.rows()) {
  if (!a.is_square()) throw DimensionError("determinant", a.rows(), a.cols());
  const std::size_t n = a.rows();
  std::iota(perm_.begin(), perm_.end(), std::size_t{0});

  double max_row_norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s = std::hypot(s, std::abs(a(i, j)));
    max_row_norm = std::max(max_row_norm, s);
  }
  const double threshold = tol.pivot * max_row_norm;

  Complex phase = 1.0;
  double log_mag = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(lu_(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double m = std::abs(lu_(i, k));
      if (m > best) {
        best = m;
        piv = i;
      }
    }
    if (best <= threshold || best == 0.0) {
      singular_ = true;
      det_ = SignedLogDet::zero();
      return;
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(piv, j));
      std::swap(perm_[k], perm_[piv]);
      phase = -phase;
    }
    const Complex pivot = lu_(k, k);
    phase = normalized(phase * (pivot / best));
    log_mag += std::log(best);
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = lu_(i, k) / pivot;
      lu_(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= f * lu_(k, j);
    }
  }
  det_ = SignedLogDet(phase, log_mag);
}

ComplexMatrix LuDecomposition::solve(const ComplexMatrix& b) const {
  const std::size_t n = lu_.rows();
  if (b.rows() != n) throw DimensionError("LU solve", n, n, b.rows(), b.cols());
  if (singular_) throw SingularBlockError(0.0);
  ComplexMatrix x(n, b.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) x(i, j) = b(perm_[i], j);
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < i; ++k) x(i, c) -= lu_(i, k) * x(k, c);
    for (std::size_t i = n; i-- > 0;) {
      for (std::size_t k = i + 1; k < n; ++k) x(i, c) -= lu_(i, k) * x(k, c);
      x(i, c) /= lu_(i, i);
    }
  }
  return x;
}

SignedLogDet det(const ComplexMatrix& a, const Tolerances& tol) {
  return LuDecomposition(a, tol).determinant();
}

}  // namespace detineq
