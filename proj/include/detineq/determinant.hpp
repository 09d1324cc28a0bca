#pragma once

#include <vector>

#include "detineq/complex_matrix.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

// A determinant stored as phase * exp(log_magnitude). Products stay exact in
// the log domain, so values on the order of 1e9 from integer inputs (or far
// larger) compare without cancellation.
class SignedLogDet {
 public:
  // The determinant 1.
  SignedLogDet() = default;
  SignedLogDet(Complex phase, double log_magnitude);

  static SignedLogDet zero();
  static SignedLogDet from_value(Complex value);
  // Positive real given by its logarithm.
  static SignedLogDet from_log(double log_magnitude);

  bool is_zero() const { return is_zero_; }
  Complex phase() const { return phase_; }
  // -inf when is_zero().
  double log_magnitude() const;

  Complex value() const;
  // |det| as a SignedLogDet with unit phase.
  SignedLogDet abs() const;

  SignedLogDet& operator*=(const SignedLogDet& other);
  SignedLogDet& operator/=(const SignedLogDet& other);

 private:
  Complex phase_{1.0, 0.0};
  double log_magnitude_ = 0.0;
  bool is_zero_ = false;
};

SignedLogDet operator*(SignedLogDet a, const SignedLogDet& b);
SignedLogDet operator/(SignedLogDet a, const SignedLogDet& b);

// Row elimination with partial pivoting by modulus. The factorization is
// kept so that the same object can solve linear systems.
class LuDecomposition {
 public:
  explicit LuDecomposition(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

  bool is_singular() const { return singular_; }
  SignedLogDet determinant() const { return det_; }
  // X with A X = B. Throws SingularBlockError when singular.
  ComplexMatrix solve(const ComplexMatrix& b) const;

 private:
  ComplexMatrix lu_;
  std::vector<std::size_t> perm_;
  SignedLogDet det_;
  bool singular_ = false;
};

SignedLogDet det(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

}  // namespace detineq
