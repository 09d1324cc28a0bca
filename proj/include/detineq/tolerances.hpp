#pragma once

namespace detineq {

// Every threshold used by the kernel and the checkers. Equality detection in
// the checkers is only as meaningful as these values, so they live in one
// place and are passed explicitly.
struct Tolerances {
  // LU pivot and leading-block singularity threshold, relative to the
  // largest initial row norm / largest singular value.
  double pivot = 1e-13;
  // Hermitian input gate for the eigensolver, relative to ||a||_F.
  double hermitian = 1e-12;
  // Eigenvalue clamp for PSD matrices, relative to the spectral radius.
  double psd = 1e-10;
  // Structural predicates (normal, symmetric, zero block, triangular).
  double predicate = 1e-10;
  // Log-domain equality band for checker verdicts, scaled by max(1, |log lhs|).
  double equality = 1e-8;
  // Jacobi stopping rule: off-diagonal Frobenius mass relative to ||a||_F.
  double jacobi_offdiag = 1e-13;
  int jacobi_max_sweeps = 60;
  // Shifted QR: iterations allowed per eigenvalue before giving up.
  int qr_iterations_per_eigenvalue = 60;
};

inline const Tolerances& default_tolerances() {
  static const Tolerances tol{};
  return tol;
}

}  // namespace detineq
