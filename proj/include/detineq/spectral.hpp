#pragma once

#include "detineq/complex_matrix.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

struct PolarFactors {
  ComplexMatrix unitary;   // U
  ComplexMatrix positive;  // P = |a|
};

// |a| = (a^* a)^{1/2}.
ComplexMatrix abs_matrix(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// Spectral power of a Hermitian PSD matrix; eigenvalues in [-psd * rho, 0)
// are clamped to zero, anything lower throws NotPsdError.
ComplexMatrix matrix_power_psd(const ComplexMatrix& p_matrix, double p,
                               const Tolerances& tol = default_tolerances());

// a = U P with U = W V^* from the SVD a = W S V^*, so U is unitary even when a
// is singular.
PolarFactors polar_decompose(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

}  // namespace detineq
