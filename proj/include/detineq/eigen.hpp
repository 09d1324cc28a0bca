#pragma once

#include <vector>

#include "detineq/complex_matrix.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

struct HermitianEigensystem {
  std::vector<double> eigenvalues;  // non-increasing
  ComplexMatrix eigenvectors;       // unitary, column j pairs with eigenvalues[j]
};

// Eigenvalues sorted by non-increasing modulus; equal moduli by descending
// real part, then descending imaginary part.
struct Spectrum {
  std::vector<Complex> eigenvalues;
};

struct SingularSpectrum {
  std::vector<double> values;  // non-increasing, >= 0
};

// Thin SVD a = W * diag(sigma) * V^*, a is m x n with m >= n. W is m x n with
// orthonormal columns (completed arbitrarily on the null space), V is n x n
// unitary.
struct SingularValueDecomposition {
  ComplexMatrix left;
  std::vector<double> sigma;
  ComplexMatrix right;
};

// Cyclic complex Jacobi. The input is symmetrized after the Hermitian gate.
HermitianEigensystem hermitian_eigensystem(const ComplexMatrix& a,
                                           const Tolerances& tol = default_tolerances());

// Householder reduction to Hessenberg form followed by single-shift complex QR
// with Wilkinson shifts.
Spectrum general_eigenvalues(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// One-sided (Hestenes) Jacobi. Requires rows >= cols.
SingularValueDecomposition svd(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// min(rows, cols) values.
SingularSpectrum singular_values(const ComplexMatrix& a,
                                 const Tolerances& tol = default_tolerances());

}  // namespace detineq
