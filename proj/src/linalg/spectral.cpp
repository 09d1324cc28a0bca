#include "detineq/spectral.hpp"

#include <algorithm>
#include <cmath>

#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"

namespace detineq {

namespace {

// Eigenvalues of a PSD matrix with the clamp applied.
std::vector<double> clamped_spectrum(const std::vector<double>& eigenvalues, const Tolerances& tol) {
  double rho = 0.0;
  for (double l : eigenvalues) rho = std::max(rho, std::abs(l));
  const double bound = tol.psd * rho;
  std::vector<double> out(eigenvalues);
  for (double& l : out) {
    if (l < -bound) throw NotPsdError(l, bound);
    if (l < 0.0) l = 0.0;
  }
  return out;
}

// V diag(f) V^*, returned exactly Hermitian.
ComplexMatrix spectral_reconstruct(const ComplexMatrix& v, const std::vector<double>& f) {
  const std::size_t n = v.rows();
  ComplexMatrix out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < n; ++k) s += v(i, k) * f[k] * std::conj(v(j, k));
      out(i, j) = s;
    }
  for (std::size_t i = 0; i < n; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = 0; j < i; ++j) out(i, j) = std::conj(out(j, i));
  }
  return out;
}

}  // namespace

ComplexMatrix abs_matrix(const ComplexMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("abs_matrix", a.rows(), a.cols());
  const HermitianEigensystem es = hermitian_eigensystem(gram(a), tol);
  std::vector<double> root = clamped_spectrum(es.eigenvalues, tol);
  for (double& l : root) l = std::sqrt(l);
  return spectral_reconstruct(es.eigenvectors, root);
}

ComplexMatrix matrix_power_psd(const ComplexMatrix& p_matrix, double p, const Tolerances& tol) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw ArgumentError("matrix_power_psd: exponent must be >= 0");
  if (!p_matrix.is_square()) throw DimensionError("matrix_power_psd", p_matrix.rows(), p_matrix.cols());
  const HermitianEigensystem es = hermitian_eigensystem(p_matrix, tol);
  std::vector<double> powered = clamped_spectrum(es.eigenvalues, tol);
  for (double& l : powered) l = std::pow(l, p);
  return spectral_reconstruct(es.eigenvectors, powered);
}

PolarFactors polar_decompose(const ComplexMatrix& a, const Tolerances& tol) {
  if (!a.is_square()) throw DimensionError("polar_decompose", a.rows(), a.cols());
  const SingularValueDecomposition d = svd(a, tol);
  return {d.left * d.right.adjoint(), spectral_reconstruct(d.right, d.sigma)};
}

}  // namespace detineq
