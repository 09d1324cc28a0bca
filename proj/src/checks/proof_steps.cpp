#include <algorithm>
#include <cmath>
#include <limits>

#include "detineq/checks.hpp"
#include "detineq/determinant.hpp"
#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"

namespace detineq {

namespace {

double spectral_radius_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
  const auto ev = hermitian_eigensystem(a, tol).eigenvalues;
  return std::max(std::abs(ev.front()), std::abs(ev.back()));
}

Finding psd_finding(std::string name, const ComplexMatrix& m, double scale,
                    const Tolerances& tol) {
  const double lo = min_hermitian_eigenvalue(m, tol);
  const double rel = scale > 0.0 ? lo / scale : lo;
  const double skew = frobenius_norm(m - m.adjoint());
  const bool hermitian = skew <= tol.predicate * std::max(scale, frobenius_norm(m));
  return {std::move(name), hermitian && rel >= -tol.psd, rel};
}

}  // namespace

bool StepReport::all_hold() const {
  return precondition_met &&
         std::all_of(findings.begin(), findings.end(), [](const Finding& f) { return f.holds; });
}

const Finding* StepReport::find(const std::string& name) const {
  for (const auto& f : findings)
    if (f.name == name) return &f;
  return nullptr;
}

StepReport check_thm1_schur_steps(const BlockFamily& family, const Tolerances& tol) {
  const std::size_t n = family.n();
  const std::size_t r = family.r();
  ComplexMatrix s = ComplexMatrix::zeros(n, n);
  ComplexMatrix top = ComplexMatrix::zeros(n, n);
  ComplexMatrix sz = ComplexMatrix::zeros(n - r, n - r);
  for (const auto& t : family.members()) {
    s += gram(t.assemble());
    top += gram(hstack(t.x(), t.y()));
    sz += gram(t.z());
  }
  StepReport rep;
  ComplexMatrix complement(1, 1);
  try {
    complement = schur_complement(s, r, tol);
  } catch (const SingularBlockError& e) {
    rep.findings.push_back({"sum_xx_condition", false, e.condition_estimate()});
    return rep;
  }
  rep.precondition_met = true;
  rep.findings.push_back(
      psd_finding("gram_block_sum_psd", top, spectral_radius_hermitian(top, tol), tol));
  // Rounding in the complement is relative to the full Gram sum, not to the
  // (possibly tiny) difference.
  rep.findings.push_back(psd_finding("complement_dominates_zz", complement - sz,
                                     spectral_radius_hermitian(s, tol), tol));
  return rep;
}

StepReport check_c1_proof_step(const BlockFamily& family, const Tolerances& tol) {
  const std::size_t r = family.r();
  ComplexMatrix m11 = ComplexMatrix::zeros(r, r);
  ComplexMatrix m12 = ComplexMatrix::zeros(r, r);
  ComplexMatrix m21 = ComplexMatrix::zeros(r, r);
  ComplexMatrix m22 = ComplexMatrix::zeros(r, r);
  for (const auto& t : family.members()) {
    const ComplexMatrix& x = t.x();
    m11 += x.conjugate() * x.transpose();
    m12 += x.conjugate() * x;
    m21 += x.adjoint() * x.transpose();
    m22 += gram(x);
  }
  const SignedLogDet d[4] = {det(m11, tol), det(m12, tol), det(m21, tol), det(m22, tol)};
  double scale = -std::numeric_limits<double>::infinity();
  for (const auto& v : d)
    if (!v.is_zero()) scale = std::max(scale, v.log_magnitude());
  ComplexMatrix dm(2, 2);
  for (int k = 0; k < 4; ++k) {
    const Complex v = d[k].is_zero() ? Complex(0.0) : d[k].phase() * std::exp(d[k].log_magnitude() - scale);
    dm(static_cast<std::size_t>(k / 2), static_cast<std::size_t>(k % 2)) = v;
  }
  StepReport rep;
  rep.precondition_met = true;
  const double rho = std::max(std::abs(dm(0, 0)), std::abs(dm(1, 1)));
  rep.findings.push_back(psd_finding("determinant_matrix_psd", dm, rho, tol));
  return rep;
}

}  // namespace detineq
