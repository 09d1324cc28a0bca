#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "detineq/check_report.hpp"
#include "detineq/complex_matrix.hpp"
#include "detineq/structure.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

// Band used to call two log-domain sides equal.
double equality_band(const SignedLogDet& lhs, const Tolerances& tol);

// log|lhs| - log|rhs| with zero sides mapped to +-inf (0 when both vanish).
double log_margin(const SignedLogDet& lhs, const SignedLogDet& rhs);

Verdict numeric_verdict(double margin, double band);

// det A <= det A11 * det A22 for PSD A, reported with lhs = det A11 * det A22.
CheckReport check_fischer(const ComplexMatrix& a, std::size_t r,
                          const Tolerances& tol = default_tolerances());

// det(sum T*T) >= det(sum X*X) * det(sum Z*Z).
CheckReport check_thm1(const BlockFamily& family, const Tolerances& tol = default_tolerances());

// det(I + T*T) >= det(I + X*X) * det(I + Z*Z), equality iff Y = 0.
CheckReport check_cor_c0(const BlockUpperTriangular& t,
                         const Tolerances& tol = default_tolerances());

enum class HypothesisMode {
  enforce,         // non-normal blocks give precondition_failed
  evaluate_anyway  // the unconditional verdict is reported and flagged
};

// det(sum T*T) >= |det(sum conj(X) X)| * |det(sum conj(Z) Z)| for normal X_k, Z_k.
CheckReport check_cor_c1(const BlockFamily& family, HypothesisMode mode = HypothesisMode::enforce,
                         const Tolerances& tol = default_tolerances());

// det(I + X*X) >= det(I + conj(X) X), equality iff X = X'.
CheckReport check_lemma1(const ComplexMatrix& x, const Tolerances& tol = default_tolerances());

// det(I + conj(X) X) >= 0. The rhs is the zero determinant; the margin is
// +inf when the value is positive, 0 when it vanishes and -inf otherwise.
CheckReport check_djokovic(const ComplexMatrix& x, const Tolerances& tol = default_tolerances());

// det(I + T*T) >= det(I + conj(X) X) * det(I + conj(Z) Z), equality iff Y = 0
// and X, Z symmetric.
CheckReport check_thm2(const BlockUpperTriangular& t, const Tolerances& tol = default_tolerances());

// det(I + T*T) >= prod(1 + |t_jj|^2) for upper triangular T, equality iff diagonal.
CheckReport check_drury(const ComplexMatrix& t, const Tolerances& tol = default_tolerances());

// det(I + |T|^p) >= det(I + |X|^p) * det(I + |Z|^p), p >= 1, equality iff Y = 0.
CheckReport check_thm3(const BlockUpperTriangular& t, double p,
                       const Tolerances& tol = default_tolerances());

// Given a weakly log-majorized by b (equal total product), checks
// prod(1 + a^p) <= prod(1 + b^p). Both sequences non-increasing and >= 0.
CheckReport check_log_major(std::span<const double> a, std::span<const double> b, double p,
                            const Tolerances& tol = default_tolerances());

// Eigenvalue moduli weakly log-majorized by singular values, equal product.
CheckReport check_weyl(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// det a = det a11 * det(a / a11).
CheckReport check_schur_identity(const ComplexMatrix& a, std::size_t r,
                                 const Tolerances& tol = default_tolerances());

// det(|T1| + |T2|) vs det(|X1| + |X2|) * det(|Z1| + |Z2|). Not a theorem; the
// verdict reports whichever way it falls.
CheckReport check_e21(const BlockFamily& family, const Tolerances& tol = default_tolerances());

struct Finding {
  std::string name;
  bool holds = false;
  double measure = 0.0;
};

struct StepReport {
  bool precondition_met = false;
  std::vector<Finding> findings;

  bool all_hold() const;
  const Finding* find(const std::string& name) const;
};

// Gram block sum is PSD; Schur complement of sum X*X dominates sum Z*Z.
StepReport check_thm1_schur_steps(const BlockFamily& family,
                                  const Tolerances& tol = default_tolerances());

// The 2x2 matrix of block determinants is PSD.
StepReport check_c1_proof_step(const BlockFamily& family,
                               const Tolerances& tol = default_tolerances());

}  // namespace detineq
