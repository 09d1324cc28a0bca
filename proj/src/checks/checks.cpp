#include "detineq/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "detineq/determinant.hpp"
#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"
#include "detineq/spectral.hpp"

namespace detineq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

ComplexMatrix identity_plus(const ComplexMatrix& m) {
  return ComplexMatrix::identity(m.rows()) + m;
}

// conj(x) * x
ComplexMatrix conj_product(const ComplexMatrix& x) { return x.conjugate() * x; }

double frobenius_of(const BlockUpperTriangular& t) {
  return std::hypot(frobenius_norm(t.x()), frobenius_norm(t.y()), frobenius_norm(t.z()));
}

bool y_is_zero(const BlockUpperTriangular& t, const Tolerances& tol, CheckReport& r) {
  const double y = frobenius_norm(t.y());
  const bool zero = y <= tol.predicate * (1.0 + frobenius_of(t));
  r.add("y_frobenius", y);
  r.add("y_is_zero", zero);
  return zero;
}

CheckReport make_report(InequalityId id, const SignedLogDet& lhs, const SignedLogDet& rhs) {
  CheckReport r;
  r.inequality_id = id;
  r.lhs = lhs;
  r.rhs = rhs;
  r.margin = log_margin(lhs, rhs);
  return r;
}

void finish_numeric(CheckReport& r, const Tolerances& tol) {
  r.verdict = numeric_verdict(r.margin, equality_band(r.lhs, tol));
}

// The structural condition decides equality against strict; only a margin
// below the band can override it. Disagreement with the numeric reading is
// recorded, never hidden.
void finish_structural(CheckReport& r, bool structural_equality, const Tolerances& tol) {
  const Verdict numeric = numeric_verdict(r.margin, equality_band(r.lhs, tol));
  r.add("structural_equality", structural_equality);
  r.add("numeric_verdict", std::string(to_string(numeric)));
  if (numeric == Verdict::violated) {
    r.verdict = Verdict::violated;
  } else {
    r.verdict = structural_equality ? Verdict::equality : Verdict::holds_strict;
  }
  r.add("structure_agrees", (numeric == Verdict::equality) == structural_equality);
}

void require_partition(std::size_t n, std::size_t r, const char* who) {
  if (r == 0 || r >= n)
    throw ArgumentError(std::string(who) + ": partition r=" + std::to_string(r) +
                        " must satisfy 0 < r < " + std::to_string(n));
}

void require_square(const ComplexMatrix& a, const char* who) {
  if (!a.is_square()) throw DimensionError(who, a.rows(), a.cols());
}

// log(1 + exp(x)) without overflow; x = -inf gives 0.
double softplus(double x) {
  if (x == -kInf) return 0.0;
  return std::max(x, 0.0) + std::log1p(std::exp(-std::abs(x)));
}

double safe_log(double v) { return v > 0.0 ? std::log(v) : -kInf; }

// lb - la for partial log products that may be -inf.
double log_gap(double lb, double la) {
  if (lb == -kInf && la == -kInf) return 0.0;
  return lb - la;
}

}  // namespace

double equality_band(const SignedLogDet& lhs, const Tolerances& tol) {
  const double scale = lhs.is_zero() ? 1.0 : std::max(1.0, std::abs(lhs.log_magnitude()));
  return tol.equality * scale;
}

double log_margin(const SignedLogDet& lhs, const SignedLogDet& rhs) {
  if (lhs.is_zero() && rhs.is_zero()) return 0.0;
  if (lhs.is_zero()) return -kInf;
  if (rhs.is_zero()) return kInf;
  return lhs.log_magnitude() - rhs.log_magnitude();
}

Verdict numeric_verdict(double margin, double band) {
  if (margin < -band) return Verdict::violated;
  if (std::abs(margin) <= band) return Verdict::equality;
  return Verdict::holds_strict;
}

CheckReport check_fischer(const ComplexMatrix& a, std::size_t r, const Tolerances& tol) {
  require_square(a, "fischer");
  require_partition(a.rows(), r, "fischer");
  const std::size_t n = a.rows();
  const SignedLogDet lhs = det(a.block(0, 0, r, r), tol) * det(a.block(r, r, n - r, n - r), tol);
  CheckReport rep = make_report(InequalityId::fischer, lhs, det(a, tol));
  const double min_eig = min_hermitian_eigenvalue(a, tol);
  rep.add("min_eigenvalue", min_eig);
  if (!is_psd(a, tol)) {
    rep.verdict = Verdict::precondition_failed;
    rep.add("is_psd", false);
    return rep;
  }
  rep.add("is_psd", true);
  finish_numeric(rep, tol);
  return rep;
}

CheckReport check_thm1(const BlockFamily& family, const Tolerances& tol) {
  const std::size_t n = family.n();
  const std::size_t r = family.r();
  ComplexMatrix s = ComplexMatrix::zeros(n, n);
  ComplexMatrix sx = ComplexMatrix::zeros(r, r);
  ComplexMatrix sz = ComplexMatrix::zeros(n - r, n - r);
  for (const auto& t : family.members()) {
    s += gram(t.assemble());
    sx += gram(t.x());
    sz += gram(t.z());
  }
  const SignedLogDet dx = det(sx, tol);
  CheckReport rep = make_report(InequalityId::thm1, det(s, tol), dx * det(sz, tol));
  rep.add("members", static_cast<double>(family.size()));
  rep.add("sum_xx_singular", dx.is_zero());
  finish_numeric(rep, tol);
  return rep;
}

CheckReport check_cor_c0(const BlockUpperTriangular& t, const Tolerances& tol) {
  const SignedLogDet lhs = det(identity_plus(gram(t.assemble())), tol);
  const SignedLogDet rhs =
      det(identity_plus(gram(t.x())), tol) * det(identity_plus(gram(t.z())), tol);
  CheckReport rep = make_report(InequalityId::cor_c0, lhs, rhs);
  const bool zero = y_is_zero(t, tol, rep);
  finish_structural(rep, zero, tol);
  return rep;
}

CheckReport check_cor_c1(const BlockFamily& family, HypothesisMode mode, const Tolerances& tol) {
  const std::size_t n = family.n();
  const std::size_t r = family.r();
  ComplexMatrix s = ComplexMatrix::zeros(n, n);
  ComplexMatrix cx = ComplexMatrix::zeros(r, r);
  ComplexMatrix cz = ComplexMatrix::zeros(n - r, n - r);
  bool normal = true;
  for (const auto& t : family.members()) {
    s += gram(t.assemble());
    cx += conj_product(t.x());
    cz += conj_product(t.z());
    normal = normal && is_normal(t.x(), tol) && is_normal(t.z(), tol);
  }
  const SignedLogDet inner_x = det(cx, tol);
  const SignedLogDet inner_z = det(cz, tol);
  CheckReport rep = make_report(InequalityId::cor_c1, det(s, tol), inner_x.abs() * inner_z.abs());
  rep.add("inner_x_re", inner_x.value().real());
  rep.add("inner_x_im", inner_x.value().imag());
  rep.add("inner_z_re", inner_z.value().real());
  rep.add("inner_z_im", inner_z.value().imag());
  rep.add("hypotheses_hold", normal);
  const Verdict unconditional = numeric_verdict(rep.margin, equality_band(rep.lhs, tol));
  if (!normal && mode == HypothesisMode::enforce) {
    rep.verdict = Verdict::precondition_failed;
    rep.add("unconditional_verdict", std::string(to_string(unconditional)));
  } else {
    rep.verdict = unconditional;
    rep.add("hypothesis_violated", !normal);
  }
  return rep;
}

CheckReport check_lemma1(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "lemma1");
  CheckReport rep = make_report(InequalityId::lemma1, det(identity_plus(gram(x)), tol),
                                det(identity_plus(conj_product(x)), tol));
  const bool sym = is_symmetric(x, tol);
  rep.add("asymmetry", asymmetry(x));
  rep.add("is_symmetric", sym);
  finish_structural(rep, sym, tol);
  return rep;
}

CheckReport check_djokovic(const ComplexMatrix& x, const Tolerances& tol) {
  require_square(x, "djokovic");
  const SignedLogDet v = det(identity_plus(conj_product(x)), tol);
  CheckReport rep = make_report(InequalityId::djokovic, v, SignedLogDet::zero());
  rep.add("value_re", v.value().real());
  rep.add("value_im", v.value().imag());
  if (v.is_zero()) {
    rep.margin = 0.0;
    rep.verdict = Verdict::equality;
    return rep;
  }
  const Complex phase = v.phase();
  rep.add("imag_relative", std::abs(phase.imag()));
  const bool real = std::abs(phase.imag()) <= tol.equality;
  if (real && phase.real() > 0.0) {
    rep.margin = kInf;
    rep.verdict = Verdict::holds_strict;
  } else if (real && std::exp(v.log_magnitude()) <= equality_band(v, tol)) {
    rep.margin = 0.0;
    rep.verdict = Verdict::equality;
  } else {
    rep.margin = -kInf;
    rep.verdict = Verdict::violated;
  }
  return rep;
}

CheckReport check_thm2(const BlockUpperTriangular& t, const Tolerances& tol) {
  const SignedLogDet lhs = det(identity_plus(gram(t.assemble())), tol);
  const SignedLogDet rhs = det(identity_plus(conj_product(t.x())), tol) *
                           det(identity_plus(conj_product(t.z())), tol);
  CheckReport rep = make_report(InequalityId::thm2, lhs, rhs);
  const bool zero = y_is_zero(t, tol, rep);
  const bool sx = is_symmetric(t.x(), tol);
  const bool sz = is_symmetric(t.z(), tol);
  rep.add("x_symmetric", sx);
  rep.add("z_symmetric", sz);
  finish_structural(rep, zero && sx && sz, tol);
  return rep;
}

CheckReport check_drury(const ComplexMatrix& t, const Tolerances& tol) {
  require_square(t, "drury");
  double log_rhs = 0.0;
  for (std::size_t j = 0; j < t.rows(); ++j) log_rhs += std::log1p(std::norm(t(j, j)));
  CheckReport rep = make_report(InequalityId::drury, det(identity_plus(gram(t)), tol),
                                SignedLogDet::from_log(log_rhs));
  rep.add("lower_mass", lower_mass(t));
  if (!is_upper_triangular(t, tol)) {
    rep.verdict = Verdict::precondition_failed;
    return rep;
  }
  const double off = offdiagonal_mass(t);
  rep.add("offdiagonal_mass", off);
  const bool diagonal = off <= tol.predicate * frobenius_norm(t);
  rep.add("is_diagonal", diagonal);
  finish_structural(rep, diagonal, tol);
  return rep;
}

CheckReport check_thm3(const BlockUpperTriangular& t, double p, const Tolerances& tol) {
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("thm3: exponent p must be a finite value >= 1");
  auto side = [&](const ComplexMatrix& m) {
    return det(identity_plus(matrix_power_psd(abs_matrix(m, tol), p, tol)), tol);
  };
  CheckReport rep =
      make_report(InequalityId::thm3, side(t.assemble()), side(t.x()) * side(t.z()));
  rep.add("p", p);
  const bool zero = y_is_zero(t, tol, rep);
  finish_structural(rep, zero, tol);
  return rep;
}

CheckReport check_log_major(std::span<const double> a, std::span<const double> b, double p,
                            const Tolerances& tol) {
  if (a.size() != b.size() || a.empty())
    throw ArgumentError("log_major: sequences must be nonempty and of equal length");
  if (!(p >= 1.0) || !std::isfinite(p))
    throw ArgumentError("log_major: exponent p must be a finite value >= 1");
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (!(a[k] >= 0.0) || !(b[k] >= 0.0) || !std::isfinite(a[k]) || !std::isfinite(b[k]))
      throw ArgumentError("log_major: entries must be finite and nonnegative");
    if (k > 0 && (a[k] > a[k - 1] || b[k] > b[k - 1]))
      throw ArgumentError("log_major: sequences must be non-increasing");
  }
  constexpr double kHypothesisTol = 1e-10;
  double la = 0.0;
  double lb = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  std::size_t first_bad = 0;
  double worst_gap = kInf;
  for (std::size_t k = 0; k < a.size(); ++k) {
    la += safe_log(a[k]);
    lb += safe_log(b[k]);
    const double gap = log_gap(lb, la);
    worst_gap = std::min(worst_gap, gap);
    const bool last = k + 1 == a.size();
    const bool bad = gap < -kHypothesisTol || (last && std::abs(gap) > kHypothesisTol);
    if (bad && first_bad == 0) first_bad = k + 1;
    lhs += softplus(p * safe_log(b[k]));
    rhs += softplus(p * safe_log(a[k]));
  }
  CheckReport rep = make_report(InequalityId::log_major, SignedLogDet::from_log(lhs),
                                SignedLogDet::from_log(rhs));
  rep.add("p", p);
  rep.add("min_partial_gap", worst_gap);
  if (first_bad != 0) {
    rep.add("first_violating_k", static_cast<double>(first_bad));
    rep.verdict = Verdict::precondition_failed;
    return rep;
  }
  finish_numeric(rep, tol);
  return rep;
}

CheckReport check_weyl(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "weyl");
  const std::vector<double> sigma = singular_values(a, tol).values;
  const std::vector<Complex> lambda = general_eigenvalues(a, tol).eigenvalues;
  std::vector<double> moduli;
  for (const Complex& l : lambda) moduli.push_back(std::abs(l));
  std::sort(moduli.begin(), moduli.end(), std::greater<>());
  // Values this far below sigma_max are indistinguishable from zero.
  const double cutoff = tol.predicate * sigma.front();
  double ls = 0.0;
  double ll = 0.0;
  double worst = kInf;
  double worst_partial = kInf;
  std::size_t first_bad = 0;
  const std::size_t n = sigma.size();
  std::vector<double> gaps;
  for (std::size_t k = 0; k < n; ++k) {
    ls += sigma[k] > cutoff ? std::log(sigma[k]) : -kInf;
    ll += moduli[k] > cutoff ? std::log(moduli[k]) : -kInf;
    gaps.push_back(log_gap(ls, ll));
    worst = std::min(worst, gaps.back());
    if (k + 1 < n) worst_partial = std::min(worst_partial, gaps.back());
  }
  const SignedLogDet lhs = ls == -kInf ? SignedLogDet::zero() : SignedLogDet::from_log(ls);
  const SignedLogDet rhs = ll == -kInf ? SignedLogDet::zero() : SignedLogDet::from_log(ll);
  CheckReport rep = make_report(InequalityId::weyl, lhs, rhs);
  rep.margin = worst;
  const double band = equality_band(lhs, tol);
  for (std::size_t k = 0; k < n; ++k) {
    const bool last = k + 1 == n;
    if (gaps[k] < -band || (last && std::abs(gaps[k]) > band)) {
      first_bad = k + 1;
      break;
    }
  }
  if (n > 1) rep.add("min_partial_gap", worst_partial);
  rep.add("final_gap", gaps.back());
  if (first_bad != 0) {
    rep.add("first_violating_k", static_cast<double>(first_bad));
    rep.verdict = Verdict::violated;
  } else {
    rep.verdict = numeric_verdict(rep.margin, band);
  }
  return rep;
}

CheckReport check_schur_identity(const ComplexMatrix& a, std::size_t r, const Tolerances& tol) {
  require_square(a, "schur_identity");
  require_partition(a.rows(), r, "schur_identity");
  const SignedLogDet lhs = det(a, tol);
  ComplexMatrix complement(1, 1);
  try {
    complement = schur_complement(a, r, tol);
  } catch (const SingularBlockError& e) {
    CheckReport rep = make_report(InequalityId::schur_identity, lhs, SignedLogDet::zero());
    rep.add("condition_estimate", e.condition_estimate());
    rep.verdict = Verdict::precondition_failed;
    return rep;
  }
  const SignedLogDet rhs = det(a.block(0, 0, r, r), tol) * det(complement, tol);
  CheckReport rep = make_report(InequalityId::schur_identity, lhs, rhs);
  const double phase_error = std::abs(lhs.phase() - rhs.phase());
  rep.add("phase_error", phase_error);
  const double band = equality_band(lhs, tol);
  const bool equal = std::abs(rep.margin) <= band && phase_error <= tol.equality;
  rep.verdict = equal ? Verdict::equality : Verdict::violated;
  return rep;
}

CheckReport check_e21(const BlockFamily& family, const Tolerances& tol) {
  if (family.size() != 2) throw ArgumentError("e21: family must have exactly two members");
  const auto& t1 = family[0];
  const auto& t2 = family[1];
  const SignedLogDet lhs =
      det(abs_matrix(t1.assemble(), tol) + abs_matrix(t2.assemble(), tol), tol);
  const SignedLogDet rhs = det(abs_matrix(t1.x(), tol) + abs_matrix(t2.x(), tol), tol) *
                           det(abs_matrix(t1.z(), tol) + abs_matrix(t2.z(), tol), tol);
  CheckReport rep = make_report(InequalityId::e21, lhs, rhs);
  finish_numeric(rep, tol);
  return rep;
}

}  // namespace detineq
