#include "detineq/structure.hpp"

#include <algorithm>
#include <cmath>

#include "detineq/determinant.hpp"
#include "detineq/eigen.hpp"
#include "detineq/errors.hpp"

namespace detineq {

namespace {

void require_square(const ComplexMatrix& a, const char* what) {
  if (!a.is_square()) throw DimensionError(what, a.rows(), a.cols());
}

}  // namespace

double asymmetry(const ComplexMatrix& a) {
  require_square(a, "asymmetry");
  return frobenius_norm(a - a.transpose());
}

double lower_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < std::min(i, a.cols()); ++j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

double offdiagonal_mass(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_hermitian");
  return frobenius_norm(a - a.adjoint()) <= tol.predicate * frobenius_norm(a);
}

bool is_symmetric(const ComplexMatrix& a, const Tolerances& tol) {
  return asymmetry(a) <= tol.predicate * frobenius_norm(a);
}

bool is_normal(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_normal");
  const double norm = frobenius_norm(a);
  const ComplexMatrix commutator = a * a.adjoint() - gram(a);
  return frobenius_norm(commutator) <= tol.predicate * norm * norm;
}

bool is_upper_triangular(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "is_upper_triangular");
  return lower_mass(a) <= tol.predicate * frobenius_norm(a);
}

double min_hermitian_eigenvalue(const ComplexMatrix& a, const Tolerances& tol) {
  require_square(a, "min_hermitian_eigenvalue");
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  return hermitian_eigensystem(h, tol).eigenvalues.back();
}

bool is_psd(const ComplexMatrix& a, const Tolerances& tol) {
  if (!is_hermitian(a, tol)) return false;
  const ComplexMatrix h = 0.5 * (a + a.adjoint());
  const auto ev = hermitian_eigensystem(h, tol).eigenvalues;
  const double rho = std::max(std::abs(ev.front()), std::abs(ev.back()));
  return ev.back() >= -tol.psd * rho;
}

MatrixPredicates predicates(const ComplexMatrix& a, const Tolerances& tol) {
  return {is_hermitian(a, tol), is_psd(a, tol), is_normal(a, tol), is_symmetric(a, tol),
          is_upper_triangular(a, tol)};
}

ComplexMatrix schur_complement(const ComplexMatrix& a, std::size_t r, const Tolerances& tol) {
  require_square(a, "schur_complement");
  const std::size_t n = a.rows();
  if (r == 0 || r >= n)
    throw ArgumentError("schur_complement: partition r = " + std::to_string(r) +
                        " must satisfy 0 < r < " + std::to_string(n));
  const ComplexMatrix a11 = a.block(0, 0, r, r);
  const auto sv = singular_values(a11, tol).values;
  const double cond = sv.front() > 0.0 ? sv.back() / sv.front() : 0.0;
  if (cond <= tol.pivot) throw SingularBlockError(cond);
  const LuDecomposition lu(a11, tol);
  if (lu.is_singular()) throw SingularBlockError(cond);
  const ComplexMatrix gain = lu.solve(a.block(0, r, r, n - r));
  return a.block(r, r, n - r, n - r) - a.block(r, 0, n - r, r) * gain;
}

BlockUpperTriangular::BlockUpperTriangular(ComplexMatrix x, ComplexMatrix y, ComplexMatrix z)
    : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {
  if (!x_.is_square()) throw DimensionError("BlockUpperTriangular X block", x_.rows(), x_.cols());
  if (!z_.is_square()) throw DimensionError("BlockUpperTriangular Z block", z_.rows(), z_.cols());
  if (y_.rows() != x_.rows() || y_.cols() != z_.rows())
    throw DimensionError("BlockUpperTriangular Y block", y_.rows(), y_.cols(), x_.rows(),
                         z_.rows());
}

BlockUpperTriangular BlockUpperTriangular::from_matrix(const ComplexMatrix& t, std::size_t r) {
  require_square(t, "BlockUpperTriangular");
  const std::size_t n = t.rows();
  if (r == 0 || r >= n)
    throw ArgumentError("block partition r = " + std::to_string(r) + " must satisfy 0 < r < " +
                        std::to_string(n));
  for (std::size_t i = r; i < n; ++i)
    for (std::size_t j = 0; j < r; ++j)
      if (t(i, j) != 0.0)
        throw ArgumentError("lower-left block is not zero at (" + std::to_string(i) + ", " +
                            std::to_string(j) + ")");
  return {t.block(0, 0, r, r), t.block(0, r, r, n - r), t.block(r, r, n - r, n - r)};
}

ComplexMatrix BlockUpperTriangular::assemble() const {
  ComplexMatrix t(n(), n());
  t.set_block(0, 0, x_);
  t.set_block(0, r(), y_);
  t.set_block(r(), r(), z_);
  return t;
}

BlockFamily::BlockFamily(std::vector<BlockUpperTriangular> members) : members_(std::move(members)) {
  if (members_.empty()) throw ArgumentError("block family must be nonempty");
  for (std::size_t k = 1; k < members_.size(); ++k)
    if (members_[k].n() != n() || members_[k].r() != r())
      throw ArgumentError("block family member " + std::to_string(k) + " has partition (n=" +
                          std::to_string(members_[k].n()) + ", r=" +
                          std::to_string(members_[k].r()) + "), expected (n=" +
                          std::to_string(n()) + ", r=" + std::to_string(r()) + ")");
}

}  // namespace detineq
