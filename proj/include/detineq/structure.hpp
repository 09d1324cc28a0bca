#pragma once

#include <cstddef>
#include <vector>

#include "detineq/complex_matrix.hpp"
#include "detineq/tolerances.hpp"

namespace detineq {

struct MatrixPredicates {
  bool is_hermitian = false;
  bool is_psd = false;
  bool is_normal = false;
  bool is_symmetric = false;
  bool is_upper_triangular = false;
};

MatrixPredicates predicates(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

bool is_hermitian(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());
bool is_psd(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());
bool is_normal(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());
bool is_symmetric(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());
bool is_upper_triangular(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// ||a - a'||_F and the Frobenius mass strictly below / off the diagonal.
double asymmetry(const ComplexMatrix& a);
double lower_mass(const ComplexMatrix& a);
double offdiagonal_mass(const ComplexMatrix& a);

// Smallest eigenvalue of the Hermitian part, for diagnostics.
double min_hermitian_eigenvalue(const ComplexMatrix& a, const Tolerances& tol = default_tolerances());

// a22 - a21 a11^{-1} a12 for the leading r x r block a11.
// Throws SingularBlockError when sigma_min(a11) <= pivot * sigma_max(a11).
ComplexMatrix schur_complement(const ComplexMatrix& a, std::size_t r,
                               const Tolerances& tol = default_tolerances());

// T = [X Y; 0 Z] with X r x r and Z (n-r) x (n-r), 0 < r < n.
class BlockUpperTriangular {
 public:
  BlockUpperTriangular(ComplexMatrix x, ComplexMatrix y, ComplexMatrix z);

  // Splits t at r; the lower-left block must be exactly zero.
  static BlockUpperTriangular from_matrix(const ComplexMatrix& t, std::size_t r);

  std::size_t n() const { return x_.rows() + z_.rows(); }
  std::size_t r() const { return x_.rows(); }
  const ComplexMatrix& x() const { return x_; }
  const ComplexMatrix& y() const { return y_; }
  const ComplexMatrix& z() const { return z_; }

  ComplexMatrix assemble() const;

 private:
  ComplexMatrix x_;
  ComplexMatrix y_;
  ComplexMatrix z_;
};

// Nonempty, conformally partitioned.
class BlockFamily {
 public:
  explicit BlockFamily(std::vector<BlockUpperTriangular> members);

  std::size_t size() const { return members_.size(); }
  std::size_t n() const { return members_.front().n(); }
  std::size_t r() const { return members_.front().r(); }
  const std::vector<BlockUpperTriangular>& members() const { return members_; }
  const BlockUpperTriangular& operator[](std::size_t k) const { return members_[k]; }

 private:
  std::vector<BlockUpperTriangular> members_;
};

}  // namespace detineq
