#include "detineq/errors.hpp"

#include <sstream>

namespace detineq {

namespace {

std::string shape_str(std::size_t r, std::size_t c) {
  return std::to_string(r) + "x" + std::to_string(c);
}

std::string num(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

DimensionError::DimensionError(const std::string& what, std::size_t lhs_rows,
                               std::size_t lhs_cols, std::size_t rhs_rows, std::size_t rhs_cols)
    : LinalgError(what + ": shapes " + shape_str(lhs_rows, lhs_cols) + " and " +
                  shape_str(rhs_rows, rhs_cols) + " are incompatible") {}

DimensionError::DimensionError(const std::string& what, std::size_t rows, std::size_t cols)
    : LinalgError(what + ": shape " + shape_str(rows, cols) + " not accepted") {}

NotHermitianError::NotHermitianError(double asymmetry, double bound)
    : LinalgError("matrix is not Hermitian: ||a - a*||_F = " + num(asymmetry) + " > " +
                  num(bound)),
      asymmetry_(asymmetry) {}

NotPsdError::NotPsdError(double min_eigenvalue, double bound)
    : LinalgError("matrix is not positive semidefinite: min eigenvalue " + num(min_eigenvalue) +
                  " < -" + num(bound)),
      min_eigenvalue_(min_eigenvalue) {}

ConvergenceError::ConvergenceError(const std::string& routine, int iterations, double residual)
    : LinalgError(routine + " did not converge after " + std::to_string(iterations) +
                  " iterations (residual " + num(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

SingularBlockError::SingularBlockError(double condition_estimate)
    : LinalgError("leading block is numerically singular (sigma_min/sigma_max = " +
                  num(condition_estimate) + ")"),
      condition_estimate_(condition_estimate) {}

FormatError::FormatError(const std::string& what, const std::string& location)
    : std::runtime_error(location.empty() ? what : location + ": " + what), location_(location) {}

}  // namespace detineq
