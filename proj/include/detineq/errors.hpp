#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace detineq {

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionError : public LinalgError {
 public:
  DimensionError(const std::string& what, std::size_t lhs_rows, std::size_t lhs_cols,
                 std::size_t rhs_rows, std::size_t rhs_cols);
  DimensionError(const std::string& what, std::size_t rows, std::size_t cols);
};

class NotHermitianError : public LinalgError {
 public:
  NotHermitianError(double asymmetry, double bound);
  double asymmetry() const { return asymmetry_; }

 private:
  double asymmetry_;
};

class NotPsdError : public LinalgError {
 public:
  NotPsdError(double min_eigenvalue, double bound);
  double min_eigenvalue() const { return min_eigenvalue_; }

 private:
  double min_eigenvalue_;
};

class ConvergenceError : public LinalgError {
 public:
  ConvergenceError(const std::string& routine, int iterations, double residual);
  double residual() const { return residual_; }
  int iterations() const { return iterations_; }

 private:
  int iterations_;
  double residual_;
};

class SingularBlockError : public LinalgError {
 public:
  // condition_estimate is sigma_min / sigma_max of the offending block.
  explicit SingularBlockError(double condition_estimate);
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

// Bad partition, mixed families, out-of-range parameters.
class ArgumentError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Malformed matrix / report / witness documents.
class FormatError : public std::runtime_error {
 public:
  FormatError(const std::string& what, const std::string& location);
  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

}  // namespace detineq
