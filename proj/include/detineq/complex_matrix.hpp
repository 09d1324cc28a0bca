#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace detineq {

using Complex = std::complex<double>;

// Dense row-major complex matrix. Entries are always finite; the
// constructors reject NaN and Inf.
class ComplexMatrix {
 public:
  ComplexMatrix(std::size_t rows, std::size_t cols);
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  // Row-list literal, e.g. {{1, 2}, {0, 1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
  static ComplexMatrix diagonal(std::span<const Complex> d);
  static ComplexMatrix diagonal(std::span<const double> d);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  std::string shape() const;

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const Complex> entries() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix conjugate() const;
  ComplexMatrix transpose() const;

  ComplexMatrix block(std::size_t row0, std::size_t col0, std::size_t nrows,
                      std::size_t ncols) const;
  void set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b);

  // Strictly-lower part zeroed.
  ComplexMatrix upper_triangle() const;

  Complex trace() const;

  ComplexMatrix& operator+=(const ComplexMatrix& b);
  ComplexMatrix& operator-=(const ComplexMatrix& b);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);

// a* . b without materializing a*.
ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b);
// a* . a, the Gram matrix.
ComplexMatrix gram(const ComplexMatrix& a);

double frobenius_norm(const ComplexMatrix& a);

// Horizontal / vertical concatenation.
ComplexMatrix hstack(const ComplexMatrix& left, const ComplexMatrix& right);
ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom);

}  // namespace detineq
