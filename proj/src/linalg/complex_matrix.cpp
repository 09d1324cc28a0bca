#include "detineq/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "detineq/errors.hpp"

namespace detineq {

namespace {

void require_finite(std::span<const Complex> entries) {
  for (std::size_t k = 0; k < entries.size(); ++k) {
    if (!std::isfinite(entries[k].real()) || !std::isfinite(entries[k].imag()))
      throw ArgumentError("matrix entry " + std::to_string(k) + " is not finite");
  }
}

void require_positive(std::size_t rows, std::size_t cols) {
  if (rows == 0 || cols == 0) throw DimensionError("ComplexMatrix", rows, cols);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {
  require_positive(rows, cols);
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  require_positive(rows, cols);
  if (data_.size() != rows * cols)
    throw ArgumentError("ComplexMatrix: " + std::to_string(data_.size()) +
                        " entries supplied for shape " + shape());
  require_finite(data_);
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  require_positive(rows_, cols_);
  data_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) throw ArgumentError("ComplexMatrix: ragged row literal");
    data_.insert(data_.end(), row.begin(), row.end());
  }
  require_finite(data_);
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) {
  return ComplexMatrix(rows, cols);
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require_finite(m.data_);
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  require_finite(m.data_);
  return m;
}

std::string ComplexMatrix::shape() const {
  return std::to_string(rows_) + "x" + std::to_string(cols_);
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = std::conj((*this)(i, j));
  return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix out(*this);
  for (auto& v : out.data_) v = std::conj(v);
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t row0, std::size_t col0, std::size_t nrows,
                                   std::size_t ncols) const {
  if (row0 + nrows > rows_ || col0 + ncols > cols_)
    throw DimensionError("block extraction", rows_, cols_, row0 + nrows, col0 + ncols);
  ComplexMatrix out(nrows, ncols);
  for (std::size_t i = 0; i < nrows; ++i)
    for (std::size_t j = 0; j < ncols; ++j) out(i, j) = (*this)(row0 + i, col0 + j);
  return out;
}

void ComplexMatrix::set_block(std::size_t row0, std::size_t col0, const ComplexMatrix& b) {
  if (row0 + b.rows() > rows_ || col0 + b.cols() > cols_)
    throw DimensionError("block assignment", rows_, cols_, row0 + b.rows(), col0 + b.cols());
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) (*this)(row0 + i, col0 + j) = b(i, j);
}

ComplexMatrix ComplexMatrix::upper_triangle() const {
  ComplexMatrix out(*this);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < std::min(i, cols_); ++j) out(i, j) = 0.0;
  return out;
}

Complex ComplexMatrix::trace() const {
  if (!is_square()) throw DimensionError("trace", rows_, cols_);
  Complex t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_)
    throw DimensionError("add", rows_, cols_, b.rows_, b.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += b.data_[k];
  require_finite(data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
  if (rows_ != b.rows_ || cols_ != b.cols_)
    throw DimensionError("subtract", rows_, cols_, b.rows_, b.cols_);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= b.data_[k];
  require_finite(data_);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& v : data_) v *= s;
  require_finite(data_);
  return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw DimensionError("multiply", a.rows(), a.cols(), b.rows(), b.cols());
  ComplexMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  require_finite(out.entries());
  return out;
}

ComplexMatrix adjoint_times(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows())
    throw DimensionError("adjoint multiply", a.cols(), a.rows(), b.rows(), b.cols());
  ComplexMatrix out(a.cols(), b.cols());
  for (std::size_t i = 0; i < a.cols(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      Complex s = 0.0;
      for (std::size_t k = 0; k < a.rows(); ++k) s += std::conj(a(k, i)) * b(k, j);
      out(i, j) = s;
    }
  require_finite(out.entries());
  return out;
}

ComplexMatrix gram(const ComplexMatrix& a) { return adjoint_times(a, a); }

double frobenius_norm(const ComplexMatrix& a) {
  // Scaled accumulation so that huge entries do not overflow.
  double scale = 0.0;
  for (const auto& v : a.entries()) scale = std::max({scale, std::abs(v.real()), std::abs(v.imag())});
  if (scale == 0.0) return 0.0;
  double sum = 0.0;
  for (const auto& v : a.entries()) {
    const double re = v.real() / scale;
    const double im = v.imag() / scale;
    sum += re * re + im * im;
  }
  return scale * std::sqrt(sum);
}

ComplexMatrix hstack(const ComplexMatrix& left, const ComplexMatrix& right) {
  if (left.rows() != right.rows())
    throw DimensionError("hstack", left.rows(), left.cols(), right.rows(), right.cols());
  ComplexMatrix out(left.rows(), left.cols() + right.cols());
  out.set_block(0, 0, left);
  out.set_block(0, left.cols(), right);
  return out;
}

ComplexMatrix vstack(const ComplexMatrix& top, const ComplexMatrix& bottom) {
  if (top.cols() != bottom.cols())
    throw DimensionError("vstack", top.rows(), top.cols(), bottom.rows(), bottom.cols());
  ComplexMatrix out(top.rows() + bottom.rows(), top.cols());
  out.set_block(0, 0, top);
  out.set_block(top.rows(), 0, bottom);
  return out;
}

}  // namespace detineq
