#include "cure/linalg/matrix.hpp"

#include <cmath>
#include <stdexcept>

#include "cure/common/error.hpp"
#include "cure/kernels/kernels.hpp"

namespace cure::linalg {

double dot(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("dot: size mismatch");
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

double norm2(std::span<const double> a) {
  double acc = 0.0;
  for (double x : a) acc += x * x;
  return std::sqrt(acc);
}

Vector add_scaled(std::span<const double> a, double scale,
                  std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("add_scaled: size mismatch");
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + scale * b[i];
  return out;
}

void axpy_inplace(Vector& a, double scale, std::span<const double> b) {
  if (a.size() != b.size()) throw DimensionError("axpy: size mismatch");
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += scale * b[i];
}

Vector scaled(std::span<const double> a, double scale) {
  Vector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = scale * a[i];
  return out;
}

Matrix::Matrix(std::size_t rows, std::size_t cols, Vector data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows * cols)
    throw DimensionError("Matrix: data size does not match shape");
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vector Matrix::apply(std::span<const double> x) const {
  if (x.size() != cols_) throw DimensionError("Matrix::apply: size mismatch");
  Vector y(rows_);
  kernels::matvec(data_, rows_, cols_, x, y);
  return y;
}

Vector Matrix::apply_transposed(std::span<const double> x) const {
  if (x.size() != rows_)
    throw DimensionError("Matrix::apply_transposed: size mismatch");
  Vector y(cols_);
  kernels::matvec_transposed(data_, rows_, cols_, x, y);
  return y;
}

Matrix Matrix::multiply(const Matrix& other) const {
  if (cols_ != other.rows_) throw DimensionError("Matrix::multiply: shape mismatch");
  Matrix c(rows_, other.cols_);
  kernels::matmul(data_, other.data_, rows_, cols_, other.cols_, c.data());
  return c;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::frobenius_norm() const { return norm2(data_); }

bool Matrix::all_finite() const {
  for (double x : data_)
    if (!std::isfinite(x)) return false;
  return true;
}

SymmetricMatrix::SymmetricMatrix(Matrix a) : entries_(std::move(a)) {
  if (entries_.rows() != entries_.cols())
    throw DimensionError("SymmetricMatrix: matrix must be square");
  if (entries_.rows() == 0)
    throw DimensionError("SymmetricMatrix: dim must be >= 1");
  const std::size_t d = entries_.rows();
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      const double v = 0.5 * (entries_(i, j) + entries_(j, i));
      entries_(i, j) = v;
      entries_(j, i) = v;
    }
  }
}

SymmetricMatrix SymmetricMatrix::shifted(double gamma) const {
  SymmetricMatrix out = *this;
  for (std::size_t i = 0; i < dim(); ++i)
    out.entries_(i, i) += gamma;
  return out;
}

}  // namespace cure::linalg
