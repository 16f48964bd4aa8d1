#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cure::linalg {

using Vector = std::vector<double>;

double dot(std::span<const double> a, std::span<const double> b);
double norm2(std::span<const double> a);
Vector add_scaled(std::span<const double> a, double scale,
                  std::span<const double> b);  // a + scale * b
void axpy_inplace(Vector& a, double scale, std::span<const double> b);
Vector scaled(std::span<const double> a, double scale);

// Dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}
  Matrix(std::size_t rows, std::size_t cols, Vector data);

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector& data() { return data_; }
  const Vector& data() const { return data_; }
  std::span<const double> row(std::size_t i) const {
    return {data_.data() + i * cols_, cols_};
  }

  Vector apply(std::span<const double> x) const;             // A x
  Vector apply_transposed(std::span<const double> x) const;  // A^T x
  Matrix multiply(const Matrix& other) const;                // A B
  Matrix transposed() const;

  double frobenius_norm() const;
  bool all_finite() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Vector data_;
};

// Square matrix with exact symmetry, enforced at construction by
// symmetrization (A + A^T) / 2.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(Matrix a);
  explicit SymmetricMatrix(std::size_t dim) : entries_(dim, dim) {}

  std::size_t dim() const { return entries_.rows(); }
  double operator()(std::size_t i, std::size_t j) const { return entries_(i, j); }

  // Symmetric write: sets (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double value) {
    entries_(i, j) = value;
    entries_(j, i) = value;
  }

  const Matrix& entries() const { return entries_; }
  Vector apply(std::span<const double> x) const { return entries_.apply(x); }
  double frobenius_norm() const { return entries_.frobenius_norm(); }

  SymmetricMatrix shifted(double gamma) const;  // A + gamma I

 private:
  Matrix entries_;
};

}  // namespace cure::linalg
