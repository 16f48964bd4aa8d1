#include "cure/linalg/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cure/common/error.hpp"
#include "cure/kernels/kernels.hpp"

namespace cure::linalg {

Vector EigenDecomposition::eigenvector(std::size_t k) const {
  Vector v(dim());
  for (std::size_t i = 0; i < dim(); ++i) v[i] = eigenvectors(i, k);
  return v;
}

Matrix EigenDecomposition::reconstruct() const {
  const std::size_t d = dim();
  Matrix scaled_q = eigenvectors;  // Q diag
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) scaled_q(i, j) *= eigenvalues[j];
  return scaled_q.multiply(eigenvectors.transposed());
}

namespace {

double offdiag_norm(const Matrix& a) {
  const std::size_t d = a.rows();
  double acc = 0.0;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      if (i != j) acc += a(i, j) * a(i, j);
  return std::sqrt(acc);
}

}  // namespace

EigenDecomposition sym_eigendecompose(const SymmetricMatrix& input) {
  const std::size_t d = input.dim();
  if (!input.entries().all_finite())
    throw DimensionError("sym_eigendecompose: matrix has non-finite entries");

  Matrix a = input.entries();
  Matrix q = Matrix::identity(d);
  const double threshold = 1e-12 * std::max(input.frobenius_norm(), 1e-300);
  const std::size_t max_rotations = 100 * d * d;

  std::size_t rotations = 0;
  while (d > 1 && offdiag_norm(a) > threshold) {
    // One cyclic sweep. Skipping an element that is individually below
    // threshold/d cannot stall: if every off-diagonal entry is that small the
    // total off-diagonal norm is already below threshold.
    for (std::size_t p = 0; p + 1 < d; ++p) {
      for (std::size_t r = p + 1; r < d; ++r) {
        const double apq = a(p, r);
        if (std::abs(apq) <= threshold / static_cast<double>(d)) continue;
        // Standard symmetric Jacobi rotation (Golub & Van Loan 8.4).
        const double tau = (a(r, r) - a(p, p)) / (2.0 * apq);
        const double t = (tau >= 0.0)
                             ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                             : 1.0 / (tau - std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        kernels::jacobi_rotate(a.data(), q.data(), d, p, r, c, s);
        if (++rotations > max_rotations) {
          throw ConvergenceError(
              "sym_eigendecompose: rotation budget exhausted", offdiag_norm(a));
        }
      }
    }
  }

  Vector values(d);
  for (std::size_t i = 0; i < d; ++i) values[i] = a(i, i);

  // Sort non-increasing, carrying eigenvector columns along.
  std::vector<std::size_t> order(d);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return values[i] > values[j]; });

  EigenDecomposition out;
  out.eigenvalues.resize(d);
  out.eigenvectors = Matrix(d, d);
  for (std::size_t k = 0; k < d; ++k) {
    out.eigenvalues[k] = values[order[k]];
    for (std::size_t i = 0; i < d; ++i) out.eigenvectors(i, k) = q(i, order[k]);
  }
  return out;
}

}  // namespace cure::linalg
