#include "cure/linalg/cholesky.hpp"

#include <cmath>

#include "cure/common/error.hpp"

namespace cure::linalg {

CholeskyFactor cholesky(const SymmetricMatrix& a) {
  const std::size_t d = a.dim();
  Matrix l(d, d);
  for (std::size_t j = 0; j < d; ++j) {
    double diag = a(j, j);
    for (std::size_t k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw NotPositiveDefiniteError("cholesky: non-positive pivot at column " +
                                     std::to_string(j));
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    const double inv = 1.0 / ljj;
#pragma omp parallel for schedule(static) if (d - j > 512)
    for (long long ii = static_cast<long long>(j) + 1;
         ii < static_cast<long long>(d); ++ii) {
      const std::size_t i = static_cast<std::size_t>(ii);
      double acc = a(i, j);
      for (std::size_t k = 0; k < j; ++k) acc -= l(i, k) * l(j, k);
      l(i, j) = acc * inv;
    }
  }
  return CholeskyFactor{std::move(l)};
}

Vector forward_solve(const CholeskyFactor& factor, std::span<const double> b) {
  const std::size_t d = factor.dim();
  if (b.size() != d) throw DimensionError("forward_solve: size mismatch");
  const Matrix& l = factor.lower;
  Vector y(d);
  for (std::size_t i = 0; i < d; ++i) {
    double acc = b[i];
    for (std::size_t k = 0; k < i; ++k) acc -= l(i, k) * y[k];
    y[i] = acc / l(i, i);
  }
  return y;
}

Vector solve_spd(const CholeskyFactor& factor, std::span<const double> b) {
  const std::size_t d = factor.dim();
  Vector y = forward_solve(factor, b);
  const Matrix& l = factor.lower;
  Vector x(d);
  for (std::size_t ii = d; ii > 0; --ii) {
    const std::size_t i = ii - 1;
    double acc = y[i];
    for (std::size_t k = i + 1; k < d; ++k) acc -= l(k, i) * x[k];
    x[i] = acc / l(i, i);
  }
  return x;
}

}  // namespace cure::linalg
