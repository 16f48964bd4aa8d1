#include "cure/kernels/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace cure::kernels {

namespace {
// Below this many output elements the fork/join overhead dominates.
constexpr std::size_t kParallelCutoff = 4096;
}  // namespace

namespace serial {

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a.data() + i * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[i] = acc;
  }
}

void matvec_transposed(std::span<const double> a, std::size_t rows,
                       std::size_t cols, std::span<const double> x,
                       std::span<double> y) {
  for (std::size_t j = 0; j < cols; ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows; ++i) acc += a[i * cols + j] * x[i];
    y[j] = acc;
  }
}

void matmul(std::span<const double> a, std::span<const double> b,
            std::size_t rows, std::size_t inner, std::size_t cols,
            std::span<double> c) {
  for (std::size_t i = 0; i < rows; ++i) {
    double* out = c.data() + i * cols;
    std::fill(out, out + cols, 0.0);
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a[i * inner + k];
      const double* brow = b.data() + k * cols;
      for (std::size_t j = 0; j < cols; ++j) out[j] += aik * brow[j];
    }
  }
}

void gram_at_b(std::span<const double> a, std::span<const double> b,
               std::size_t n, std::size_t rows, std::size_t cols,
               std::span<double> c) {
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a[k * rows + i] * b[k * cols + j];
      c[i * cols + j] = acc;
    }
  }
}

void row_softmax(std::span<double> z, std::size_t n, std::size_t c) {
  for (std::size_t i = 0; i < n; ++i) {
    double* row = z.data() + i * c;
    double m = row[0];
    for (std::size_t j = 1; j < c; ++j) m = std::max(m, row[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      row[j] = std::exp(row[j] - m);
      sum += row[j];
    }
    const double inv = 1.0 / sum;
    for (std::size_t j = 0; j < c; ++j) row[j] *= inv;
  }
}

double blocked_sum(std::size_t n, const double* values) {
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<double> partial(blocks, 0.0);
  for (std::size_t b = 0; b < blocks; ++b) {
    const std::size_t hi = std::min(n, (b + 1) * kBlock);
    double acc = 0.0;
    for (std::size_t k = b * kBlock; k < hi; ++k) acc += values[k];
    partial[b] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void jacobi_rotate(std::span<double> a, std::span<double> v, std::size_t d,
                   std::size_t p, std::size_t q, double c, double s) {
  for (std::size_t j = 0; j < d; ++j) {
    if (j == p || j == q) continue;
    const double apj = a[p * d + j];
    const double aqj = a[q * d + j];
    a[p * d + j] = c * apj - s * aqj;
    a[j * d + p] = a[p * d + j];
    a[q * d + j] = s * apj + c * aqj;
    a[j * d + q] = a[q * d + j];
  }
  const double app = a[p * d + p];
  const double aqq = a[q * d + q];
  const double apq = a[p * d + q];
  a[p * d + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
  a[q * d + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
  a[p * d + q] = 0.0;
  a[q * d + p] = 0.0;
  for (std::size_t j = 0; j < d; ++j) {
    const double vjp = v[j * d + p];
    const double vjq = v[j * d + q];
    v[j * d + p] = c * vjp - s * vjq;
    v[j * d + q] = s * vjp + c * vjq;
  }
}

}  // namespace serial

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y) {
  if (rows * cols < kParallelCutoff) {
    serial::matvec(a, rows, cols, x, y);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long i = 0; i < static_cast<long long>(rows); ++i) {
    const double* row = a.data() + static_cast<std::size_t>(i) * cols;
    double acc = 0.0;
    for (std::size_t j = 0; j < cols; ++j) acc += row[j] * x[j];
    y[static_cast<std::size_t>(i)] = acc;
  }
}

void matvec_transposed(std::span<const double> a, std::size_t rows,
                       std::size_t cols, std::span<const double> x,
                       std::span<double> y) {
  if (rows * cols < kParallelCutoff) {
    serial::matvec_transposed(a, rows, cols, x, y);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long j = 0; j < static_cast<long long>(cols); ++j) {
    double acc = 0.0;
    for (std::size_t i = 0; i < rows; ++i)
      acc += a[i * cols + static_cast<std::size_t>(j)] * x[i];
    y[static_cast<std::size_t>(j)] = acc;
  }
}

void matmul(std::span<const double> a, std::span<const double> b,
            std::size_t rows, std::size_t inner, std::size_t cols,
            std::span<double> c) {
  if (rows * inner * cols < kParallelCutoff) {
    serial::matmul(a, b, rows, inner, cols, c);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(rows); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    double* out = c.data() + i * cols;
    std::fill(out, out + cols, 0.0);
    for (std::size_t k = 0; k < inner; ++k) {
      const double aik = a[i * inner + k];
      const double* brow = b.data() + k * cols;
      for (std::size_t j = 0; j < cols; ++j) out[j] += aik * brow[j];
    }
  }
}

void gram_at_b(std::span<const double> a, std::span<const double> b,
               std::size_t n, std::size_t rows, std::size_t cols,
               std::span<double> c) {
  if (n * rows * cols < kParallelCutoff) {
    serial::gram_at_b(a, b, n, rows, cols, c);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(rows); ++ii) {
    const std::size_t i = static_cast<std::size_t>(ii);
    for (std::size_t j = 0; j < cols; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += a[k * rows + i] * b[k * cols + j];
      c[i * cols + j] = acc;
    }
  }
}

void row_softmax(std::span<double> z, std::size_t n, std::size_t c) {
  if (n * c < kParallelCutoff) {
    serial::row_softmax(z, n, c);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long ii = 0; ii < static_cast<long long>(n); ++ii) {
    double* row = z.data() + static_cast<std::size_t>(ii) * c;
    double m = row[0];
    for (std::size_t j = 1; j < c; ++j) m = std::max(m, row[j]);
    double sum = 0.0;
    for (std::size_t j = 0; j < c; ++j) {
      row[j] = std::exp(row[j] - m);
      sum += row[j];
    }
    const double inv = 1.0 / sum;
    for (std::size_t j = 0; j < c; ++j) row[j] *= inv;
  }
}

double blocked_sum(std::size_t n, const double* values) {
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks = (n + kBlock - 1) / kBlock;
  if (blocks < 8) return serial::blocked_sum(n, values);
  std::vector<double> partial(blocks, 0.0);
#pragma omp parallel for schedule(static)
  for (long long b = 0; b < static_cast<long long>(blocks); ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * kBlock;
    const std::size_t hi = std::min(n, lo + kBlock);
    double acc = 0.0;
    for (std::size_t k = lo; k < hi; ++k) acc += values[k];
    partial[static_cast<std::size_t>(b)] = acc;
  }
  double total = 0.0;
  for (double p : partial) total += p;
  return total;
}

void jacobi_rotate(std::span<double> a, std::span<double> v, std::size_t d,
                   std::size_t p, std::size_t q, double c, double s) {
  if (d < 256) {
    serial::jacobi_rotate(a, v, d, p, q, c, s);
    return;
  }
#pragma omp parallel for schedule(static)
  for (long long jj = 0; jj < static_cast<long long>(d); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    if (j == p || j == q) continue;
    const double apj = a[p * d + j];
    const double aqj = a[q * d + j];
    a[p * d + j] = c * apj - s * aqj;
    a[j * d + p] = a[p * d + j];
    a[q * d + j] = s * apj + c * aqj;
    a[j * d + q] = a[q * d + j];
  }
  const double app = a[p * d + p];
  const double aqq = a[q * d + q];
  const double apq = a[p * d + q];
  a[p * d + p] = c * c * app - 2.0 * s * c * apq + s * s * aqq;
  a[q * d + q] = s * s * app + 2.0 * s * c * apq + c * c * aqq;
  a[p * d + q] = 0.0;
  a[q * d + p] = 0.0;
#pragma omp parallel for schedule(static)
  for (long long jj = 0; jj < static_cast<long long>(d); ++jj) {
    const std::size_t j = static_cast<std::size_t>(jj);
    const double vjp = v[j * d + p];
    const double vjq = v[j * d + q];
    v[j * d + p] = c * vjp - s * vjq;
    v[j * d + q] = s * vjp + c * vjq;
  }
}

}  // namespace cure::kernels
