#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace cure::kernels {

// Dense data-parallel kernels. Each parallel kernel assigns every output
// element to exactly one thread and accumulates it in fixed index order, so
// results are bit-identical to the serial reference for any thread count.
// The serial mirrors live in cure::kernels::serial and exist for testing and
// benchmarking (see bench/kernel_bench.cpp).

// y = A x, A is rows x cols row-major.
void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);

// y = A^T x.
void matvec_transposed(std::span<const double> a, std::size_t rows,
                       std::size_t cols, std::span<const double> x,
                       std::span<double> y);

// C = A B, A rows x inner, B inner x cols, all row-major.
void matmul(std::span<const double> a, std::span<const double> b,
            std::size_t rows, std::size_t inner, std::size_t cols,
            std::span<double> c);

// C = A^T B, A n x rows, B n x cols. The workhorse behind gradient
// accumulation X^T R.
void gram_at_b(std::span<const double> a, std::span<const double> b,
               std::size_t n, std::size_t rows, std::size_t cols,
               std::span<double> c);

// In-place row-wise softmax of an n x c row-major matrix, numerically stable.
void row_softmax(std::span<double> z, std::size_t n, std::size_t c);

// Sum of f-values over n items, accumulated in fixed 256-element blocks so
// the addition order never depends on the thread count.
double blocked_sum(std::size_t n, const double* values);

// Applies a Givens rotation to rows/columns p and q of the symmetric matrix
// a (d x d) and to columns p and q of the eigenvector accumulator v.
void jacobi_rotate(std::span<double> a, std::span<double> v, std::size_t d,
                   std::size_t p, std::size_t q, double c, double s);

namespace serial {

void matvec(std::span<const double> a, std::size_t rows, std::size_t cols,
            std::span<const double> x, std::span<double> y);
void matvec_transposed(std::span<const double> a, std::size_t rows,
                       std::size_t cols, std::span<const double> x,
                       std::span<double> y);
void matmul(std::span<const double> a, std::span<const double> b,
            std::size_t rows, std::size_t inner, std::size_t cols,
            std::span<double> c);
void gram_at_b(std::span<const double> a, std::span<const double> b,
               std::size_t n, std::size_t rows, std::size_t cols,
               std::span<double> c);
void row_softmax(std::span<double> z, std::size_t n, std::size_t c);
double blocked_sum(std::size_t n, const double* values);
void jacobi_rotate(std::span<double> a, std::span<double> v, std::size_t d,
                   std::size_t p, std::size_t q, double c, double s);

}  // namespace serial

}  // namespace cure::kernels
