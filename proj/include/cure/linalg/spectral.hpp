#pragma once

#include "cure/linalg/eigen.hpp"

namespace cure::linalg {

// Minimum-norm least-squares solution H^+ g built from the spectrum:
// components with |lambda_i| > rank_tol * max|lambda| are reciprocated, the
// rest dropped. An all-zero spectrum yields the zero vector.
Vector pinv_apply(const EigenDecomposition& eig, std::span<const double> g,
                  double rank_tol);

// (A + gamma I)^{-1} g via Cholesky. Throws NotPositiveDefiniteError when
// gamma fails to clear the smallest eigenvalue.
Vector damped_apply(const SymmetricMatrix& a, std::span<const double> g,
                    double gamma);

// Numerical rank: count of |lambda_i| > rank_tol * max|lambda|.
std::size_t numerical_rank(const EigenDecomposition& eig, double rank_tol);

}  // namespace cure::linalg
