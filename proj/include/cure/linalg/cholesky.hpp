#pragma once

#include "cure/linalg/matrix.hpp"

namespace cure::linalg {

// Lower-triangular factor L with L L^T equal to the factored matrix and
// strictly positive diagonal.
struct CholeskyFactor {
  Matrix lower;

  std::size_t dim() const { return lower.rows(); }
};

// Throws NotPositiveDefiniteError on a non-positive pivot; callers in the
// trust-region solver react by increasing the damping.
CholeskyFactor cholesky(const SymmetricMatrix& a);

// Solves (L L^T) x = b by forward/back substitution.
Vector solve_spd(const CholeskyFactor& factor, std::span<const double> b);

// Solves L u = b (forward substitution only); the trust-region dual second
// derivative needs ||u|| with u = L^{-1} delta.
Vector forward_solve(const CholeskyFactor& factor, std::span<const double> b);

}  // namespace cure::linalg
