#pragma once

#include "cure/linalg/matrix.hpp"

namespace cure::linalg {

// Spectral factorization A = Q diag(eigenvalues) Q^T with eigenvalues sorted
// non-increasing and eigenvectors as the aligned columns of an orthonormal Q.
struct EigenDecomposition {
  Vector eigenvalues;
  Matrix eigenvectors;

  std::size_t dim() const { return eigenvalues.size(); }
  Vector eigenvector(std::size_t k) const;
  double smallest_eigenvalue() const { return eigenvalues.back(); }
  Vector smallest_eigenvector() const { return eigenvector(dim() - 1); }

  Matrix reconstruct() const;  // Q diag Q^T
};

// Cyclic Jacobi. Converges when the off-diagonal Frobenius mass falls below
// 1e-12 * ||A||_F; rotation budget 100 d^2, exceeded budget raises
// ConvergenceError carrying the achieved off-diagonal residual.
EigenDecomposition sym_eigendecompose(const SymmetricMatrix& a);

}  // namespace cure::linalg
