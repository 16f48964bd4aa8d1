#include "cure/linalg/spectral.hpp"

#include <cmath>

#include "cure/common/error.hpp"
#include "cure/linalg/cholesky.hpp"

namespace cure::linalg {

namespace {

double spectrum_max_abs(const EigenDecomposition& eig) {
  double m = 0.0;
  for (double v : eig.eigenvalues) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

Vector pinv_apply(const EigenDecomposition& eig, std::span<const double> g,
                  double rank_tol) {
  const std::size_t d = eig.dim();
  if (g.size() != d) throw DimensionError("pinv_apply: size mismatch");
  if (!(rank_tol > 0.0)) throw ConfigError("pinv_apply: rank_tol must be > 0");

  const double cut = rank_tol * spectrum_max_abs(eig);
  Vector coeffs = eig.eigenvectors.apply_transposed(g);  // Q^T g
  for (std::size_t k = 0; k < d; ++k) {
    const double lambda = eig.eigenvalues[k];
    coeffs[k] = (std::abs(lambda) > cut) ? coeffs[k] / lambda : 0.0;
  }
  return eig.eigenvectors.apply(coeffs);
}

Vector damped_apply(const SymmetricMatrix& a, std::span<const double> g,
                    double gamma) {
  if (g.size() != a.dim()) throw DimensionError("damped_apply: size mismatch");
  return solve_spd(cholesky(a.shifted(gamma)), g);
}

std::size_t numerical_rank(const EigenDecomposition& eig, double rank_tol) {
  const double cut = rank_tol * spectrum_max_abs(eig);
  std::size_t rank = 0;
  for (double v : eig.eigenvalues)
    if (std::abs(v) > cut) ++rank;
  return rank;
}

}  // namespace cure::linalg
