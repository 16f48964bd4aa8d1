#pragma once

#include <string>

#include "cure/linalg/cholesky.hpp"
#include "cure/linalg/eigen.hpp"

namespace cure::unlearn {

enum class TrustRegionCase { boundary, interior, hard };

std::string to_string(TrustRegionCase c);

// Minimizer of the cubic model
//   v_u(s) = <g, s> + 1/2 <H s, s> + (L/3) ||s||^3
// together with the converged dual variable alpha = gamma / L.
struct TrustRegionSolution {
  linalg::Vector delta;   // the step s; the new iterate is w* + delta
  double alpha = 0.0;     // converged dual variable, >= 0
  double gamma = 0.0;     // damping, gamma = alpha * L
  std::size_t iterations = 0;
  TrustRegionCase solution_case = TrustRegionCase::interior;
  double residual = 0.0;  // | ||delta|| - alpha | at exit
  double dual_value = 0.0;
  double duality_gap = 0.0;
  double tau = 0.0;       // hard-case eigenvector coefficient, else 0
};

// Dual ascent on v_l(alpha) = -1/2 <(H + alpha L I)^{-1} g, g> - (L/6) alpha^3
// over Q = {alpha : H + alpha L I > 0, alpha >= 0}, run as a safeguarded
// secular Newton iteration on gamma = alpha L:
//   phi(gamma) = 1 / ||delta(gamma)|| - L / gamma,
//   phi'(gamma) = ||u||^2 / ||delta||^3 + L / gamma^2, with L u = delta.
// gamma starts at max(0, -lambda_min) + eps_pd. When the start overshoots the
// root and H is positive definite the same iteration walks left on (0,
// gamma_0]; the eigenvector-augmented hard case fires only for lambda_min <=
// 0, where gamma_0 really is the edge of the feasible set.
TrustRegionSolution trust_region_solve(const linalg::SymmetricMatrix& hessian,
                                       const linalg::Vector& gradient,
                                       double lipschitz, double eps,
                                       std::size_t max_iters);

// The cubic model value v_u at a given step.
double cubic_model_value(const linalg::SymmetricMatrix& hessian,
                         const linalg::Vector& gradient, double lipschitz,
                         const linalg::Vector& step);

}  // namespace cure::unlearn
