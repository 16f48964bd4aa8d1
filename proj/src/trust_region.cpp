#include "cure/unlearn/trust_region.hpp"

#include <cmath>
#include <limits>

#include "cure/common/error.hpp"

namespace cure::unlearn {

using linalg::CholeskyFactor;
using linalg::SymmetricMatrix;
using linalg::Vector;

std::string to_string(TrustRegionCase c) {
  switch (c) {
    case TrustRegionCase::boundary: return "boundary";
    case TrustRegionCase::interior: return "interior";
    case TrustRegionCase::hard: return "hard";
  }
  return "?";
}

double cubic_model_value(const SymmetricMatrix& hessian, const Vector& gradient,
                         double lipschitz, const Vector& step) {
  const Vector hs = hessian.apply(step);
  const double n = linalg::norm2(step);
  return linalg::dot(gradient, step) + 0.5 * linalg::dot(hs, step) +
         lipschitz / 3.0 * n * n * n;
}

namespace {

struct Evaluated {
  CholeskyFactor factor;
  Vector delta_pos;  // (H + gamma I)^{-1} g
  double norm;
};

Evaluated evaluate(const SymmetricMatrix& h, const Vector& g, double gamma) {
  CholeskyFactor factor = linalg::cholesky(h.shifted(gamma));
  Vector delta = linalg::solve_spd(factor, g);
  const double n = linalg::norm2(delta);
  return {std::move(factor), std::move(delta), n};
}

double dual_value(const Vector& delta_pos, const Vector& g, double lipschitz,
                  double alpha) {
  return -0.5 * linalg::dot(delta_pos, g) -
         lipschitz / 6.0 * alpha * alpha * alpha;
}

// Footnote formula: gap = 2/(3L) * (alpha + 2||d||) / (alpha + ||d||)^2 * v_l'(alpha)^2.
double gap_value(double norm, double alpha, double lipschitz) {
  const double vlp = 0.5 * lipschitz * (norm * norm - alpha * alpha);
  const double denom = alpha + norm;
  if (denom == 0.0) return 0.0;
  return 2.0 / (3.0 * lipschitz) * (alpha + 2.0 * norm) / (denom * denom) *
         vlp * vlp;
}

}  // namespace

TrustRegionSolution trust_region_solve(const SymmetricMatrix& hessian,
                                       const Vector& gradient,
                                       double lipschitz, double eps,
                                       std::size_t max_iters) {
  const std::size_t d = hessian.dim();
  if (gradient.size() != d)
    throw DimensionError("trust_region_solve: gradient size mismatch");
  if (!(lipschitz > 0.0))
    throw ConfigError("trust_region_solve: lipschitz must be > 0");
  if (!(eps > 0.0)) throw ConfigError("trust_region_solve: eps must be > 0");
  if (!hessian.entries().all_finite())
    throw DimensionError("trust_region_solve: non-finite Hessian");
  for (double x : gradient)
    if (!std::isfinite(x))
      throw DimensionError("trust_region_solve: non-finite gradient");

  const auto eig = linalg::sym_eigendecompose(hessian);
  const double lambda_min = eig.smallest_eigenvalue();

  // gamma_0 = max(0, -lambda_min) + eps_pd keeps the first factorization
  // positive definite; eps_pd grows if roundoff still defeats it.
  double eps_pd = std::max(1e-8, 1e-8 * std::abs(lambda_min));
  double gamma0 = std::max(0.0, -lambda_min) + eps_pd;
  Evaluated ev = [&] {
    for (int attempt = 0; attempt < 60; ++attempt) {
      try {
        return evaluate(hessian, gradient, gamma0);
      } catch (const NotPositiveDefiniteError&) {
        eps_pd *= 10.0;
        gamma0 = std::max(0.0, -lambda_min) + eps_pd;
      }
    }
    throw NotPositiveDefiniteError(
        "trust_region_solve: could not reach a positive definite shift");
  }();

  const double alpha0 = gamma0 / lipschitz;

  TrustRegionSolution out;

  auto finish = [&](const Evaluated& e, double gamma, std::size_t iters,
                    TrustRegionCase which) {
    const double alpha = gamma / lipschitz;
    out.delta = linalg::scaled(e.delta_pos, -1.0);
    out.alpha = alpha;
    out.gamma = gamma;
    out.iterations = iters;
    out.solution_case = which;
    out.residual = std::abs(e.norm - alpha);
    out.dual_value = dual_value(e.delta_pos, gradient, lipschitz, alpha);
    out.duality_gap = gap_value(e.norm, alpha, lipschitz);
    return out;
  };

  if (std::abs(ev.norm - alpha0) <= eps) {
    return finish(ev, gamma0, 0, TrustRegionCase::interior);
  }

  if (ev.norm < alpha0 && lambda_min <= 0.0) {
    // Hard case: the gradient has (numerically) no component on the smallest
    // eigenspace, so the boundary root does not exist above gamma_0 and the
    // feasible set stops there. Augment along the smallest eigenvector to
    // reach the boundary: solve ||s0 + tau v_d|| = alpha_0 and keep the root
    // with the lower cubic model value.
    const Vector vd = eig.smallest_eigenvector();
    Vector s0 = linalg::scaled(ev.delta_pos, -1.0);
    const double b = linalg::dot(s0, vd);
    const double disc = b * b + alpha0 * alpha0 - ev.norm * ev.norm;
    const double root = std::sqrt(std::max(0.0, disc));
    const Vector cand1 = linalg::add_scaled(s0, -b + root, vd);
    const Vector cand2 = linalg::add_scaled(s0, -b - root, vd);
    const double v1 = cubic_model_value(hessian, gradient, lipschitz, cand1);
    const double v2 = cubic_model_value(hessian, gradient, lipschitz, cand2);
    const double tau = v1 <= v2 ? -b + root : -b - root;
    out.delta = v1 <= v2 ? cand1 : cand2;
    out.alpha = alpha0;
    out.gamma = gamma0;
    out.iterations = 0;
    out.solution_case = TrustRegionCase::hard;
    out.residual = std::abs(linalg::norm2(out.delta) - alpha0);
    out.dual_value = dual_value(ev.delta_pos, gradient, lipschitz, alpha0);
    out.duality_gap = gap_value(linalg::norm2(out.delta), alpha0, lipschitz);
    out.tau = tau;
    return out;
  }

  // Boundary root of psi(gamma) = ||delta(gamma)|| - gamma / L. psi is
  // decreasing, so the root is bracketed by the sign of psi at gamma_0:
  // above gamma_0 when psi > 0, inside (0, gamma_0) when psi < 0 (possible
  // only for positive definite H).
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
  double gamma = gamma0;
  double best_residual = std::numeric_limits<double>::infinity();

  for (std::size_t iter = 1; iter <= max_iters; ++iter) {
    const double alpha = gamma / lipschitz;
    best_residual = std::min(best_residual, std::abs(ev.norm - alpha));

    if (ev.norm > alpha) {
      lo = std::max(lo, gamma);
    } else {
      hi = std::min(hi, gamma);
    }

    // Secular Newton step (Algorithm-style phi / phi' assembly).
    const Vector u = linalg::forward_solve(ev.factor, ev.delta_pos);
    const double u2 = linalg::dot(u, u);
    const double phi = 1.0 / ev.norm - lipschitz / gamma;
    const double dphi = u2 / (ev.norm * ev.norm * ev.norm) +
                        lipschitz / (gamma * gamma);
    double proposal = gamma - phi / dphi;

    if (!std::isfinite(proposal) || proposal <= lo ||
        (std::isfinite(hi) && proposal >= hi)) {
      proposal = std::isfinite(hi) ? 0.5 * (lo + hi) : 2.0 * std::max(gamma, 1.0);
    }

    try {
      Evaluated next = evaluate(hessian, gradient, proposal);
      gamma = proposal;
      ev = std::move(next);
    } catch (const NotPositiveDefiniteError&) {
      // Indefinite proposal: bisect back toward the last feasible gamma.
      lo = std::max(lo, proposal);
      const double fallback =
          std::isfinite(hi) ? 0.5 * (lo + hi) : 0.5 * (proposal + gamma) + eps_pd;
      Evaluated next = evaluate(hessian, gradient, fallback);
      gamma = fallback;
      ev = std::move(next);
    }

    if (std::abs(ev.norm - gamma / lipschitz) <= eps) {
      return finish(ev, gamma, iter, TrustRegionCase::boundary);
    }
  }

  throw ConvergenceError(
      "trust_region_solve: no convergence after " + std::to_string(max_iters) +
          " iterations",
      best_residual);
}

}  // namespace cure::unlearn
