#include <chrono>
#include <cmath>

#include "cure/common/error.hpp"
#include "cure/unlearn/methods.hpp"

namespace cure::unlearn {

using linalg::Vector;

Vector descent_cubic_solve(
    const std::function<Vector(const Vector&)>& hvp_oracle,
    const Vector& gradient, double lipschitz_M, double sigma, double eta,
    std::size_t k_inner, Rng& rng) {
  if (!(lipschitz_M > 0.0) || !(eta > 0.0))
    throw ConfigError("descent_cubic_solve: M and eta must be > 0");
  const double gnorm = linalg::norm2(gradient);
  if (gnorm <= 1e-12) return Vector(gradient.size(), 0.0);

  // Cauchy radius from the one-dimensional model along -g.
  const Vector hg = hvp_oracle(gradient);
  const double ghg = linalg::dot(gradient, hg);
  const double a = ghg / (lipschitz_M * gnorm * gnorm);
  const double cauchy_radius =
      -a + std::sqrt(a * a + 2.0 * gnorm / lipschitz_M);

  Vector step = linalg::scaled(gradient, -cauchy_radius / gnorm);

  Vector perturbed = gradient;
  const Vector xi = rng.unit_sphere(gradient.size());
  linalg::axpy_inplace(perturbed, sigma, xi);

  for (std::size_t i = 0; i < k_inner; ++i) {
    const Vector hs = hvp_oracle(step);
    const double snorm = linalg::norm2(step);
    for (std::size_t j = 0; j < step.size(); ++j) {
      step[j] -= eta * (hs[j] + perturbed[j] + lipschitz_M * snorm * step[j]);
      if (!std::isfinite(step[j]))
        throw DivergenceError("descent_cubic_solve: non-finite step",
                              static_cast<long>(i));
    }
  }
  return step;
}

UnlearnResult scure_newton_unlearn(const model::ParamVector& w_star,
                                   const model::DatasetSplit& split,
                                   const Problem& problem,
                                   const SCureNewtonConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  if (split.retained.empty())
    throw DimensionError("scure_newton_unlearn: retained set is empty");
  if (config.grad_batch > split.n_r() || config.hess_batch > split.n_r())
    throw ConfigError("scure_newton_unlearn: batch size exceeds retained size");
  if (config.grad_batch == 0 || config.hess_batch == 0)
    throw ConfigError("scure_newton_unlearn: batch sizes must be >= 1");

  model::ParamVector w = w_star;
  Rng rng(Rng::derive(config.seed, "scure-newton"));

  for (std::size_t t = 0; t < config.k_outer; ++t) {
    const auto grad_ids =
        rng.sample_without_replacement(split.retained, config.grad_batch);
    const auto hess_ids =
        rng.sample_without_replacement(split.retained, config.hess_batch);

    const model::ParamVector g =
        model::grad(problem.spec, w, problem.data, grad_ids);
    const auto hvp_oracle = [&](const Vector& v) {
      return model::hvp(problem.spec, w, problem.data, hess_ids,
                        model::ParamVector{v})
          .values;
    };
    const Vector step =
        descent_cubic_solve(hvp_oracle, g.values, config.lipschitz_M,
                            config.sigma, config.eta, config.k_inner, rng);
    linalg::axpy_inplace(w.values, 1.0, step);
    if (!w.all_finite())
      throw DivergenceError("scure_newton_unlearn: non-finite parameters",
                            static_cast<long>(t));
  }

  UnlearnResult out;
  out.update_norm = model::param_distance(w, w_star);
  out.w_unlearned = std::move(w);
  out.method = "scure-newton";
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace cure::unlearn
