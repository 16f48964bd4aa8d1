#include <chrono>

#include "cure/unlearn/methods.hpp"

namespace cure::unlearn {

UnlearnResult cure_newton_unlearn(const model::ParamVector& w_star,
                                  const model::DatasetSplit& split,
                                  const Problem& problem,
                                  const CureNewtonConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const model::ParamVector g = model::grad(problem.spec, w_star, problem.data,
                                           split.retained);
  const auto h = model::hessian(problem.spec, w_star, problem.data,
                                split.retained, problem.hessian_dim_cap);
  TrustRegionSolution solution =
      trust_region_solve(h, g.values, config.lipschitz_L, config.tol_eps,
                         config.max_newton_iters);

  UnlearnResult out;
  out.w_unlearned =
      model::ParamVector{linalg::add_scaled(w_star.values, 1.0, solution.delta)};
  out.update_norm = model::param_distance(out.w_unlearned, w_star);
  out.alpha_trace.push_back(solution.alpha);
  out.method = "cure-newton";
  out.trust_region = std::move(solution);
  out.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return out;
}

}  // namespace cure::unlearn
