#include "cure/unlearn/lipschitz.hpp"

#include <cmath>

#include "cure/common/rng.hpp"

namespace cure::unlearn {

double estimate_hessian_lipschitz(const model::ModelSpec& spec,
                                  const model::Dataset& data,
                                  model::IndexSpan subset,
                                  const model::ParamVector& w_star,
                                  double radius, std::size_t pairs,
                                  std::uint64_t seed) {
  Rng rng(Rng::derive(seed, "lipschitz"));
  const std::size_t d = spec.param_count();

  auto sample_point = [&]() {
    model::ParamVector w = w_star;
    const auto dir = rng.unit_sphere(d);
    const double r = rng.uniform(0.0, radius);
    for (std::size_t i = 0; i < d; ++i) w.values[i] += r * dir[i];
    return w;
  };

  double max_ratio = 0.0;
  for (std::size_t k = 0; k < pairs; ++k) {
    const model::ParamVector w1 = sample_point();
    const model::ParamVector w2 = sample_point();
    const double dist = model::param_distance(w1, w2);
    if (dist < 1e-12) continue;
    const auto h1 = model::hessian(spec, w1, data, subset);
    const auto h2 = model::hessian(spec, w2, data, subset);
    double diff2 = 0.0;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        const double e = h1(i, j) - h2(i, j);
        diff2 += e * e;
      }
    max_ratio = std::max(max_ratio, std::sqrt(diff2) / (2.0 * dist));
  }
  return 2.0 * max_ratio;
}

}  // namespace cure::unlearn
