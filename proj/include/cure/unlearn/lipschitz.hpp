#pragma once

#include <cstdint>

#include "cure/model/model.hpp"

namespace cure::unlearn {

// Empirical Hessian-Lipschitz bound around w*: the max over sampled pairs of
// ||H(w1) - H(w2)||_F / (2 ||w1 - w2||), doubled for margin. Pairs are drawn
// inside a ball of the given radius. Dense-Hessian cost per pair; meant for
// small models and test calibration, not the hot path.
double estimate_hessian_lipschitz(const model::ModelSpec& spec,
                                  const model::Dataset& data,
                                  model::IndexSpan subset,
                                  const model::ParamVector& w_star,
                                  double radius = 1.0, std::size_t pairs = 200,
                                  std::uint64_t seed = 0);

}  // namespace cure::unlearn
