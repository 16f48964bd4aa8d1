#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "cure/common/rng.hpp"
#include "cure/model/dataset.hpp"
#include "cure/model/model.hpp"
#include "cure/model/train.hpp"
#include "cure/unlearn/trust_region.hpp"

namespace cure::unlearn {

// The model being unlearned: spec + training data. All methods read it, none
// mutate it.
struct Problem {
  const model::ModelSpec& spec;
  const model::Dataset& data;
  std::size_t hessian_dim_cap = 4096;
};

struct UnlearnResult {
  model::ParamVector w_unlearned;
  double update_norm = 0.0;  // ||w_unlearned - w*||
  std::vector<double> alpha_trace;  // converged alpha per request; empty for
                                    // non-trust-region methods
  std::string method;
  double wall_time_seconds = 0.0;
  std::optional<TrustRegionSolution> trust_region;  // diagnostics when present
};

struct CureNewtonConfig {
  double lipschitz_L = 5.0;  // FashionMNIST-scale default
  double tol_eps = 1e-6;
  std::size_t max_newton_iters = 100;
};

struct SCureNewtonConfig {
  double lipschitz_M = 1.0;
  double sigma = 1e-3;  // gradient perturbation magnitude
  double eta = 0.01;    // inner step size
  std::size_t k_outer = 20;
  std::size_t k_inner = 5;
  std::size_t grad_batch = 128;
  std::size_t hess_batch = 64;
  std::uint64_t seed = 0;
};

struct FirstOrderConfig {
  std::size_t epochs = 5;
  double learning_rate = 0.01;
  std::size_t batch_size = 64;
  std::uint64_t seed = 0;
  model::Optimizer optimizer = model::Optimizer::sgd;
};

// One exact Newton step on the retained loss: w = w* - (H^r)^{-1} g^r.
// A degenerate Hessian surfaces as NotPositiveDefiniteError; that failure
// mode is the point, not something to patch silently.
UnlearnResult newton_unlearn(const model::ParamVector& w_star,
                             const model::DatasetSplit& split,
                             const Problem& problem);

UnlearnResult pinv_newton_unlearn(const model::ParamVector& w_star,
                                  const model::DatasetSplit& split,
                                  const Problem& problem,
                                  double rank_tol = 1e-8);

UnlearnResult damped_newton_unlearn(const model::ParamVector& w_star,
                                    const model::DatasetSplit& split,
                                    const Problem& problem,
                                    double gamma = 1e-3);

UnlearnResult cure_newton_unlearn(const model::ParamVector& w_star,
                                  const model::DatasetSplit& split,
                                  const Problem& problem,
                                  const CureNewtonConfig& config);

// Gradient descent fine-tuning on the retained set.
UnlearnResult gd_unlearn(const model::ParamVector& w_star,
                         const model::DatasetSplit& split,
                         const Problem& problem, const FirstOrderConfig& config,
                         std::size_t epoch_offset = 0);

// Gradient ascent on the erased set.
UnlearnResult ga_unlearn(const model::ParamVector& w_star,
                         const model::DatasetSplit& split,
                         const Problem& problem, const FirstOrderConfig& config);

// Reassigns erased-set labels uniformly among classes present in the
// retained set, then fine-tunes on the relabeled erased set.
UnlearnResult random_labels_unlearn(const model::ParamVector& w_star,
                                    const model::DatasetSplit& split,
                                    const Problem& problem,
                                    const FirstOrderConfig& config);

// The exact oracle: trains from scratch on the retained set.
UnlearnResult retrain_unlearn(const model::DatasetSplit& split,
                              const Problem& problem,
                              const model::TrainConfig& config,
                              const model::ParamVector& w_star);

// Inner solver of the stochastic method: gradient descent on the cubic model
// m(s) = <g', s> + 1/2 <H s, s> + (M/3) ||s||^3 from the Cauchy-radius start.
// `hvp_oracle` supplies H v; exactly one call per inner step plus one for the
// Cauchy radius.
linalg::Vector descent_cubic_solve(
    const std::function<linalg::Vector(const linalg::Vector&)>& hvp_oracle,
    const linalg::Vector& gradient, double lipschitz_M, double sigma,
    double eta, std::size_t k_inner, Rng& rng);

UnlearnResult scure_newton_unlearn(const model::ParamVector& w_star,
                                   const model::DatasetSplit& split,
                                   const Problem& problem,
                                   const SCureNewtonConfig& config);

}  // namespace cure::unlearn
