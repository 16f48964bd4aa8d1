#include "cure/unlearn/methods.hpp"

#include <algorithm>
#include <chrono>

#include "cure/common/error.hpp"
#include "cure/linalg/spectral.hpp"

namespace cure::unlearn {

using model::ParamVector;

namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

UnlearnResult make_result(ParamVector w, const ParamVector& w_star,
                          std::string method, double seconds) {
  UnlearnResult out;
  out.update_norm = model::param_distance(w, w_star);
  out.w_unlearned = std::move(w);
  out.method = std::move(method);
  out.wall_time_seconds = seconds;
  return out;
}

}  // namespace

UnlearnResult newton_unlearn(const ParamVector& w_star,
                             const model::DatasetSplit& split,
                             const Problem& problem) {
  Stopwatch timer;
  const ParamVector g = model::grad(problem.spec, w_star, problem.data,
                                    split.retained);
  const auto h = model::hessian(problem.spec, w_star, problem.data,
                                split.retained, problem.hessian_dim_cap);
  const linalg::Vector step = linalg::solve_spd(linalg::cholesky(h), g.values);
  ParamVector w{linalg::add_scaled(w_star.values, -1.0, step)};
  return make_result(std::move(w), w_star, "newton", timer.seconds());
}

UnlearnResult pinv_newton_unlearn(const ParamVector& w_star,
                                  const model::DatasetSplit& split,
                                  const Problem& problem, double rank_tol) {
  Stopwatch timer;
  const ParamVector g = model::grad(problem.spec, w_star, problem.data,
                                    split.retained);
  const auto h = model::hessian(problem.spec, w_star, problem.data,
                                split.retained, problem.hessian_dim_cap);
  const auto eig = linalg::sym_eigendecompose(h);
  const linalg::Vector step = linalg::pinv_apply(eig, g.values, rank_tol);
  ParamVector w{linalg::add_scaled(w_star.values, -1.0, step)};
  return make_result(std::move(w), w_star, "pinv-newton", timer.seconds());
}

UnlearnResult damped_newton_unlearn(const ParamVector& w_star,
                                    const model::DatasetSplit& split,
                                    const Problem& problem, double gamma) {
  Stopwatch timer;
  const ParamVector g = model::grad(problem.spec, w_star, problem.data,
                                    split.retained);
  const auto h = model::hessian(problem.spec, w_star, problem.data,
                                split.retained, problem.hessian_dim_cap);
  const linalg::Vector step = linalg::damped_apply(h, g.values, gamma);
  ParamVector w{linalg::add_scaled(w_star.values, -1.0, step)};
  return make_result(std::move(w), w_star, "damped-newton", timer.seconds());
}

UnlearnResult gd_unlearn(const ParamVector& w_star,
                         const model::DatasetSplit& split,
                         const Problem& problem, const FirstOrderConfig& config,
                         std::size_t epoch_offset) {
  Stopwatch timer;
  if (config.epochs == 0)
    return make_result(w_star, w_star, "gd", timer.seconds());
  model::TrainConfig tc;
  tc.optimizer = config.optimizer;
  tc.learning_rate = config.learning_rate;
  tc.lr_decay_rate = 1.0;
  tc.lr_decay_every_steps = 0;
  tc.weight_decay = 0.0;
  tc.batch_size = config.batch_size;
  tc.epochs = config.epochs;
  tc.seed = config.seed;
  ParamVector w = model::optimize(problem.spec, problem.data, split.retained,
                                  w_star, tc, epoch_offset);
  return make_result(std::move(w), w_star, "gd", timer.seconds());
}

UnlearnResult ga_unlearn(const ParamVector& w_star,
                         const model::DatasetSplit& split,
                         const Problem& problem, const FirstOrderConfig& config) {
  Stopwatch timer;
  if (config.epochs == 0)
    return make_result(w_star, w_star, "ga", timer.seconds());
  if (split.erased.empty())
    throw DimensionError("ga_unlearn: erased set is empty");
  // Ascent on the erased loss == descent with the learning rate negated.
  model::TrainConfig tc;
  tc.optimizer = model::Optimizer::sgd;
  tc.learning_rate = -config.learning_rate;
  tc.lr_decay_rate = 1.0;
  tc.lr_decay_every_steps = 0;
  tc.weight_decay = 0.0;
  tc.batch_size = config.batch_size;
  tc.epochs = config.epochs;
  tc.seed = config.seed;
  ParamVector w = model::optimize(problem.spec, problem.data, split.erased,
                                  w_star, tc);
  return make_result(std::move(w), w_star, "ga", timer.seconds());
}

UnlearnResult random_labels_unlearn(const ParamVector& w_star,
                                    const model::DatasetSplit& split,
                                    const Problem& problem,
                                    const FirstOrderConfig& config) {
  Stopwatch timer;
  if (problem.data.is_regression())
    throw ConfigError("random_labels_unlearn: classification models only");
  if (split.erased.empty())
    throw DimensionError("random_labels_unlearn: erased set is empty");

  std::vector<int> retained_classes;
  for (std::size_t idx : split.retained) {
    const int y = problem.data.labels[idx];
    if (std::find(retained_classes.begin(), retained_classes.end(), y) ==
        retained_classes.end())
      retained_classes.push_back(y);
  }
  std::sort(retained_classes.begin(), retained_classes.end());
  if (retained_classes.empty())
    throw ConfigError("random_labels_unlearn: no retained classes to draw from");

  model::Dataset relabeled = problem.data;
  Rng rng(Rng::derive(config.seed, "random-labels"));
  for (std::size_t idx : split.erased) {
    relabeled.labels[idx] = retained_classes[static_cast<std::size_t>(
        rng.uniform_int(retained_classes.size()))];
  }

  model::TrainConfig tc;
  tc.optimizer = config.optimizer;
  tc.learning_rate = config.learning_rate;
  tc.lr_decay_rate = 1.0;
  tc.lr_decay_every_steps = 0;
  tc.weight_decay = 0.0;
  tc.batch_size = config.batch_size;
  tc.epochs = std::max<std::size_t>(config.epochs, 1);
  tc.seed = config.seed;
  ParamVector w = model::optimize(problem.spec, relabeled, split.erased, w_star, tc);
  return make_result(std::move(w), w_star, "random-labels", timer.seconds());
}

UnlearnResult retrain_unlearn(const model::DatasetSplit& split,
                              const Problem& problem,
                              const model::TrainConfig& config,
                              const ParamVector& w_star) {
  Stopwatch timer;
  ParamVector w = model::train(problem.spec, problem.data, split.retained, config);
  return make_result(std::move(w), w_star, "retraining", timer.seconds());
}

}  // namespace cure::unlearn
