#include "cure/model/train.hpp"

#include <cmath>

#include "cure/common/error.hpp"
#include "cure/common/rng.hpp"

namespace cure::model {

Optimizer optimizer_from_string(const std::string& s) {
  if (s == "adaptive_moments" || s == "adam") return Optimizer::adaptive_moments;
  if (s == "sgd") return Optimizer::sgd;
  throw ConfigError("unknown optimizer: " + s);
}

std::string to_string(Optimizer opt) {
  return opt == Optimizer::adaptive_moments ? "adaptive_moments" : "sgd";
}

ParamVector init_params(const ModelSpec& spec, std::uint64_t seed) {
  ParamVector w = zero_params(spec);
  if (spec.kind != ModelKind::mlp) return w;
  Rng rng(Rng::derive(seed, "init"));
  const auto blocks = spec.layout();
  for (const auto& block : blocks) {
    if (block.name == "hidden_bias" || block.name == "output_bias") continue;
    const double scale = 1.0 / std::sqrt(static_cast<double>(block.rows));
    for (std::size_t i = 0; i < block.count(); ++i)
      w.values[block.offset + i] = scale * rng.normal();
  }
  return w;
}

ParamVector optimize(const ModelSpec& spec, const Dataset& data,
                     IndexSpan subset, ParamVector w0,
                     const TrainConfig& config, std::size_t epoch_offset,
                     TrainSummary* summary) {
  spec.validate();
  if (subset.empty()) throw DimensionError("optimize: empty subset");
  // Negative rates are the gradient-ascent path; zero never moves.
  if (config.learning_rate == 0.0 || !std::isfinite(config.learning_rate))
    throw ConfigError("optimize: learning_rate must be non-zero and finite");
  if (config.epochs < 1) throw ConfigError("optimize: epochs must be >= 1");
  if (config.batch_size < 1) throw ConfigError("optimize: batch_size must be >= 1");

  const std::size_t m = subset.size();
  const std::size_t batch = std::min(config.batch_size, m);
  const std::size_t steps_per_epoch = (m + batch - 1) / batch;

  ParamVector w = std::move(w0);
  linalg::Vector mom(w.size(), 0.0);
  linalg::Vector vel(w.size(), 0.0);
  std::size_t step = epoch_offset * steps_per_epoch;

  std::vector<std::size_t> batch_indices;
  batch_indices.reserve(batch);

  for (std::size_t epoch = 0; epoch < config.epochs; ++epoch) {
    Rng shuffle_rng(Rng::derive(
        config.seed, "epoch:" + std::to_string(epoch_offset + epoch)));
    const auto order = shuffle_rng.permutation(m);
    for (std::size_t start = 0; start < m; start += batch) {
      const std::size_t stop = std::min(m, start + batch);
      batch_indices.clear();
      for (std::size_t i = start; i < stop; ++i)
        batch_indices.push_back(subset[order[i]]);

      ParamVector g = grad(spec, w, data, batch_indices);
      if (config.weight_decay != 0.0)
        for (std::size_t i = 0; i < g.size(); ++i)
          g.values[i] += config.weight_decay * w.values[i];
      if (!g.all_finite())
        throw DivergenceError("optimize: non-finite gradient",
                              static_cast<long>(step));

      ++step;
      const double decay_buckets =
          config.lr_decay_every_steps > 0
              ? static_cast<double>(step / config.lr_decay_every_steps)
              : 0.0;
      const double lr =
          config.learning_rate * std::pow(config.lr_decay_rate, decay_buckets);

      if (config.optimizer == Optimizer::sgd) {
        for (std::size_t i = 0; i < w.size(); ++i)
          w.values[i] -= lr * g.values[i];
      } else {
        const double b1t = 1.0 - std::pow(config.beta1, static_cast<double>(step));
        const double b2t = 1.0 - std::pow(config.beta2, static_cast<double>(step));
        for (std::size_t i = 0; i < w.size(); ++i) {
          mom[i] = config.beta1 * mom[i] + (1.0 - config.beta1) * g.values[i];
          vel[i] = config.beta2 * vel[i] +
                   (1.0 - config.beta2) * g.values[i] * g.values[i];
          const double mhat = mom[i] / b1t;
          const double vhat = vel[i] / b2t;
          w.values[i] -= lr * mhat / (std::sqrt(vhat) + config.adam_eps);
        }
      }
      if (!w.all_finite())
        throw DivergenceError("optimize: non-finite parameters",
                              static_cast<long>(step));
    }
  }

  if (summary) {
    summary->steps = step;
    summary->final_loss = loss(spec, w, data, subset);
    const ParamVector g = grad(spec, w, data, subset);
    summary->final_grad_norm = linalg::norm2(g.values);
    if (!std::isfinite(summary->final_loss))
      throw DivergenceError("optimize: non-finite final loss",
                            static_cast<long>(step));
  }
  return w;
}

ParamVector train(const ModelSpec& spec, const Dataset& data, IndexSpan subset,
                  const TrainConfig& config, TrainSummary* summary) {
  if (!(config.learning_rate > 0.0))
    throw ConfigError("train: learning_rate must be > 0");
  return optimize(spec, data, subset, init_params(spec, config.seed), config, 0,
                  summary);
}

}  // namespace cure::model
