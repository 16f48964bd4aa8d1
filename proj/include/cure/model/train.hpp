#pragma once

#include <cstdint>

#include "cure/model/model.hpp"

namespace cure::model {

enum class Optimizer { adaptive_moments, sgd };

Optimizer optimizer_from_string(const std::string& s);
std::string to_string(Optimizer opt);

struct TrainConfig {
  Optimizer optimizer = Optimizer::adaptive_moments;
  double learning_rate = 0.01;
  double lr_decay_rate = 0.5;
  std::size_t lr_decay_every_steps = 5000;
  double weight_decay = 0.005;
  std::size_t batch_size = 64;
  std::size_t epochs = 15;
  std::uint64_t seed = 0;
  // Adaptive-moment internals; the framework-level defaults are pinned here.
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_eps = 1e-8;
};

struct TrainSummary {
  double final_loss = 0.0;
  double final_grad_norm = 0.0;
  std::size_t steps = 0;
};

// Seed-determined initialization: zeros for the convex models, scaled normal
// weights with zero biases for the MLP.
ParamVector init_params(const ModelSpec& spec, std::uint64_t seed);

// Mini-batch loop starting from w0. Per-epoch shuffles are derived from
// (seed, epoch_offset + epoch), so a run continued from a checkpoint with the
// matching offset reproduces an uninterrupted run exactly (stateless
// optimizers only). The step count driving the lr schedule also starts at
// epoch_offset * ceil(subset / batch).
ParamVector optimize(const ModelSpec& spec, const Dataset& data,
                     IndexSpan subset, ParamVector w0,
                     const TrainConfig& config, std::size_t epoch_offset = 0,
                     TrainSummary* summary = nullptr);

ParamVector train(const ModelSpec& spec, const Dataset& data, IndexSpan subset,
                  const TrainConfig& config, TrainSummary* summary = nullptr);

}  // namespace cure::model
