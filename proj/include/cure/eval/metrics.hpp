#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cure/model/model.hpp"

namespace cure::eval {

// One evaluation row: erasing quality, model performance, privacy.
struct MetricsReport {
  std::optional<double> acc_erased;
  std::optional<double> acc_retained;
  std::optional<double> acc_test;
  std::optional<double> js_div;
  double update_norm = 0.0;
  std::optional<double> mia_acc;
  std::optional<double> alpha;
  std::string method;
  int round = 0;
  double wall_time_seconds = 0.0;
};

// Fraction of argmax-correct predictions (ties resolved toward the lowest
// class index).
double accuracy(const model::ModelSpec& spec, const model::ParamVector& w,
                const model::Dataset& data, model::IndexSpan subset);

// Mean Jensen-Shannon divergence (natural log, range [0, ln 2]) between the
// two models' predictive distributions over the subset.
double js_divergence(const model::ModelSpec& spec, const model::ParamVector& w_a,
                     const model::ParamVector& w_b, const model::Dataset& data,
                     model::IndexSpan subset);

double update_norm(const model::ParamVector& w, const model::ParamVector& w_ref);

// Loss-threshold membership inference: per-sample losses on the erased and
// test subsets feed a one-dimensional logistic classifier evaluated by
// stratified k-fold cross-validation; returns mean held-out balanced
// accuracy. 0.5 means the attacker cannot tell the sets apart.
double mia_accuracy(const model::ModelSpec& spec, const model::ParamVector& w,
                    const model::Dataset& erased_data,
                    model::IndexSpan erased_subset,
                    const model::Dataset& test_data,
                    model::IndexSpan test_subset, std::size_t folds = 5,
                    std::uint64_t seed = 0);

}  // namespace cure::eval
