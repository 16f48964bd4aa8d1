#include "cure/eval/metrics.hpp"

#include <cmath>

#include "cure/common/error.hpp"
#include "cure/kernels/kernels.hpp"

namespace cure::eval {

double accuracy(const model::ModelSpec& spec, const model::ParamVector& w,
                const model::Dataset& data, model::IndexSpan subset) {
  if (subset.empty()) throw DimensionError("accuracy: empty subset");
  const auto predicted = model::predict_labels(spec, w, data, subset);
  std::size_t correct = 0;
  for (std::size_t i = 0; i < subset.size(); ++i)
    if (predicted[i] == data.labels[subset[i]]) ++correct;
  return static_cast<double>(correct) / static_cast<double>(subset.size());
}

double js_divergence(const model::ModelSpec& spec, const model::ParamVector& w_a,
                     const model::ParamVector& w_b, const model::Dataset& data,
                     model::IndexSpan subset) {
  if (subset.empty()) throw DimensionError("js_divergence: empty subset");
  const auto pa = model::predict_proba(spec, w_a, data, subset);
  const auto pb = model::predict_proba(spec, w_b, data, subset);
  const std::size_t m = pa.rows();
  const std::size_t c = pa.cols();

  // 0 * log(0 / x) = 0 by convention; m_k = 0 only where both are 0.
  auto kl_to_mid = [c](const double* p, const double* q) {
    double acc = 0.0;
    for (std::size_t k = 0; k < c; ++k) {
      if (p[k] <= 0.0) continue;
      const double mid = 0.5 * (p[k] + q[k]);
      acc += p[k] * std::log(p[k] / mid);
    }
    return acc;
  };

  linalg::Vector per_sample(m);
  for (std::size_t i = 0; i < m; ++i) {
    const double* a = pa.data().data() + i * c;
    const double* b = pb.data().data() + i * c;
    per_sample[i] = 0.5 * kl_to_mid(a, b) + 0.5 * kl_to_mid(b, a);
  }
  return kernels::blocked_sum(m, per_sample.data()) / static_cast<double>(m);
}

double update_norm(const model::ParamVector& w, const model::ParamVector& w_ref) {
  return model::param_distance(w, w_ref);
}

}  // namespace cure::eval
