#include <algorithm>
#include <cmath>

#include "cure/common/error.hpp"
#include "cure/common/rng.hpp"
#include "cure/eval/metrics.hpp"

namespace cure::eval {

namespace {

struct LossPoint {
  double loss;
  int member;  // 1 = erased, 0 = test
};

// Two-parameter logistic fit (intercept + slope on the scalar loss) by
// damped Newton iterations. The tiny ridge keeps the normal matrix
// invertible when the losses are all identical.
struct LogisticFit {
  double intercept = 0.0;
  double slope = 0.0;

  double prob(double x) const {
    return 1.0 / (1.0 + std::exp(-(intercept + slope * x)));
  }
};

LogisticFit fit_logistic_1d(const std::vector<LossPoint>& train, double mean,
                            double scale) {
  LogisticFit fit;
  constexpr double kRidge = 1e-8;
  for (int iter = 0; iter < 50; ++iter) {
    double g0 = kRidge * fit.intercept, g1 = kRidge * fit.slope;
    double h00 = kRidge, h01 = 0.0, h11 = kRidge;
    for (const auto& pt : train) {
      const double x = (pt.loss - mean) / scale;
      const double p = fit.prob(x);
      const double r = p - static_cast<double>(pt.member);
      g0 += r;
      g1 += r * x;
      const double wgt = std::max(p * (1.0 - p), 1e-12);
      h00 += wgt;
      h01 += wgt * x;
      h11 += wgt * x * x;
    }
    const double det = h00 * h11 - h01 * h01;
    const double d0 = (h11 * g0 - h01 * g1) / det;
    const double d1 = (h00 * g1 - h01 * g0) / det;
    fit.intercept -= d0;
    fit.slope -= d1;
    if (std::abs(d0) + std::abs(d1) < 1e-10) break;
  }
  return fit;
}

double balanced_accuracy(const std::vector<LossPoint>& held,
                         const LogisticFit& fit, double mean, double scale) {
  std::size_t tp = 0, fn = 0, tn = 0, fp = 0;
  for (const auto& pt : held) {
    const int pred = fit.prob((pt.loss - mean) / scale) > 0.5 ? 1 : 0;
    if (pt.member == 1) {
      (pred == 1 ? tp : fn) += 1;
    } else {
      (pred == 0 ? tn : fp) += 1;
    }
  }
  const double tpr = tp + fn ? static_cast<double>(tp) / (tp + fn) : 0.5;
  const double tnr = tn + fp ? static_cast<double>(tn) / (tn + fp) : 0.5;
  return 0.5 * (tpr + tnr);
}

}  // namespace

double mia_accuracy(const model::ModelSpec& spec, const model::ParamVector& w,
                    const model::Dataset& erased_data,
                    model::IndexSpan erased_subset,
                    const model::Dataset& test_data,
                    model::IndexSpan test_subset, std::size_t folds,
                    std::uint64_t seed) {
  if (erased_subset.empty() || test_subset.empty())
    throw DimensionError("mia_accuracy: both subsets must be non-empty");
  if (folds < 2) throw ConfigError("mia_accuracy: folds must be >= 2");
  if (erased_subset.size() < folds || test_subset.size() < folds)
    throw ConfigError("mia_accuracy: subset smaller than fold count");

  const auto erased_losses =
      model::per_sample_losses(spec, w, erased_data, erased_subset);
  const auto test_losses =
      model::per_sample_losses(spec, w, test_data, test_subset);

  // Stratified folds: shuffle within each class, deal round-robin.
  Rng rng(Rng::derive(seed, "mia"));
  std::vector<std::vector<LossPoint>> fold_sets(folds);
  auto deal = [&](const linalg::Vector& losses, int member) {
    const auto order = rng.permutation(losses.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      fold_sets[i % folds].push_back({losses[order[i]], member});
  };
  deal(erased_losses, 1);
  deal(test_losses, 0);

  double total = 0.0;
  for (std::size_t hold = 0; hold < folds; ++hold) {
    std::vector<LossPoint> train;
    for (std::size_t f = 0; f < folds; ++f)
      if (f != hold)
        train.insert(train.end(), fold_sets[f].begin(), fold_sets[f].end());

    double mean = 0.0;
    for (const auto& pt : train) mean += pt.loss;
    mean /= static_cast<double>(train.size());
    double var = 0.0;
    for (const auto& pt : train) {
      const double c = pt.loss - mean;
      var += c * c;
    }
    var /= static_cast<double>(train.size());
    const double scale = var > 0.0 ? std::sqrt(var) : 1.0;

    const LogisticFit fit = fit_logistic_1d(train, mean, scale);
    total += balanced_accuracy(fold_sets[hold], fit, mean, scale);
  }
  return total / static_cast<double>(folds);
}

}  // namespace cure::eval
