#include "cure/model/dataset.hpp"

#include <algorithm>
#include <cmath>

#include "cure/common/error.hpp"

namespace cure::model {

void Dataset::validate() const {
  if (size() == 0) throw ConfigError("dataset: empty");
  if (!features.all_finite())
    throw ConfigError("dataset: non-finite feature value");
  if (is_regression()) {
    if (targets.size() != size())
      throw DimensionError("dataset: target count does not match rows");
    for (double t : targets)
      if (!std::isfinite(t)) throw ConfigError("dataset: non-finite target");
  } else {
    if (labels.size() != size())
      throw DimensionError("dataset: label count does not match rows");
    for (int y : labels)
      if (y < 0 || static_cast<std::size_t>(y) >= class_count)
        throw ConfigError("dataset: label " + std::to_string(y) +
                          " outside [0, " + std::to_string(class_count) + ")");
  }
}

void Dataset::standardize_features() {
  const std::size_t n = size();
  const std::size_t p = feature_dim();
  for (std::size_t j = 0; j < p; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += features(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = features(i, j) - mean;
      var += c * c;
    }
    var /= static_cast<double>(n);
    const double inv = var > 0.0 ? 1.0 / std::sqrt(var) : 1.0;
    for (std::size_t i = 0; i < n; ++i)
      features(i, j) = (features(i, j) - mean) * inv;
  }
}

std::vector<std::size_t> Dataset::all_indices() const {
  std::vector<std::size_t> idx(size());
  for (std::size_t i = 0; i < size(); ++i) idx[i] = i;
  return idx;
}

std::vector<std::size_t> Dataset::indices_of_class(int label) const {
  std::vector<std::size_t> idx;
  for (std::size_t i = 0; i < labels.size(); ++i)
    if (labels[i] == label) idx.push_back(i);
  return idx;
}

DatasetSplit split(const Dataset& data, std::vector<std::size_t> erased_indices) {
  std::sort(erased_indices.begin(), erased_indices.end());
  if (std::adjacent_find(erased_indices.begin(), erased_indices.end()) !=
      erased_indices.end())
    throw ConfigError("split: duplicate erased index");
  const std::size_t n = data.size();
  if (!erased_indices.empty() && erased_indices.back() >= n)
    throw ConfigError("split: erased index out of range");

  DatasetSplit out;
  out.erased = std::move(erased_indices);
  out.retained.reserve(n - out.erased.size());
  std::size_t next = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (next < out.erased.size() && out.erased[next] == i) {
      ++next;
    } else {
      out.retained.push_back(i);
    }
  }
  return out;
}

}  // namespace cure::model
