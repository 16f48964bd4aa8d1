#include <cmath>

#include "cure/common/error.hpp"
#include "cure/common/rng.hpp"
#include "cure/io/loaders.hpp"

namespace cure::io {

namespace {

// Centers drawn uniformly in a +-10 spread box, redrawn until every pair
// clears the separation floor.
std::vector<linalg::Vector> blob_centers(std::size_t classes, std::size_t dims,
                                         double spread, double min_separation,
                                         Rng& rng) {
  std::vector<linalg::Vector> centers;
  std::size_t attempts = 0;
  while (centers.size() < classes) {
    if (++attempts > 100000)
      throw ConfigError("gen_blobs: could not place separated centers");
    linalg::Vector c(dims);
    for (auto& x : c) x = rng.uniform(-10.0 * spread, 10.0 * spread);
    bool ok = true;
    for (const auto& other : centers) {
      double dist2 = 0.0;
      for (std::size_t j = 0; j < dims; ++j) {
        const double d = c[j] - other[j];
        dist2 += d * d;
      }
      if (std::sqrt(dist2) < min_separation * spread) {
        ok = false;
        break;
      }
    }
    if (ok) centers.push_back(std::move(c));
  }
  return centers;
}

model::Dataset draw(std::size_t classes, std::size_t per_class,
                    std::size_t dims, double spread,
                    const std::vector<linalg::Vector>& centers, Rng& rng,
                    const std::string& name) {
  model::Dataset out;
  out.features = linalg::Matrix(classes * per_class, dims);
  out.labels.resize(classes * per_class);
  std::size_t row = 0;
  for (std::size_t k = 0; k < classes; ++k) {
    for (std::size_t i = 0; i < per_class; ++i, ++row) {
      for (std::size_t j = 0; j < dims; ++j)
        out.features(row, j) = centers[k][j] + spread * rng.normal();
      out.labels[row] = static_cast<int>(k);
    }
  }
  out.class_count = classes;
  out.name = name;
  out.validate();
  return out;
}

}  // namespace

model::Dataset gen_blobs(std::size_t classes, std::size_t per_class,
                         std::size_t dims, double spread, std::uint64_t seed,
                         double min_separation) {
  if (classes < 2 || per_class == 0 || dims == 0 || !(spread > 0.0) ||
      !(min_separation > 0.0))
    throw ConfigError("gen_blobs: invalid parameters");
  Rng rng(Rng::derive(seed, "blobs"));
  const auto centers = blob_centers(classes, dims, spread, min_separation, rng);
  Rng draw_rng(Rng::derive(seed, "blobs-train"));
  return draw(classes, per_class, dims, spread, centers, draw_rng, "blobs");
}

model::Dataset gen_blobs_test(std::size_t classes, std::size_t per_class,
                              std::size_t dims, double spread,
                              std::uint64_t seed, double min_separation) {
  if (classes < 2 || per_class == 0 || dims == 0 || !(spread > 0.0) ||
      !(min_separation > 0.0))
    throw ConfigError("gen_blobs_test: invalid parameters");
  Rng rng(Rng::derive(seed, "blobs"));
  const auto centers = blob_centers(classes, dims, spread, min_separation, rng);
  Rng draw_rng(Rng::derive(seed, "blobs-test"));
  return draw(classes, per_class, dims, spread, centers, draw_rng, "blobs-test");
}

model::Dataset subsample(const model::Dataset& data, std::size_t count,
                         std::uint64_t seed) {
  if (count == 0 || count >= data.size()) return data;
  Rng rng(Rng::derive(seed, "subsample"));
  auto order = rng.permutation(data.size());
  order.resize(count);
  std::sort(order.begin(), order.end());

  model::Dataset out;
  out.features = linalg::Matrix(count, data.feature_dim());
  out.class_count = data.class_count;
  out.name = data.name;
  if (!data.labels.empty()) out.labels.resize(count);
  if (!data.targets.empty()) out.targets.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    for (std::size_t j = 0; j < data.feature_dim(); ++j)
      out.features(i, j) = data.features(order[i], j);
    if (!data.labels.empty()) out.labels[i] = data.labels[order[i]];
    if (!data.targets.empty()) out.targets[i] = data.targets[order[i]];
  }
  return out;
}

void flip_labels(model::Dataset& data, double fraction, std::uint64_t seed) {
  if (data.is_regression())
    throw ConfigError("flip_labels: classification datasets only");
  if (fraction <= 0.0) return;
  Rng rng(Rng::derive(seed, "label-noise"));
  const std::size_t n = data.size();
  const std::size_t k = static_cast<std::size_t>(fraction * static_cast<double>(n));
  const auto order = rng.permutation(n);
  for (std::size_t i = 0; i < std::min(k, n); ++i) {
    const std::size_t idx = order[i];
    const int offset =
        1 + static_cast<int>(rng.uniform_int(data.class_count - 1));
    data.labels[idx] =
        (data.labels[idx] + offset) % static_cast<int>(data.class_count);
  }
}

}  // namespace cure::io
