#pragma once

#include <string>
#include <vector>

#include "cure/linalg/matrix.hpp"

namespace cure::model {

// Feature matrix plus labels. Classification stores integer class ids in
// `labels`; regression (class_count == 1) stores real targets in `targets`.
struct Dataset {
  linalg::Matrix features;  // n x p
  std::vector<int> labels;
  linalg::Vector targets;
  std::size_t class_count = 2;
  std::string name;

  std::size_t size() const { return features.rows(); }
  std::size_t feature_dim() const { return features.cols(); }
  bool is_regression() const { return class_count == 1; }

  // Enforces: n >= 1, finite features, labels within [0, class_count).
  void validate() const;

  // Standardizes each feature column to zero mean / unit variance in place
  // (columns with zero variance are left centered only).
  void standardize_features();

  std::vector<std::size_t> all_indices() const;
  std::vector<std::size_t> indices_of_class(int label) const;
};

// Partition of {0..n-1} into erased and retained index sets.
struct DatasetSplit {
  std::vector<std::size_t> erased;    // sorted, unique
  std::vector<std::size_t> retained;  // sorted complement

  std::size_t n() const { return erased.size() + retained.size(); }
  std::size_t n_e() const { return erased.size(); }
  std::size_t n_r() const { return retained.size(); }
};

// Validates indices (in range, no duplicates) and builds the complement.
DatasetSplit split(const Dataset& data, std::vector<std::size_t> erased_indices);

}  // namespace cure::model
