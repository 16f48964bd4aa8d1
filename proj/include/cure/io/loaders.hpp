#pragma once

#include <cstdint>
#include <string>

#include "cure/model/dataset.hpp"

namespace cure::io {

// IDX binary pair (big-endian magic 0x00000803 for images, 0x00000801 for
// labels, unsigned-byte payload). Pixels are scaled to [0, 1], images
// flattened row-major. Distinct failure categories: idx_bad_magic,
// idx_truncated, idx_count_mismatch.
model::Dataset load_idx(const std::string& images_path,
                        const std::string& labels_path);

// Numeric CSV with the label in the given column (0-based). With
// `has_header` the first line is skipped. Errors: csv_empty,
// csv_non_numeric, csv_ragged_row, csv_bad_label_column.
model::Dataset load_csv(const std::string& path, std::size_t label_column,
                        bool has_header);

// Seeded Gaussian clusters around centers kept at least
// min_separation * spread apart. The default keeps classes cleanly
// separable; factors below ~2 give overlapping classes.
model::Dataset gen_blobs(std::size_t classes, std::size_t per_class,
                         std::size_t dims, double spread, std::uint64_t seed,
                         double min_separation = 4.0);

// Fresh draws around the same seeded centers; use for held-out test sets.
model::Dataset gen_blobs_test(std::size_t classes, std::size_t per_class,
                              std::size_t dims, double spread,
                              std::uint64_t seed, double min_separation = 4.0);

// Writes features plus a trailing label column.
void write_csv(const model::Dataset& data, const std::string& path);

// Deterministic subsample of `count` rows (all rows if count >= n or 0).
model::Dataset subsample(const model::Dataset& data, std::size_t count,
                         std::uint64_t seed);

// Flips a fraction of labels to a different uniformly drawn class (seeded).
void flip_labels(model::Dataset& data, double fraction, std::uint64_t seed);

}  // namespace cure::io
