#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "cure/model/model.hpp"

namespace cure::io {

// Versioned little-endian binary parameter snapshot. Save -> load is
// bit-exact; loads refuse unknown versions and (when the caller supplies an
// expected spec) mismatched model specs.
struct Checkpoint {
  std::uint32_t format_version = 1;
  model::ModelSpec spec;
  model::ParamVector params;
  std::uint64_t seed = 0;
  std::uint64_t epochs = 0;
  double final_loss = 0.0;
  std::int64_t created_at = 0;  // unix seconds; excluded from comparisons
};

void save_checkpoint(const Checkpoint& ckpt, const std::string& path);

Checkpoint load_checkpoint(const std::string& path,
                           const std::optional<model::ModelSpec>& expected_spec =
                               std::nullopt);

}  // namespace cure::io
