#pragma once

#include <string>

#include "cure/harness/experiment.hpp"

namespace cure::io {

// Experiment configuration document (JSON; schema in docs/config_schema.md).
harness::ExperimentConfig config_from_json(const std::string& text);
harness::ExperimentConfig read_config(const std::string& path);
std::string config_to_json(const harness::ExperimentConfig& config);

}  // namespace cure::io
