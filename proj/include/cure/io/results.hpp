#pragma once

#include <string>

#include "cure/harness/experiment.hpp"

namespace cure::io {

// Full-fidelity JSON emission: config echo, per-(seed, method, round)
// records, aggregate rows. Write -> read -> write is byte-identical.
std::string results_to_json(const harness::ExperimentResults& results);
harness::ExperimentResults results_from_json(const std::string& text);

void write_results_json(const harness::ExperimentResults& results,
                        const std::string& path);
harness::ExperimentResults read_results_json(const std::string& path);

// Table-shaped CSV projection, one aggregate row per (method, round).
std::string results_to_csv(const harness::ExperimentResults& results);
void write_results_csv(const harness::ExperimentResults& results,
                       const std::string& path);

// Per-round per-seed series (including alpha) for external plotting.
std::string rounds_to_csv(const harness::ExperimentResults& results);

// JSON with wall-time fields zeroed; two runs of the same experiment compare
// equal on this form.
std::string results_to_comparable_json(const harness::ExperimentResults& results);

}  // namespace cure::io
