#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cure/eval/metrics.hpp"
#include "cure/model/dataset.hpp"
#include "cure/model/train.hpp"
#include "cure/unlearn/methods.hpp"

namespace cure::harness {

struct DatasetConfig {
  std::string kind = "blobs";  // blobs | idx | csv

  // blobs
  std::size_t classes = 3;
  std::size_t per_class = 200;
  std::size_t dims = 5;
  double spread = 1.0;
  double min_separation = 4.0;  // class-center separation in spread units
  std::uint64_t seed = 7;
  std::size_t per_class_test = 50;
  double label_noise = 0.0;  // fraction of training labels flipped (seeded)

  // idx
  std::string images, labels, test_images, test_labels;
  std::size_t subsample_train = 2000;
  std::size_t subsample_test = 1000;

  // csv
  std::string path, test_path;
  std::size_t label_column = 0;
  bool has_header = false;

  bool standardize = false;
};

struct LoadedData {
  model::Dataset train;
  model::Dataset test;
};

LoadedData load_dataset(const DatasetConfig& config);

enum class ErasureMode { selective_fraction, class_id, explicit_indices };

struct ErasureConfig {
  ErasureMode mode = ErasureMode::selective_fraction;
  double fraction = 0.1;
  int class_id = 0;
  std::vector<std::size_t> indices;
};

// One registered method plus its knobs; only the block matching `name` is
// read.
struct MethodConfig {
  std::string name;
  unlearn::CureNewtonConfig cure;
  unlearn::SCureNewtonConfig scure;
  unlearn::FirstOrderConfig first_order;
  double rank_tol = 1e-8;  // pinv-newton
  double gamma = 1e-3;     // damped-newton
};

const std::vector<std::string>& registered_methods();

struct ExperimentConfig {
  DatasetConfig dataset;
  model::ModelSpec spec;
  model::TrainConfig train;
  ErasureConfig erasure;
  std::vector<MethodConfig> methods;
  std::size_t rounds = 1;
  double per_round_fraction = 0.1;  // instance-level sequential chunk size
  std::vector<std::uint64_t> seeds = {5, 1, 2};
  bool evaluate_mia = false;
  std::size_t mia_folds = 5;
  std::size_t hessian_dim_cap = 4096;
  std::string output_path = "results";

  void validate() const;
};

// One (seed, method, round) evaluation. A method failure is recorded in
// `error` without aborting the other methods.
struct Record {
  std::uint64_t seed = 0;
  std::string method;
  int round = 0;
  std::size_t cumulative_erased = 0;
  eval::MetricsReport metrics;
  std::string error;
};

struct AggregateRow {
  std::string method;
  int round = 0;
  std::optional<double> acc_erased_mean, acc_erased_std;
  std::optional<double> acc_retained_mean, acc_retained_std;
  std::optional<double> acc_test_mean, acc_test_std;
  std::optional<double> js_div_mean, js_div_std;
  double update_norm_mean = 0.0, update_norm_std = 0.0;
  std::optional<double> mia_mean, mia_std;
  std::optional<double> alpha_mean, alpha_std;
  double wall_time_mean = 0.0, wall_time_std = 0.0;
  std::size_t runs = 0;
};

struct ExperimentResults {
  ExperimentConfig config;
  std::vector<Record> records;
  std::vector<AggregateRow> aggregates;
};

// Means and population standard deviations per (method, round) across seeds;
// failed records are skipped.
std::vector<AggregateRow> aggregate(const ExperimentConfig& config,
                                    const std::vector<Record>& records);

// Trains the original model once per seed, erases one batch, runs every
// configured method from the same starting point, and evaluates each against
// a retrained reference shared read-only within the seed.
ExperimentResults run_batch(const ExperimentConfig& config);

// Erases the target across `rounds` chunks. Methods carry their own evolving
// parameters between rounds; the reference is retrained from scratch on the
// cumulative retained set each round.
ExperimentResults run_sequential(const ExperimentConfig& config);

struct RuntimeRow {
  std::string method;
  double mean_seconds = 0.0;
  double std_seconds = 0.0;
};

// Wall-clock of the unlearning call alone (original training excluded;
// retraining appears as its own row).
std::vector<RuntimeRow> measure_runtime(const ExperimentConfig& config);

}  // namespace cure::harness
