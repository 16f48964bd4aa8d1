#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "cure/common/error.hpp"
#include "cure/harness/experiment.hpp"
#include "cure/io/results.hpp"

namespace harness = cure::harness;
namespace model = cure::model;

namespace {

harness::ExperimentConfig small_config() {
  harness::ExperimentConfig cfg;
  cfg.dataset.kind = "blobs";
  cfg.dataset.classes = 3;
  cfg.dataset.per_class = 30;
  cfg.dataset.dims = 2;
  cfg.dataset.spread = 1.0;
  cfg.dataset.seed = 9;
  cfg.dataset.per_class_test = 10;
  cfg.spec = {model::ModelKind::logistic_regression, 2, 3};
  cfg.spec.l2_coeff = 0.05;
  cfg.train.learning_rate = 0.05;
  cfg.train.weight_decay = 0.0;
  cfg.train.lr_decay_rate = 1.0;
  cfg.train.lr_decay_every_steps = 0;
  cfg.train.batch_size = 32;
  cfg.train.epochs = 40;
  cfg.erasure.mode = harness::ErasureMode::selective_fraction;
  cfg.erasure.fraction = 0.2;
  cfg.seeds = {5, 1, 2};
  return cfg;
}

harness::MethodConfig method(const std::string& name) {
  harness::MethodConfig m;
  m.name = name;
  return m;
}

const harness::Record& find_record(const harness::ExperimentResults& results,
                                   std::uint64_t seed, const std::string& name,
                                   int round = 0) {
  for (const auto& r : results.records)
    if (r.seed == seed && r.method == name && r.round == round) return r;
  throw std::runtime_error("record not found");
}

}  // namespace

TEST_CASE("retraining-only batch run is its own reference") {
  auto cfg = small_config();
  cfg.methods = {method("retraining")};
  const auto results = harness::run_batch(cfg);
  REQUIRE(results.records.size() == 3);
  for (const auto& rec : results.records) {
    REQUIRE(rec.error.empty());
    CHECK(*rec.metrics.js_div == 0.0);
  }
}

TEST_CASE("batch runs are bit-reproducible and method order does not matter") {
  auto cfg = small_config();
  cfg.methods = {method("original"), method("retraining"), method("gd"),
                 method("cure-newton")};
  cfg.methods[3].cure.lipschitz_L = 1.0;

  const auto a = harness::run_batch(cfg);
  const auto b = harness::run_batch(cfg);
  CHECK(cure::io::results_to_comparable_json(a) ==
        cure::io::results_to_comparable_json(b));

  // Permute the method list; per-method metrics must not change.
  auto cfg2 = cfg;
  std::reverse(cfg2.methods.begin(), cfg2.methods.end());
  const auto c = harness::run_batch(cfg2);
  for (const auto& name :
       {"original", "retraining", "gd", "cure-newton"}) {
    for (const std::uint64_t seed : cfg.seeds) {
      const auto& ra = find_record(a, seed, name);
      const auto& rc = find_record(c, seed, name);
      CHECK(ra.metrics.update_norm == rc.metrics.update_norm);
      CHECK(*ra.metrics.acc_retained == *rc.metrics.acc_retained);
      CHECK(*ra.metrics.acc_erased == *rc.metrics.acc_erased);
      CHECK(*ra.metrics.js_div == *rc.metrics.js_div);
    }
  }
}

TEST_CASE("method failures are recorded without aborting the others") {
  auto cfg = small_config();
  // A singular Hessian instance: overparameterized MLP with zero ridge makes
  // plain newton fail while the rest keep going.
  cfg.spec = {model::ModelKind::mlp, 2, 3, 30};
  cfg.spec.l2_coeff = 0.0;
  cfg.train.epochs = 150;
  cfg.seeds = {5};
  cfg.methods = {method("newton"), method("original")};
  const auto results = harness::run_batch(cfg);
  REQUIRE(results.records.size() == 2);
  const auto& newton = find_record(results, 5, "newton");
  CHECK(!newton.error.empty());
  CHECK(newton.error.find("not_positive_definite") != std::string::npos);
  const auto& original = find_record(results, 5, "original");
  CHECK(original.error.empty());
}

TEST_CASE("sequential class unlearning: bookkeeping and final-round erasure") {
  auto cfg = small_config();
  // A hidden layer keeps the vacated class-0 region from being re-claimed by
  // linear extrapolation, so the retrained reference really hits zero there.
  cfg.spec = {model::ModelKind::mlp, 2, 3, 8};
  cfg.spec.l2_coeff = 0.05;
  cfg.train.epochs = 150;
  cfg.erasure.mode = harness::ErasureMode::class_id;
  cfg.erasure.class_id = 0;
  cfg.rounds = 3;
  cfg.seeds = {5};
  cfg.methods = {method("retraining"), method("cure-newton")};
  cfg.methods[1].cure.lipschitz_L = 0.5;

  const auto results = harness::run_sequential(cfg);
  REQUIRE(results.records.size() == 6);

  // Cumulative erased counts strictly increase and end at the class size.
  std::vector<std::size_t> cums;
  for (const auto& rec : results.records)
    if (rec.method == "retraining") cums.push_back(rec.cumulative_erased);
  REQUIRE(cums.size() == 3);
  CHECK(cums[0] < cums[1]);
  CHECK(cums[1] < cums[2]);
  CHECK(cums[2] == 30);

  // Retraining reference hits zero accuracy on the erased class at the end.
  const auto& last = find_record(results, 5, "retraining", 2);
  REQUIRE(last.error.empty());
  CHECK(*last.metrics.acc_erased == 0.0);

  // Alpha is recorded for the trust-region method each round.
  for (int round = 0; round < 3; ++round) {
    const auto& rec = find_record(results, 5, "cure-newton", round);
    REQUIRE(rec.error.empty());
    CHECK(rec.metrics.alpha.has_value());
    CHECK(*rec.metrics.alpha > 0.0);
  }
}

TEST_CASE("a one-round sequential run equals the batch run") {
  auto cfg = small_config();
  cfg.methods = {method("retraining"), method("gd")};
  cfg.rounds = 1;
  const auto batch = harness::run_batch(cfg);
  const auto seq = harness::run_sequential(cfg);
  CHECK(cure::io::results_to_comparable_json(batch) ==
        cure::io::results_to_comparable_json(seq));
}

TEST_CASE("instance-level sequential rounds draw disjoint chunks") {
  auto cfg = small_config();
  cfg.rounds = 3;
  cfg.per_round_fraction = 0.1;
  cfg.seeds = {5};
  cfg.methods = {method("gd")};
  const auto results = harness::run_sequential(cfg);
  std::vector<std::size_t> cums;
  for (const auto& rec : results.records) cums.push_back(rec.cumulative_erased);
  REQUIRE(cums.size() == 3);
  CHECK(cums[0] == 9);
  CHECK(cums[1] == 18);
  CHECK(cums[2] == 27);
}

TEST_CASE("explicit erasure with multiple rounds is rejected") {
  auto cfg = small_config();
  cfg.erasure.mode = harness::ErasureMode::explicit_indices;
  cfg.erasure.indices = {0, 1, 2};
  cfg.rounds = 2;
  cfg.methods = {method("gd")};
  CHECK_THROWS_AS(harness::run_sequential(cfg), cure::ConfigError);
}

TEST_CASE("runtime measurement produces one row per method") {
  auto cfg = small_config();
  cfg.seeds = {5, 1};
  cfg.methods = {method("retraining"), method("gd")};
  const auto rows = harness::measure_runtime(cfg);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].method == "retraining");
  CHECK(rows[0].mean_seconds > 0.0);
  CHECK(rows[0].std_seconds >= 0.0);
  CHECK(rows[1].method == "gd");
}

TEST_CASE("unknown methods are rejected with the registered list") {
  auto cfg = small_config();
  cfg.methods = {method("nonsense")};
  try {
    harness::run_batch(cfg);
    CHECK(false);
  } catch (const cure::ConfigError& e) {
    CHECK(std::string(e.what()).find("registered methods") != std::string::npos);
    CHECK(std::string(e.what()).find("cure-newton") != std::string::npos);
  }
}

TEST_CASE("aggregates are recomputable from the records") {
  auto cfg = small_config();
  cfg.methods = {method("retraining"), method("gd")};
  const auto results = harness::run_batch(cfg);
  const auto again = harness::aggregate(results.config, results.records);
  REQUIRE(again.size() == results.aggregates.size());
  for (std::size_t i = 0; i < again.size(); ++i) {
    CHECK(again[i].method == results.aggregates[i].method);
    CHECK(*again[i].acc_retained_mean ==
          doctest::Approx(*results.aggregates[i].acc_retained_mean)
              .epsilon(1e-12));
    CHECK(again[i].update_norm_mean ==
          doctest::Approx(results.aggregates[i].update_norm_mean).epsilon(1e-12));
  }
}
