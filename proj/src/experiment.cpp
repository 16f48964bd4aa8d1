#include "cure/harness/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "cure/common/error.hpp"
#include "cure/common/rng.hpp"
#include "cure/io/loaders.hpp"

namespace cure::harness {

using model::ParamVector;

const std::vector<std::string>& registered_methods() {
  static const std::vector<std::string> methods = {
      "original",      "retraining",   "random-labels", "gd",
      "ga",            "newton",       "pinv-newton",   "damped-newton",
      "cure-newton",   "scure-newton"};
  return methods;
}

void ExperimentConfig::validate() const {
  spec.validate();
  if (rounds < 1) throw ConfigError("experiment: rounds must be >= 1");
  if (seeds.empty()) throw ConfigError("experiment: need at least one seed");
  if (methods.empty()) throw ConfigError("experiment: need at least one method");
  const auto& known = registered_methods();
  for (const auto& m : methods) {
    if (std::find(known.begin(), known.end(), m.name) == known.end()) {
      std::string list;
      for (const auto& k : known) list += (list.empty() ? "" : ", ") + k;
      throw ConfigError("experiment: unknown method '" + m.name +
                        "'; registered methods: " + list);
    }
  }
  if (erasure.mode == ErasureMode::selective_fraction &&
      !(erasure.fraction > 0.0 && erasure.fraction <= 1.0))
    throw ConfigError("experiment: erasure fraction must be in (0, 1]");
  if (erasure.mode == ErasureMode::explicit_indices && rounds > 1)
    throw ConfigError("experiment: explicit erasure supports a single round");
  if (rounds > 1 && erasure.mode == ErasureMode::selective_fraction &&
      !(per_round_fraction > 0.0 && per_round_fraction * rounds <= 1.0))
    throw ConfigError("experiment: per_round_fraction * rounds must stay <= 1");
}

LoadedData load_dataset(const DatasetConfig& config) {
  LoadedData out;
  if (config.kind == "blobs") {
    out.train = io::gen_blobs(config.classes, config.per_class, config.dims,
                              config.spread, config.seed, config.min_separation);
    out.test = io::gen_blobs_test(config.classes, config.per_class_test,
                                  config.dims, config.spread, config.seed,
                                  config.min_separation);
    if (config.label_noise > 0.0)
      io::flip_labels(out.train, config.label_noise, config.seed);
  } else if (config.kind == "idx") {
    out.train = io::load_idx(config.images, config.labels);
    out.test = io::load_idx(config.test_images, config.test_labels);
    out.train = io::subsample(out.train, config.subsample_train, config.seed);
    out.test = io::subsample(out.test, config.subsample_test, config.seed + 1);
  } else if (config.kind == "csv") {
    out.train = io::load_csv(config.path, config.label_column, config.has_header);
    if (!config.test_path.empty()) {
      out.test = io::load_csv(config.test_path, config.label_column,
                              config.has_header);
    } else {
      out.test = out.train;  // no held-out set provided
    }
  } else {
    throw ConfigError("dataset: unknown kind '" + config.kind + "'");
  }
  if (config.standardize) {
    out.train.standardize_features();
    out.test.standardize_features();
  }
  out.train.validate();
  out.test.validate();
  return out;
}

namespace {

std::vector<std::size_t> build_erasure(const ErasureConfig& erasure,
                                       const model::Dataset& data,
                                       std::uint64_t seed) {
  switch (erasure.mode) {
    case ErasureMode::selective_fraction: {
      const std::size_t count = static_cast<std::size_t>(
          erasure.fraction * static_cast<double>(data.size()));
      Rng rng(Rng::derive(seed, "erasure:0"));
      auto order = rng.permutation(data.size());
      order.resize(count);
      return order;
    }
    case ErasureMode::class_id:
      return data.indices_of_class(erasure.class_id);
    case ErasureMode::explicit_indices:
      return erasure.indices;
  }
  throw ConfigError("erasure: unknown mode");
}

std::uint64_t method_seed(std::uint64_t run_seed, const MethodConfig& m) {
  // Stable per method name, independent of list order.
  return Rng::derive(run_seed, "method:" + m.name);
}

ParamVector run_method(const MethodConfig& m, const ParamVector& w_current,
                       const model::DatasetSplit& split,
                       const unlearn::Problem& problem,
                       const model::TrainConfig& train_config,
                       std::uint64_t run_seed, eval::MetricsReport* report) {
  const std::uint64_t seed = method_seed(run_seed, m);
  unlearn::UnlearnResult result;
  if (m.name == "original") {
    result.w_unlearned = w_current;
    result.method = "original";
  } else if (m.name == "retraining") {
    model::TrainConfig tc = train_config;
    tc.seed = run_seed;
    result = unlearn::retrain_unlearn(split, problem, tc, w_current);
  } else if (m.name == "newton") {
    result = unlearn::newton_unlearn(w_current, split, problem);
  } else if (m.name == "pinv-newton") {
    result = unlearn::pinv_newton_unlearn(w_current, split, problem, m.rank_tol);
  } else if (m.name == "damped-newton") {
    result = unlearn::damped_newton_unlearn(w_current, split, problem, m.gamma);
  } else if (m.name == "cure-newton") {
    result = unlearn::cure_newton_unlearn(w_current, split, problem, m.cure);
  } else if (m.name == "scure-newton") {
    unlearn::SCureNewtonConfig cfg = m.scure;
    cfg.seed = seed;
    cfg.grad_batch = std::min(cfg.grad_batch, split.n_r());
    cfg.hess_batch = std::min(cfg.hess_batch, split.n_r());
    result = unlearn::scure_newton_unlearn(w_current, split, problem, cfg);
  } else if (m.name == "gd") {
    unlearn::FirstOrderConfig cfg = m.first_order;
    cfg.seed = seed;
    result = unlearn::gd_unlearn(w_current, split, problem, cfg);
  } else if (m.name == "ga") {
    unlearn::FirstOrderConfig cfg = m.first_order;
    cfg.seed = seed;
    result = unlearn::ga_unlearn(w_current, split, problem, cfg);
  } else if (m.name == "random-labels") {
    unlearn::FirstOrderConfig cfg = m.first_order;
    cfg.seed = seed;
    result = unlearn::random_labels_unlearn(w_current, split, problem, cfg);
  } else {
    throw ConfigError("unknown method: " + m.name);
  }

  if (report) {
    report->update_norm = result.update_norm;
    report->wall_time_seconds = result.wall_time_seconds;
    if (!result.alpha_trace.empty()) report->alpha = result.alpha_trace.back();
  }
  return std::move(result.w_unlearned);
}

// Test rows used by the MIA: restricted to the erased class in class mode so
// the two loss populations come from the same distribution.
std::vector<std::size_t> mia_test_subset(const ErasureConfig& erasure,
                                         const model::Dataset& test) {
  if (erasure.mode == ErasureMode::class_id)
    return test.indices_of_class(erasure.class_id);
  return test.all_indices();
}

void evaluate_into(const ExperimentConfig& config, const LoadedData& data,
                   const model::DatasetSplit& split, const ParamVector& w_method,
                   const ParamVector& w_ref, std::uint64_t run_seed,
                   eval::MetricsReport* report) {
  const auto& spec = config.spec;
  if (!split.erased.empty()) {
    report->acc_erased =
        eval::accuracy(spec, w_method, data.train, split.erased);
    report->js_div = eval::js_divergence(spec, w_method, w_ref, data.train,
                                         split.erased);
  }
  report->acc_retained =
      eval::accuracy(spec, w_method, data.train, split.retained);
  report->acc_test =
      eval::accuracy(spec, w_method, data.test, data.test.all_indices());
  if (config.evaluate_mia && !split.erased.empty()) {
    const auto test_subset = mia_test_subset(config.erasure, data.test);
    if (split.erased.size() >= config.mia_folds &&
        test_subset.size() >= config.mia_folds) {
      report->mia_acc = eval::mia_accuracy(
          spec, w_method, data.train, split.erased, data.test, test_subset,
          config.mia_folds, Rng::derive(run_seed, "mia"));
    }
  }
}

double mean_of(const std::vector<double>& xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return xs.empty() ? 0.0 : acc / static_cast<double>(xs.size());
}

double std_of(const std::vector<double>& xs, double mean) {
  if (xs.empty()) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(xs.size()));
}

}  // namespace

std::vector<AggregateRow> aggregate(const ExperimentConfig& config,
                                    const std::vector<Record>& records) {
  std::vector<AggregateRow> rows;
  for (std::size_t r = 0; r < config.rounds; ++r) {
    for (const auto& m : config.methods) {
      AggregateRow row;
      row.method = m.name;
      row.round = static_cast<int>(r);
      std::vector<double> acc_e, acc_r, acc_t, js, norm, mia, alpha, wall;
      for (const auto& rec : records) {
        if (rec.method != m.name || rec.round != static_cast<int>(r) ||
            !rec.error.empty())
          continue;
        if (rec.metrics.acc_erased) acc_e.push_back(*rec.metrics.acc_erased);
        if (rec.metrics.acc_retained) acc_r.push_back(*rec.metrics.acc_retained);
        if (rec.metrics.acc_test) acc_t.push_back(*rec.metrics.acc_test);
        if (rec.metrics.js_div) js.push_back(*rec.metrics.js_div);
        if (rec.metrics.mia_acc) mia.push_back(*rec.metrics.mia_acc);
        if (rec.metrics.alpha) alpha.push_back(*rec.metrics.alpha);
        norm.push_back(rec.metrics.update_norm);
        wall.push_back(rec.metrics.wall_time_seconds);
      }
      row.runs = norm.size();
      auto fill = [](const std::vector<double>& xs,
                     std::optional<double>& mean_out,
                     std::optional<double>& std_out) {
        if (xs.empty()) return;
        const double m = mean_of(xs);
        mean_out = m;
        std_out = std_of(xs, m);
      };
      fill(acc_e, row.acc_erased_mean, row.acc_erased_std);
      fill(acc_r, row.acc_retained_mean, row.acc_retained_std);
      fill(acc_t, row.acc_test_mean, row.acc_test_std);
      fill(js, row.js_div_mean, row.js_div_std);
      fill(mia, row.mia_mean, row.mia_std);
      fill(alpha, row.alpha_mean, row.alpha_std);
      row.update_norm_mean = mean_of(norm);
      row.update_norm_std = std_of(norm, row.update_norm_mean);
      row.wall_time_mean = mean_of(wall);
      row.wall_time_std = std_of(wall, row.wall_time_mean);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

ExperimentResults run_batch(const ExperimentConfig& config) {
  ExperimentConfig cfg = config;
  cfg.rounds = 1;
  return run_sequential(cfg);
}

ExperimentResults run_sequential(const ExperimentConfig& config) {
  config.validate();
  const LoadedData data = load_dataset(config.dataset);
  const unlearn::Problem problem{config.spec, data.train,
                                 config.hessian_dim_cap};

  ExperimentResults results;
  results.config = config;

  for (const std::uint64_t run_seed : config.seeds) {
    model::TrainConfig tc = config.train;
    tc.seed = run_seed;
    const ParamVector w_star =
        model::train(config.spec, data.train, data.train.all_indices(), tc);

    // Per-round erased chunks.
    std::vector<std::vector<std::size_t>> chunks;
    if (config.rounds == 1) {
      chunks.push_back(build_erasure(config.erasure, data.train, run_seed));
    } else if (config.erasure.mode == ErasureMode::class_id) {
      auto target = data.train.indices_of_class(config.erasure.class_id);
      if (target.size() < config.rounds)
        throw ConfigError("sequential: class smaller than round count");
      Rng rng(Rng::derive(run_seed, "class-rounds"));
      const auto order = rng.permutation(target.size());
      chunks.assign(config.rounds, {});
      for (std::size_t i = 0; i < target.size(); ++i)
        chunks[i * config.rounds / target.size()].push_back(target[order[i]]);
    } else {
      // Instance-level: a fresh draw from the remaining pool each round.
      const std::size_t per_round = static_cast<std::size_t>(
          config.per_round_fraction * static_cast<double>(data.train.size()));
      if (per_round == 0)
        throw ConfigError("sequential: per_round_fraction too small");
      std::vector<bool> taken(data.train.size(), false);
      for (std::size_t r = 0; r < config.rounds; ++r) {
        std::vector<std::size_t> pool;
        for (std::size_t i = 0; i < data.train.size(); ++i)
          if (!taken[i]) pool.push_back(i);
        Rng rng(Rng::derive(run_seed, "erasure:" + std::to_string(r)));
        auto chunk = rng.sample_without_replacement(pool, per_round);
        for (std::size_t idx : chunk) taken[idx] = true;
        chunks.push_back(std::move(chunk));
      }
    }

    // Per-method evolving parameters.
    std::vector<ParamVector> states(config.methods.size(), w_star);

    std::vector<std::size_t> cumulative;
    for (std::size_t r = 0; r < config.rounds; ++r) {
      cumulative.insert(cumulative.end(), chunks[r].begin(), chunks[r].end());
      const model::DatasetSplit round_split = model::split(data.train, cumulative);

      model::TrainConfig ref_cfg = config.train;
      ref_cfg.seed = run_seed;
      const ParamVector w_ref = model::train(config.spec, data.train,
                                             round_split.retained, ref_cfg);

      for (std::size_t mi = 0; mi < config.methods.size(); ++mi) {
        const auto& m = config.methods[mi];
        Record rec;
        rec.seed = run_seed;
        rec.method = m.name;
        rec.round = static_cast<int>(r);
        rec.cumulative_erased = round_split.n_e();
        rec.metrics.method = m.name;
        rec.metrics.round = static_cast<int>(r);
        try {
          states[mi] = run_method(m, states[mi], round_split, problem,
                                  config.train, run_seed, &rec.metrics);
          evaluate_into(config, data, round_split, states[mi], w_ref, run_seed,
                        &rec.metrics);
        } catch (const Error& e) {
          rec.error = std::string(e.category()) + ": " + e.what();
        }
        results.records.push_back(std::move(rec));
      }
    }
  }

  results.aggregates = aggregate(results.config, results.records);
  return results;
}

std::vector<RuntimeRow> measure_runtime(const ExperimentConfig& config) {
  const ExperimentResults results = run_batch(config);
  std::vector<RuntimeRow> rows;
  for (const auto& m : config.methods) {
    std::vector<double> times;
    for (const auto& rec : results.records)
      if (rec.method == m.name && rec.error.empty())
        times.push_back(rec.metrics.wall_time_seconds);
    RuntimeRow row;
    row.method = m.name;
    row.mean_seconds = mean_of(times);
    row.std_seconds = std_of(times, row.mean_seconds);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace cure::harness
