#include "cure/io/config.hpp"

#include <fstream>

#include <json.hpp>

#include "cure/common/error.hpp"

namespace cure::io {

using nlohmann::ordered_json;

namespace {

template <typename T>
void maybe(const ordered_json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

harness::DatasetConfig dataset_from(const ordered_json& j) {
  harness::DatasetConfig d;
  maybe(j, "kind", d.kind);
  maybe(j, "classes", d.classes);
  maybe(j, "per_class", d.per_class);
  maybe(j, "dims", d.dims);
  maybe(j, "spread", d.spread);
  maybe(j, "min_separation", d.min_separation);
  maybe(j, "seed", d.seed);
  maybe(j, "per_class_test", d.per_class_test);
  maybe(j, "label_noise", d.label_noise);
  maybe(j, "images", d.images);
  maybe(j, "labels", d.labels);
  maybe(j, "test_images", d.test_images);
  maybe(j, "test_labels", d.test_labels);
  maybe(j, "subsample_train", d.subsample_train);
  maybe(j, "subsample_test", d.subsample_test);
  maybe(j, "path", d.path);
  maybe(j, "test_path", d.test_path);
  maybe(j, "label_column", d.label_column);
  maybe(j, "has_header", d.has_header);
  maybe(j, "standardize", d.standardize);
  return d;
}

ordered_json dataset_to(const harness::DatasetConfig& d) {
  ordered_json j;
  j["kind"] = d.kind;
  if (d.kind == "blobs") {
    j["classes"] = d.classes;
    j["per_class"] = d.per_class;
    j["dims"] = d.dims;
    j["spread"] = d.spread;
    j["min_separation"] = d.min_separation;
    j["seed"] = d.seed;
    j["per_class_test"] = d.per_class_test;
    j["label_noise"] = d.label_noise;
  } else if (d.kind == "idx") {
    j["images"] = d.images;
    j["labels"] = d.labels;
    j["test_images"] = d.test_images;
    j["test_labels"] = d.test_labels;
    j["subsample_train"] = d.subsample_train;
    j["subsample_test"] = d.subsample_test;
    j["seed"] = d.seed;
  } else {
    j["path"] = d.path;
    j["test_path"] = d.test_path;
    j["label_column"] = d.label_column;
    j["has_header"] = d.has_header;
  }
  j["standardize"] = d.standardize;
  return j;
}

model::ModelSpec spec_from(const ordered_json& j) {
  model::ModelSpec s;
  if (j.contains("kind")) s.kind = model::model_kind_from_string(j.at("kind"));
  maybe(j, "input_dim", s.input_dim);
  maybe(j, "class_count", s.class_count);
  maybe(j, "hidden_units", s.hidden_units);
  if (j.contains("activation"))
    s.activation = model::activation_from_string(j.at("activation"));
  maybe(j, "l2_coeff", s.l2_coeff);
  return s;
}

ordered_json spec_to(const model::ModelSpec& s) {
  ordered_json j;
  j["kind"] = model::to_string(s.kind);
  j["input_dim"] = s.input_dim;
  j["class_count"] = s.class_count;
  j["hidden_units"] = s.hidden_units;
  j["activation"] = model::to_string(s.activation);
  j["l2_coeff"] = s.l2_coeff;
  return j;
}

model::TrainConfig train_from(const ordered_json& j) {
  model::TrainConfig t;
  if (j.contains("optimizer"))
    t.optimizer = model::optimizer_from_string(j.at("optimizer"));
  maybe(j, "learning_rate", t.learning_rate);
  maybe(j, "lr_decay_rate", t.lr_decay_rate);
  maybe(j, "lr_decay_every_steps", t.lr_decay_every_steps);
  maybe(j, "weight_decay", t.weight_decay);
  maybe(j, "batch_size", t.batch_size);
  maybe(j, "epochs", t.epochs);
  return t;
}

ordered_json train_to(const model::TrainConfig& t) {
  ordered_json j;
  j["optimizer"] = model::to_string(t.optimizer);
  j["learning_rate"] = t.learning_rate;
  j["lr_decay_rate"] = t.lr_decay_rate;
  j["lr_decay_every_steps"] = t.lr_decay_every_steps;
  j["weight_decay"] = t.weight_decay;
  j["batch_size"] = t.batch_size;
  j["epochs"] = t.epochs;
  return j;
}

harness::ErasureConfig erasure_from(const ordered_json& j) {
  harness::ErasureConfig e;
  const std::string mode = j.value("mode", "selective");
  if (mode == "selective") {
    e.mode = harness::ErasureMode::selective_fraction;
    maybe(j, "fraction", e.fraction);
  } else if (mode == "class") {
    e.mode = harness::ErasureMode::class_id;
    maybe(j, "class_id", e.class_id);
  } else if (mode == "explicit") {
    e.mode = harness::ErasureMode::explicit_indices;
    maybe(j, "indices", e.indices);
  } else {
    throw ConfigError("erasure: unknown mode '" + mode + "'");
  }
  return e;
}

ordered_json erasure_to(const harness::ErasureConfig& e) {
  ordered_json j;
  switch (e.mode) {
    case harness::ErasureMode::selective_fraction:
      j["mode"] = "selective";
      j["fraction"] = e.fraction;
      break;
    case harness::ErasureMode::class_id:
      j["mode"] = "class";
      j["class_id"] = e.class_id;
      break;
    case harness::ErasureMode::explicit_indices:
      j["mode"] = "explicit";
      j["indices"] = e.indices;
      break;
  }
  return j;
}

harness::MethodConfig method_from(const ordered_json& j) {
  harness::MethodConfig m;
  if (j.is_string()) {
    m.name = j.get<std::string>();
    return m;
  }
  m.name = j.at("name").get<std::string>();
  maybe(j, "lipschitz_L", m.cure.lipschitz_L);
  maybe(j, "tol_eps", m.cure.tol_eps);
  maybe(j, "max_newton_iters", m.cure.max_newton_iters);
  maybe(j, "lipschitz_M", m.scure.lipschitz_M);
  maybe(j, "sigma", m.scure.sigma);
  maybe(j, "eta", m.scure.eta);
  maybe(j, "k_outer", m.scure.k_outer);
  maybe(j, "k_inner", m.scure.k_inner);
  maybe(j, "grad_batch", m.scure.grad_batch);
  maybe(j, "hess_batch", m.scure.hess_batch);
  maybe(j, "epochs", m.first_order.epochs);
  maybe(j, "learning_rate", m.first_order.learning_rate);
  maybe(j, "batch_size", m.first_order.batch_size);
  maybe(j, "rank_tol", m.rank_tol);
  maybe(j, "gamma", m.gamma);
  return m;
}

ordered_json method_to(const harness::MethodConfig& m) {
  ordered_json j;
  j["name"] = m.name;
  if (m.name == "cure-newton") {
    j["lipschitz_L"] = m.cure.lipschitz_L;
    j["tol_eps"] = m.cure.tol_eps;
    j["max_newton_iters"] = m.cure.max_newton_iters;
  } else if (m.name == "scure-newton") {
    j["lipschitz_M"] = m.scure.lipschitz_M;
    j["sigma"] = m.scure.sigma;
    j["eta"] = m.scure.eta;
    j["k_outer"] = m.scure.k_outer;
    j["k_inner"] = m.scure.k_inner;
    j["grad_batch"] = m.scure.grad_batch;
    j["hess_batch"] = m.scure.hess_batch;
  } else if (m.name == "pinv-newton") {
    j["rank_tol"] = m.rank_tol;
  } else if (m.name == "damped-newton") {
    j["gamma"] = m.gamma;
  } else if (m.name == "gd" || m.name == "ga" || m.name == "random-labels") {
    j["epochs"] = m.first_order.epochs;
    j["learning_rate"] = m.first_order.learning_rate;
    j["batch_size"] = m.first_order.batch_size;
  }
  return j;
}

}  // namespace

harness::ExperimentConfig config_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  harness::ExperimentConfig c;
  try {
    if (j.contains("dataset")) c.dataset = dataset_from(j.at("dataset"));
    if (j.contains("model")) c.spec = spec_from(j.at("model"));
    if (j.contains("train")) c.train = train_from(j.at("train"));
    if (j.contains("erasure")) c.erasure = erasure_from(j.at("erasure"));
    if (j.contains("methods"))
      for (const auto& m : j.at("methods")) c.methods.push_back(method_from(m));
    maybe(j, "rounds", c.rounds);
    maybe(j, "per_round_fraction", c.per_round_fraction);
    maybe(j, "seeds", c.seeds);
    maybe(j, "evaluate_mia", c.evaluate_mia);
    maybe(j, "mia_folds", c.mia_folds);
    maybe(j, "hessian_dim_cap", c.hessian_dim_cap);
    maybe(j, "output", c.output_path);
  } catch (const ordered_json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

harness::ExperimentConfig read_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open " + path);
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return config_from_json(text);
}

std::string config_to_json(const harness::ExperimentConfig& c) {
  ordered_json j;
  j["dataset"] = dataset_to(c.dataset);
  j["model"] = spec_to(c.spec);
  j["train"] = train_to(c.train);
  j["erasure"] = erasure_to(c.erasure);
  ordered_json methods = ordered_json::array();
  for (const auto& m : c.methods) methods.push_back(method_to(m));
  j["methods"] = methods;
  j["rounds"] = c.rounds;
  j["per_round_fraction"] = c.per_round_fraction;
  j["seeds"] = c.seeds;
  j["evaluate_mia"] = c.evaluate_mia;
  j["mia_folds"] = c.mia_folds;
  j["hessian_dim_cap"] = c.hessian_dim_cap;
  j["output"] = c.output_path;
  return j.dump(2);
}

}  // namespace cure::io
