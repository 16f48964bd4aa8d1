#include "cure/io/results.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "cure/common/error.hpp"
#include "cure/io/config.hpp"

namespace cure::io {

using nlohmann::ordered_json;

namespace {

ordered_json opt_to(const std::optional<double>& v) {
  if (v) return *v;
  return nullptr;
}

std::optional<double> opt_from(const ordered_json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

ordered_json record_to(const harness::Record& r) {
  ordered_json j;
  j["seed"] = r.seed;
  j["method"] = r.method;
  j["round"] = r.round;
  j["cumulative_erased"] = r.cumulative_erased;
  j["acc_erased"] = opt_to(r.metrics.acc_erased);
  j["acc_retained"] = opt_to(r.metrics.acc_retained);
  j["acc_test"] = opt_to(r.metrics.acc_test);
  j["js_div"] = opt_to(r.metrics.js_div);
  j["update_norm"] = r.metrics.update_norm;
  j["mia_acc"] = opt_to(r.metrics.mia_acc);
  j["alpha"] = opt_to(r.metrics.alpha);
  j["wall_time_seconds"] = r.metrics.wall_time_seconds;
  j["error"] = r.error;
  return j;
}

harness::Record record_from(const ordered_json& j) {
  harness::Record r;
  r.seed = j.at("seed").get<std::uint64_t>();
  r.method = j.at("method").get<std::string>();
  r.round = j.at("round").get<int>();
  r.cumulative_erased = j.at("cumulative_erased").get<std::size_t>();
  r.metrics.acc_erased = opt_from(j.at("acc_erased"));
  r.metrics.acc_retained = opt_from(j.at("acc_retained"));
  r.metrics.acc_test = opt_from(j.at("acc_test"));
  r.metrics.js_div = opt_from(j.at("js_div"));
  r.metrics.update_norm = j.at("update_norm").get<double>();
  r.metrics.mia_acc = opt_from(j.at("mia_acc"));
  r.metrics.alpha = opt_from(j.at("alpha"));
  r.metrics.wall_time_seconds = j.at("wall_time_seconds").get<double>();
  r.metrics.method = r.method;
  r.metrics.round = r.round;
  r.error = j.at("error").get<std::string>();
  return r;
}

ordered_json aggregate_to(const harness::AggregateRow& a) {
  ordered_json j;
  j["method"] = a.method;
  j["round"] = a.round;
  j["runs"] = a.runs;
  j["acc_erased_mean"] = opt_to(a.acc_erased_mean);
  j["acc_erased_std"] = opt_to(a.acc_erased_std);
  j["acc_retained_mean"] = opt_to(a.acc_retained_mean);
  j["acc_retained_std"] = opt_to(a.acc_retained_std);
  j["acc_test_mean"] = opt_to(a.acc_test_mean);
  j["acc_test_std"] = opt_to(a.acc_test_std);
  j["js_div_mean"] = opt_to(a.js_div_mean);
  j["js_div_std"] = opt_to(a.js_div_std);
  j["update_norm_mean"] = a.update_norm_mean;
  j["update_norm_std"] = a.update_norm_std;
  j["mia_mean"] = opt_to(a.mia_mean);
  j["mia_std"] = opt_to(a.mia_std);
  j["alpha_mean"] = opt_to(a.alpha_mean);
  j["alpha_std"] = opt_to(a.alpha_std);
  j["wall_time_mean"] = a.wall_time_mean;
  j["wall_time_std"] = a.wall_time_std;
  return j;
}

harness::AggregateRow aggregate_from(const ordered_json& j) {
  harness::AggregateRow a;
  a.method = j.at("method").get<std::string>();
  a.round = j.at("round").get<int>();
  a.runs = j.at("runs").get<std::size_t>();
  a.acc_erased_mean = opt_from(j.at("acc_erased_mean"));
  a.acc_erased_std = opt_from(j.at("acc_erased_std"));
  a.acc_retained_mean = opt_from(j.at("acc_retained_mean"));
  a.acc_retained_std = opt_from(j.at("acc_retained_std"));
  a.acc_test_mean = opt_from(j.at("acc_test_mean"));
  a.acc_test_std = opt_from(j.at("acc_test_std"));
  a.js_div_mean = opt_from(j.at("js_div_mean"));
  a.js_div_std = opt_from(j.at("js_div_std"));
  a.update_norm_mean = j.at("update_norm_mean").get<double>();
  a.update_norm_std = j.at("update_norm_std").get<double>();
  a.mia_mean = opt_from(j.at("mia_mean"));
  a.mia_std = opt_from(j.at("mia_std"));
  a.alpha_mean = opt_from(j.at("alpha_mean"));
  a.alpha_std = opt_from(j.at("alpha_std"));
  a.wall_time_mean = j.at("wall_time_mean").get<double>();
  a.wall_time_std = j.at("wall_time_std").get<double>();
  return a;
}

ordered_json results_to_json_obj(const harness::ExperimentResults& results) {
  ordered_json j;
  j["format_version"] = 1;
  j["config"] = ordered_json::parse(config_to_json(results.config));
  ordered_json records = ordered_json::array();
  for (const auto& r : results.records) records.push_back(record_to(r));
  j["records"] = records;
  ordered_json aggregates = ordered_json::array();
  for (const auto& a : results.aggregates) aggregates.push_back(aggregate_to(a));
  j["aggregates"] = aggregates;
  return j;
}

std::string csv_num(const std::optional<double>& v) {
  if (!v) return "";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", *v);
  return buf;
}

std::string csv_num(double v) { return csv_num(std::optional<double>(v)); }

}  // namespace

std::string results_to_json(const harness::ExperimentResults& results) {
  return results_to_json_obj(results).dump(2) + "\n";
}

harness::ExperimentResults results_from_json(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& e) {
    throw FormatError("results_parse", std::string("results: ") + e.what());
  }
  harness::ExperimentResults out;
  out.config = config_from_json(j.at("config").dump());
  for (const auto& r : j.at("records")) out.records.push_back(record_from(r));
  for (const auto& a : j.at("aggregates"))
    out.aggregates.push_back(aggregate_from(a));
  return out;
}

void write_results_json(const harness::ExperimentResults& results,
                        const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("results_write_failed", "cannot write " + path);
  out << results_to_json(results);
}

harness::ExperimentResults read_results_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("results_missing_file", "cannot open " + path);
  const std::string text{std::istreambuf_iterator<char>(in),
                         std::istreambuf_iterator<char>()};
  return results_from_json(text);
}

std::string results_to_csv(const harness::ExperimentResults& results) {
  std::string out =
      "method,round,runs,acc_erased_mean,acc_erased_std,acc_retained_mean,"
      "acc_retained_std,acc_test_mean,acc_test_std,js_div_mean,js_div_std,"
      "update_norm_mean,update_norm_std,mia_mean,mia_std,alpha_mean,alpha_std,"
      "wall_time_mean,wall_time_std\n";
  for (const auto& a : results.aggregates) {
    out += a.method + ',' + std::to_string(a.round) + ',' +
           std::to_string(a.runs) + ',';
    out += csv_num(a.acc_erased_mean) + ',' + csv_num(a.acc_erased_std) + ',';
    out += csv_num(a.acc_retained_mean) + ',' + csv_num(a.acc_retained_std) + ',';
    out += csv_num(a.acc_test_mean) + ',' + csv_num(a.acc_test_std) + ',';
    out += csv_num(a.js_div_mean) + ',' + csv_num(a.js_div_std) + ',';
    out += csv_num(a.update_norm_mean) + ',' + csv_num(a.update_norm_std) + ',';
    out += csv_num(a.mia_mean) + ',' + csv_num(a.mia_std) + ',';
    out += csv_num(a.alpha_mean) + ',' + csv_num(a.alpha_std) + ',';
    out += csv_num(a.wall_time_mean) + ',' + csv_num(a.wall_time_std) + '\n';
  }
  return out;
}

void write_results_csv(const harness::ExperimentResults& results,
                       const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw FormatError("results_write_failed", "cannot write " + path);
  out << results_to_csv(results);
}

std::string rounds_to_csv(const harness::ExperimentResults& results) {
  std::string out =
      "seed,method,round,cumulative_erased,acc_erased,acc_retained,acc_test,"
      "js_div,update_norm,mia_acc,alpha,wall_time_seconds,error\n";
  for (const auto& r : results.records) {
    out += std::to_string(r.seed) + ',' + r.method + ',' +
           std::to_string(r.round) + ',' + std::to_string(r.cumulative_erased) +
           ',';
    out += csv_num(r.metrics.acc_erased) + ',' +
           csv_num(r.metrics.acc_retained) + ',' + csv_num(r.metrics.acc_test) +
           ',' + csv_num(r.metrics.js_div) + ',' +
           csv_num(r.metrics.update_norm) + ',' + csv_num(r.metrics.mia_acc) +
           ',' + csv_num(r.metrics.alpha) + ',' +
           csv_num(r.metrics.wall_time_seconds) + ',' + r.error + '\n';
  }
  return out;
}

std::string results_to_comparable_json(const harness::ExperimentResults& results) {
  ordered_json j = results_to_json_obj(results);
  for (auto& r : j.at("records")) r["wall_time_seconds"] = 0.0;
  for (auto& a : j.at("aggregates")) {
    a["wall_time_mean"] = 0.0;
    a["wall_time_std"] = 0.0;
  }
  return j.dump(2) + "\n";
}

}  // namespace cure::io
