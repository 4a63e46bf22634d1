// Copyright 2026 The pairrank Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pairrank/io.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace pairrank {
namespace io {

namespace {

using OrderedJson = nlohmann::ordered_json;

constexpr char kCohortHeaderComment[] = "# pairrank-cohort-v1";
constexpr char kCohortHeader[] = "id,subject_id,true_score";
constexpr char kComparisonsHeaderComment[] = "# pairrank-comparisons-v1";
constexpr char kPairsHeaderComment[] = "# pairrank-pairs-v1";

std::string Location(const std::string& name, size_t line) {
  return name + ":" + std::to_string(line);
}

OrderedJson ParseJson(const std::string& text, const std::string& name) {
  try {
    return OrderedJson::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(name + ": " + e.what());
  }
}

void RejectUnknownKeys(const OrderedJson& object,
                       const std::vector<std::string>& known,
                       const std::string& context) {
  for (const auto& [key, value] : object.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw ParseError(context + ": unknown key \"" + key + "\"");
    }
  }
}

double RequireNumber(const OrderedJson& object, const std::string& key,
                     const std::string& context) {
  if (!object.contains(key) || !object[key].is_number()) {
    throw ParseError(context + ": missing or non-numeric \"" + key + "\"");
  }
  return object[key].get<double>();
}

}  // namespace

std::string FormatDouble(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void WriteFile(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw ParseError(path + ": cannot open file for writing");
  }
  out << content;
  if (!out) {
    throw ParseError(path + ": write failed");
  }
}

Cohort ParseCohortCsv(std::istream& in, const std::string& name) {
  Cohort cohort;
  std::string line;
  size_t line_number = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != kCohortHeader) {
        throw ParseError(Location(name, line_number) +
                         ": expected header \"" + kCohortHeader + "\"");
      }
      header_seen = true;
      continue;
    }
    const size_t first_comma = line.find(',');
    const size_t second_comma =
        first_comma == std::string::npos ? std::string::npos
                                         : line.find(',', first_comma + 1);
    if (first_comma == std::string::npos ||
        second_comma == std::string::npos ||
        line.find(',', second_comma + 1) != std::string::npos) {
      throw ParseError(Location(name, line_number) +
                       ": expected exactly 3 comma-separated fields");
    }
    Item item;
    item.id = line.substr(0, first_comma);
    item.subject_id =
        line.substr(first_comma + 1, second_comma - first_comma - 1);
    const std::string score_text = line.substr(second_comma + 1);
    if (item.id.empty() || item.subject_id.empty() || score_text.empty()) {
      throw ParseError(Location(name, line_number) + ": empty field");
    }
    const char* begin = score_text.data();
    const char* end = begin + score_text.size();
    auto [ptr, ec] = std::from_chars(begin, end, item.true_score);
    if (ec != std::errc() || ptr != end) {
      throw ParseError(Location(name, line_number) + ": invalid score \"" +
                       score_text + "\"");
    }
    cohort.items.push_back(std::move(item));
  }
  if (!header_seen) {
    throw ParseError(name + ": missing cohort header");
  }
  try {
    ValidateCohort(cohort);
  } catch (const ValidationError& e) {
    throw ParseError(name + ": " + e.what());
  }
  return cohort;
}

Cohort ReadCohortCsv(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  return ParseCohortCsv(in, path);
}

std::string CohortToCsv(const Cohort& cohort) {
  std::string out;
  out += kCohortHeaderComment;
  out += '\n';
  out += kCohortHeader;
  out += '\n';
  for (const Item& item : cohort.items) {
    out += item.id;
    out += ',';
    out += item.subject_id;
    out += ',';
    out += FormatDouble(item.true_score);
    out += '\n';
  }
  return out;
}

std::vector<ComparisonRecord> ParseComparisonsJsonl(std::istream& in,
                                                    const std::string& name) {
  std::vector<ComparisonRecord> records;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const OrderedJson object = ParseJson(line, Location(name, line_number));
    if (!object.is_object() || !object.contains("winner") ||
        !object.contains("loser") || !object["winner"].is_string() ||
        !object["loser"].is_string()) {
      throw ParseError(Location(name, line_number) +
                       ": expected {\"winner\": id, \"loser\": id}");
    }
    records.push_back(ComparisonRecord{object["winner"].get<std::string>(),
                                       object["loser"].get<std::string>()});
  }
  return records;
}

std::vector<ComparisonRecord> ReadComparisonsJsonl(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw ParseError(path + ": cannot open file");
  }
  return ParseComparisonsJsonl(in, path);
}

std::string ComparisonsToJsonl(const std::vector<ComparisonRecord>& records) {
  std::string out;
  out += kComparisonsHeaderComment;
  out += '\n';
  for (const ComparisonRecord& record : records) {
    OrderedJson object;
    object["winner"] = record.winner_id;
    object["loser"] = record.loser_id;
    out += object.dump();
    out += '\n';
  }
  return out;
}

std::vector<LabeledPair> ParsePairsJsonl(std::istream& in,
                                         const std::string& name) {
  std::vector<LabeledPair> pairs;
  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const OrderedJson object = ParseJson(line, Location(name, line_number));
    if (!object.is_object() || !object.contains("first") ||
        !object.contains("second") || !object.contains("label") ||
        !object["first"].is_string() || !object["second"].is_string() ||
        !object["label"].is_number_integer()) {
      throw ParseError(
          Location(name, line_number) +
          ": expected {\"first\": id, \"second\": id, \"label\": 0|1}");
    }
    const int label = object["label"].get<int>();
    if (label != 0 && label != 1) {
      throw ParseError(Location(name, line_number) + ": label must be 0 or 1");
    }
    pairs.push_back(LabeledPair{object["first"].get<std::string>(),
                                object["second"].get<std::string>(),
                                label == 1});
  }
  return pairs;
}

std::string PairsToJsonl(const std::vector<LabeledPair>& pairs) {
  std::string out;
  out += kPairsHeaderComment;
  out += '\n';
  for (const LabeledPair& pair : pairs) {
    OrderedJson object;
    object["first"] = pair.first_id;
    object["second"] = pair.second_id;
    object["label"] = pair.label ? 1 : 0;
    out += object.dump();
    out += '\n';
  }
  return out;
}

namespace {

ComparatorConfig ComparatorConfigFromJsonObject(const OrderedJson& object,
                                                const std::string& context) {
  if (!object.is_object()) {
    throw ParseError(context + ": comparator config must be a JSON object");
  }
  RejectUnknownKeys(object,
                    {"kind", "beta", "accuracy", "seed", "feature_dim",
                     "noise_scale", "learning_rate", "epochs"},
                    context);
  if (!object.contains("kind") || !object["kind"].is_string()) {
    throw ParseError(context + ": missing comparator \"kind\"");
  }
  ComparatorConfig config;
  try {
    config.kind = ComparatorKindFromName(object["kind"].get<std::string>());
  } catch (const ValidationError& e) {
    throw ParseError(context + ": " + e.what());
  }
  if (object.contains("beta")) {
    config.beta = RequireNumber(object, "beta", context);
  }
  if (object.contains("accuracy")) {
    config.accuracy = RequireNumber(object, "accuracy", context);
  }
  if (object.contains("seed")) {
    if (!object["seed"].is_number_unsigned() &&
        !object["seed"].is_number_integer()) {
      throw ParseError(context + ": \"seed\" must be an integer");
    }
    config.seed = object["seed"].get<uint64_t>();
  }
  if (object.contains("feature_dim")) {
    config.feature_dim =
        static_cast<size_t>(RequireNumber(object, "feature_dim", context));
  }
  if (object.contains("noise_scale")) {
    config.noise_scale = RequireNumber(object, "noise_scale", context);
  }
  if (object.contains("learning_rate")) {
    config.learning_rate = RequireNumber(object, "learning_rate", context);
  }
  if (object.contains("epochs")) {
    config.epochs = static_cast<size_t>(RequireNumber(object, "epochs", context));
  }
  try {
    config.Validate();
  } catch (const ValidationError& e) {
    throw ParseError(context + ": " + e.what());
  }
  return config;
}

OrderedJson ComparatorConfigToJsonObject(const ComparatorConfig& config) {
  OrderedJson object;
  object["kind"] = ComparatorKindName(config.kind);
  object["beta"] = config.beta;
  object["accuracy"] = config.accuracy;
  object["seed"] = config.seed;
  if (config.kind == ComparatorKind::kLogistic) {
    object["feature_dim"] = config.feature_dim;
    object["noise_scale"] = config.noise_scale;
    object["learning_rate"] = config.learning_rate;
    object["epochs"] = config.epochs;
  }
  return object;
}

FitConfig FitConfigFromJsonObject(const OrderedJson& object,
                                  const std::string& context) {
  if (!object.is_object()) {
    throw ParseError(context + ": fit config must be a JSON object");
  }
  RejectUnknownKeys(object, {"epsilon", "tolerance", "max_iterations"},
                    context);
  FitConfig config;
  config.pseudocount = 0.1;  // harness default
  if (object.contains("epsilon")) {
    config.pseudocount = RequireNumber(object, "epsilon", context);
  }
  if (object.contains("tolerance")) {
    config.tolerance = RequireNumber(object, "tolerance", context);
  }
  if (object.contains("max_iterations")) {
    config.max_iterations =
        static_cast<size_t>(RequireNumber(object, "max_iterations", context));
  }
  try {
    config.Validate();
  } catch (const ValidationError& e) {
    throw ParseError(context + ": " + e.what());
  }
  return config;
}

OrderedJson FitConfigToJsonObject(const FitConfig& config) {
  OrderedJson object;
  object["epsilon"] = config.pseudocount;
  object["tolerance"] = config.tolerance;
  object["max_iterations"] = config.max_iterations;
  return object;
}

OrderedJson MetricReportToJsonObject(const MetricReport& report) {
  OrderedJson object;
  object["spearman_rho"] = report.spearman_rho;
  object["ndcg"] = report.ndcg;
  object["tertile_misses"] = report.tertile_misses;
  object["n_items"] = report.n_items;
  return object;
}

OrderedJson ExperimentConfigToJsonObject(const ExperimentConfig& config) {
  OrderedJson object;
  object["format_version"] = 1;
  object["folds"] = config.folds;
  object["percentile"] = config.percentile;
  object["pair_ordering"] = PairOrderingName(config.pair_ordering);
  object["master_seed"] = config.master_seed;
  object["comparator"] = ComparatorConfigToJsonObject(config.comparator);
  object["fit"] = FitConfigToJsonObject(config.fit);
  return object;
}

ExperimentConfig ExperimentConfigFromJsonObject(const OrderedJson& object,
                                                const std::string& context) {
  if (!object.is_object()) {
    throw ParseError(context + ": experiment config must be a JSON object");
  }
  RejectUnknownKeys(object,
                    {"format_version", "folds", "percentile", "pair_ordering",
                     "master_seed", "comparator", "fit"},
                    context);
  ExperimentConfig config;
  if (object.contains("folds")) {
    config.folds = static_cast<size_t>(RequireNumber(object, "folds", context));
  }
  if (object.contains("percentile")) {
    config.percentile = RequireNumber(object, "percentile", context);
  }
  if (object.contains("pair_ordering")) {
    if (!object["pair_ordering"].is_string()) {
      throw ParseError(context + ": \"pair_ordering\" must be a string");
    }
    config.pair_ordering =
        PairOrderingFromName(object["pair_ordering"].get<std::string>());
  }
  if (object.contains("master_seed")) {
    if (!object["master_seed"].is_number_unsigned() &&
        !object["master_seed"].is_number_integer()) {
      throw ParseError(context + ": \"master_seed\" must be an integer");
    }
    config.master_seed = object["master_seed"].get<uint64_t>();
  }
  if (!object.contains("comparator")) {
    throw ParseError(context + ": missing \"comparator\" section");
  }
  config.comparator =
      ComparatorConfigFromJsonObject(object["comparator"], context);
  if (object.contains("fit")) {
    config.fit = FitConfigFromJsonObject(object["fit"], context);
  }
  try {
    config.Validate();
  } catch (const ValidationError& e) {
    throw ParseError(context + ": " + e.what());
  }
  return config;
}

}  // namespace

ComparatorConfig ComparatorConfigFromJson(const std::string& text,
                                          const std::string& name) {
  return ComparatorConfigFromJsonObject(ParseJson(text, name), name);
}

ComparatorConfig ReadComparatorConfig(const std::string& path) {
  return ComparatorConfigFromJson(ReadFile(path), path);
}

std::string ComparatorConfigToJson(const ComparatorConfig& config) {
  return ComparatorConfigToJsonObject(config).dump(2) + "\n";
}

ExperimentConfig ExperimentConfigFromJson(const std::string& text,
                                          const std::string& name) {
  return ExperimentConfigFromJsonObject(ParseJson(text, name), name);
}

ExperimentConfig ReadExperimentConfig(const std::string& path) {
  return ExperimentConfigFromJson(ReadFile(path), path);
}

std::string ExperimentConfigToJson(const ExperimentConfig& config) {
  return ExperimentConfigToJsonObject(config).dump(2) + "\n";
}

std::string LogisticPairModelToJson(const LogisticPairModel& model) {
  OrderedJson object;
  object["format_version"] = 1;
  object["weights"] = model.weights;
  object["bias"] = model.bias;
  OrderedJson hyper;
  hyper["learning_rate"] = model.hyper.learning_rate;
  hyper["epochs"] = model.hyper.epochs;
  hyper["seed"] = model.hyper.seed;
  object["hyperparameters"] = std::move(hyper);
  object["final_loss"] = model.final_loss;
  return object.dump(2) + "\n";
}

LogisticPairModel LogisticPairModelFromJson(const std::string& text,
                                            const std::string& name) {
  const OrderedJson object = ParseJson(text, name);
  if (!object.is_object() || !object.contains("weights") ||
      !object["weights"].is_array()) {
    throw ParseError(name + ": missing \"weights\" array");
  }
  LogisticPairModel model;
  for (const auto& value : object["weights"]) {
    if (!value.is_number()) {
      throw ParseError(name + ": weights must be numbers");
    }
    model.weights.push_back(value.get<double>());
  }
  if (object.contains("bias")) {
    model.bias = RequireNumber(object, "bias", name);
  }
  if (object.contains("hyperparameters")) {
    const auto& hyper = object["hyperparameters"];
    if (hyper.contains("learning_rate")) {
      model.hyper.learning_rate = hyper["learning_rate"].get<double>();
    }
    if (hyper.contains("epochs")) {
      model.hyper.epochs = hyper["epochs"].get<size_t>();
    }
    if (hyper.contains("seed")) {
      model.hyper.seed = hyper["seed"].get<uint64_t>();
    }
  }
  if (object.contains("final_loss")) {
    model.final_loss = RequireNumber(object, "final_loss", name);
  }
  return model;
}

std::string FitResultToJson(const FitResult& result) {
  OrderedJson object;
  OrderedJson strengths = OrderedJson::object();
  for (const auto& [id, value] : result.strengths.log_strength) {
    strengths[id] = value;
  }
  object["strengths"] = std::move(strengths);
  object["iterations"] = result.iterations_used;
  object["converged"] = result.converged;
  return object.dump(2) + "\n";
}

std::string MetricReportToJson(const MetricReport& report) {
  return MetricReportToJsonObject(report).dump(2) + "\n";
}

std::string ExperimentReportToJson(const ExperimentReport& report) {
  OrderedJson object;
  object["format_version"] = 1;
  object["config"] = ExperimentConfigToJsonObject(report.config);
  OrderedJson provenance;
  provenance["master_seed"] = report.master_seed;
  provenance["cohort_hash"] = report.cohort_hash;
  provenance["n_items"] = report.n_items;
  provenance["n_items_subsampled"] = report.n_items_subsampled;
  object["provenance"] = std::move(provenance);
  OrderedJson folds = OrderedJson::array();
  for (const MetricReport& fold : report.per_fold) {
    folds.push_back(MetricReportToJsonObject(fold));
  }
  object["per_fold"] = std::move(folds);
  object["fold_converged"] = report.fold_converged;
  object["mean_spearman"] = report.mean_spearman;
  object["mean_ndcg"] = report.mean_ndcg;
  object["mean_tertile_misses"] = report.mean_tertile_misses;
  return object.dump(2) + "\n";
}

ExperimentReport ExperimentReportFromJson(const std::string& text,
                                          const std::string& name) {
  const OrderedJson object = ParseJson(text, name);
  if (!object.is_object() || !object.contains("per_fold") ||
      !object.contains("config")) {
    throw ParseError(name + ": not an experiment report");
  }
  ExperimentReport report;
  report.config = ExperimentConfigFromJsonObject(object["config"], name);
  for (const auto& fold : object["per_fold"]) {
    MetricReport metrics;
    metrics.spearman_rho = RequireNumber(fold, "spearman_rho", name);
    metrics.ndcg = RequireNumber(fold, "ndcg", name);
    metrics.tertile_misses =
        static_cast<size_t>(RequireNumber(fold, "tertile_misses", name));
    metrics.n_items = static_cast<size_t>(RequireNumber(fold, "n_items", name));
    report.per_fold.push_back(metrics);
  }
  if (object.contains("fold_converged")) {
    for (const auto& value : object["fold_converged"]) {
      report.fold_converged.push_back(value.get<bool>());
    }
  }
  report.mean_spearman = RequireNumber(object, "mean_spearman", name);
  report.mean_ndcg = RequireNumber(object, "mean_ndcg", name);
  report.mean_tertile_misses =
      RequireNumber(object, "mean_tertile_misses", name);
  if (object.contains("provenance")) {
    const auto& provenance = object["provenance"];
    if (provenance.contains("master_seed")) {
      report.master_seed = provenance["master_seed"].get<uint64_t>();
    }
    if (provenance.contains("cohort_hash")) {
      report.cohort_hash = provenance["cohort_hash"].get<std::string>();
    }
    if (provenance.contains("n_items")) {
      report.n_items = provenance["n_items"].get<size_t>();
    }
    if (provenance.contains("n_items_subsampled")) {
      report.n_items_subsampled =
          provenance["n_items_subsampled"].get<size_t>();
    }
  }
  return report;
}

std::string AblationCsvRow(const ExperimentReport& report) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "%s,%s,%.4f,%.4f,%.2f",
                ComparatorKindName(report.config.comparator.kind).c_str(),
                FormatDouble(report.config.percentile).c_str(),
                report.mean_spearman, report.mean_ndcg,
                report.mean_tertile_misses);
  return std::string(buffer);
}

std::string PairOrderingName(PairOrdering ordering) {
  switch (ordering) {
    case PairOrdering::kUnorderedOnce:
      return "unordered_once";
    case PairOrdering::kBothOrders:
      return "both_orders";
  }
  throw ValidationError("unknown pair ordering");
}

PairOrdering PairOrderingFromName(const std::string& name) {
  if (name == "unordered_once") return PairOrdering::kUnorderedOnce;
  if (name == "both_orders") return PairOrdering::kBothOrders;
  throw ValidationError("unknown pair ordering: " + name);
}

}  // namespace io
}  // namespace pairrank
