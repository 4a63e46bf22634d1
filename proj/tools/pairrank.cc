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

// pairrank: rank a population from pairwise comparisons and reproduce the
// cross-validated ranking evaluation protocol on synthetic cohorts.
//
// Exit codes: 0 success, 1 usage error, 2 data/parse error, 3 numerical
// non-convergence (outputs are still written).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "pairrank/btinfer.h"
#include "pairrank/comparators.h"
#include "pairrank/evalharness.h"
#include "pairrank/io.h"
#include "pairrank/metrics.h"
#include "pairrank/pairgen.h"
#include "pairrank/rng.h"
#include "pairrank/types.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitNotConverged = 3;

// Substream tags for standalone simulation.
constexpr uint64_t kSimulateFeatureStream = 101;
constexpr uint64_t kSimulatePredictStream = 102;

// Output paths are checked up front so long runs cannot fail at write time.
void RequireWritablePath(const std::string& path) {
  if (path.empty()) return;
  const std::filesystem::path parent =
      std::filesystem::path(path).parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw pairrank::ValidationError(
        path + ": parent directory does not exist");
  }
}

std::string PadNumber(size_t value, size_t width) {
  std::string digits = std::to_string(value);
  if (digits.size() < width) {
    digits.insert(digits.begin(), width - digits.size(), '0');
  }
  return digits;
}

size_t DigitsOf(size_t value) { return std::to_string(value).size(); }

int CmdGenCohort(size_t n, size_t subjects, double score_min, double score_max,
                 uint64_t seed, const std::string& out_path) {
  RequireWritablePath(out_path);
  if (subjects < 1 || n < subjects) {
    throw pairrank::ValidationError(
        "need n >= subjects >= 1 (got n=" + std::to_string(n) +
        ", subjects=" + std::to_string(subjects) + ")");
  }
  if (!(score_min < score_max)) {
    throw pairrank::ValidationError("score-min must be below score-max");
  }
  const int64_t lo = static_cast<int64_t>(std::ceil(score_min));
  const int64_t hi = static_cast<int64_t>(std::floor(score_max));
  if (lo > hi) {
    throw pairrank::ValidationError(
        "no integer scores inside [score-min, score-max]");
  }

  pairrank::Rng rng(seed);
  pairrank::Cohort cohort;
  const size_t id_width = DigitsOf(n);
  const size_t subject_width = DigitsOf(subjects);
  for (size_t i = 0; i < n; ++i) {
    pairrank::Item item;
    item.id = "I" + PadNumber(i + 1, id_width);
    // The first `subjects` items cover every subject; the rest draw one.
    const size_t subject =
        i < subjects ? i : static_cast<size_t>(rng.NextBelow(subjects));
    item.subject_id = "S" + PadNumber(subject + 1, subject_width);
    item.true_score = static_cast<double>(
        lo + static_cast<int64_t>(rng.NextBelow(
                 static_cast<uint64_t>(hi - lo + 1))));
    cohort.items.push_back(std::move(item));
  }
  pairrank::io::WriteFile(out_path, pairrank::io::CohortToCsv(cohort));
  std::cout << "wrote " << n << " items over " << subjects << " subjects to "
            << out_path << "\n";
  return kExitOk;
}

int CmdPairs(const std::string& cohort_path, const std::string& mode,
             const std::string& out_path) {
  RequireWritablePath(out_path);
  const pairrank::Cohort cohort = pairrank::io::ReadCohortCsv(cohort_path);
  const pairrank::PairOrdering ordering =
      pairrank::io::PairOrderingFromName(mode);
  const std::vector<pairrank::LabeledPair> pairs =
      pairrank::GeneratePairs(cohort, ordering);
  pairrank::io::WriteFile(out_path, pairrank::io::PairsToJsonl(pairs));
  std::cout << "wrote " << pairs.size() << " labeled pairs ("
            << pairrank::CountExcludedTies(cohort) << " tied pairs excluded)\n";
  return kExitOk;
}

int CmdSimulate(const std::string& cohort_path, const std::string& config_path,
                bool seed_given, uint64_t seed, const std::string& out_path) {
  RequireWritablePath(out_path);
  const pairrank::Cohort cohort = pairrank::io::ReadCohortCsv(cohort_path);
  pairrank::ComparatorConfig config =
      pairrank::io::ReadComparatorConfig(config_path);
  if (seed_given) config.seed = seed;

  pairrank::FeatureCohort features;
  pairrank::LogisticPairModel model;
  const pairrank::FeatureCohort* features_ptr = nullptr;
  const pairrank::LogisticPairModel* model_ptr = nullptr;
  if (config.kind == pairrank::ComparatorKind::kLogistic) {
    features = pairrank::GenerateFeatures(
        cohort, config.feature_dim, config.noise_scale,
        pairrank::DeriveSeed(config.seed, {kSimulateFeatureStream}));
    model = pairrank::FitLogistic(
        pairrank::GeneratePairs(cohort, pairrank::PairOrdering::kUnorderedOnce),
        features,
        pairrank::TrainingHyperparameters{config.learning_rate, config.epochs,
                                          config.seed});
    features_ptr = &features;
    model_ptr = &model;
  }

  std::vector<std::string> ids;
  ids.reserve(cohort.items.size());
  for (const pairrank::Item& item : cohort.items) ids.push_back(item.id);
  std::sort(ids.begin(), ids.end());

  pairrank::Rng rng(pairrank::DeriveSeed(config.seed, {kSimulatePredictStream}));
  std::vector<pairrank::ComparisonRecord> records;
  for (size_t i = 0; i < ids.size(); ++i) {
    for (size_t j = i + 1; j < ids.size(); ++j) {
      records.push_back(pairrank::PredictPair(config, cohort, features_ptr,
                                              model_ptr, ids[i], ids[j], rng));
    }
  }
  pairrank::io::WriteFile(out_path, pairrank::io::ComparisonsToJsonl(records));
  std::cout << "wrote " << records.size() << " comparisons to " << out_path
            << "\n";
  return kExitOk;
}

int CmdRank(const std::string& comparisons_path, const std::string& cohort_path,
            double epsilon, double tolerance, size_t max_iterations,
            const std::string& out_path) {
  RequireWritablePath(out_path);
  const pairrank::Cohort cohort = pairrank::io::ReadCohortCsv(cohort_path);
  const std::vector<pairrank::ComparisonRecord> records =
      pairrank::io::ReadComparisonsJsonl(comparisons_path);
  if (records.empty()) {
    throw pairrank::ValidationError(comparisons_path +
                                    ": no comparisons to rank from");
  }
  pairrank::FitConfig fit_config;
  fit_config.pseudocount = epsilon;
  fit_config.tolerance = tolerance;
  fit_config.max_iterations = max_iterations;

  const pairrank::ComparisonGraph graph =
      pairrank::AggregateComparisons(records, cohort);
  const pairrank::FitResult fit = pairrank::FitBradleyTerry(graph, fit_config);
  const pairrank::Ranking ranking =
      pairrank::RankingFromStrengths(fit.strengths, cohort);

  nlohmann::ordered_json out;
  out["format_version"] = 1;
  out["ranking"] = ranking.ordered_ids;
  out["fit"] = nlohmann::ordered_json::parse(pairrank::io::FitResultToJson(fit));
  if (!out_path.empty()) {
    pairrank::io::WriteFile(out_path, out.dump(2) + "\n");
  }

  std::printf("%4s  %-12s  %s\n", "rank", "id", "log_strength");
  for (size_t i = 0; i < ranking.ordered_ids.size(); ++i) {
    const std::string& id = ranking.ordered_ids[i];
    std::printf("%4zu  %-12s  %s\n", i + 1, id.c_str(),
                pairrank::io::FormatDouble(
                    fit.strengths.log_strength.at(id)).c_str());
  }
  if (!fit.converged) {
    std::cerr << "warning: fit did not converge after " << fit.iterations_used
              << " iterations (last delta " << fit.final_delta << ")\n";
    return kExitNotConverged;
  }
  return kExitOk;
}

void PrintEvalSummary(const pairrank::ExperimentReport& report) {
  std::printf("rho=%.3f ndcg=%.3f tertile_misses=%.2f folds=%zu\n",
              report.mean_spearman, report.mean_ndcg,
              report.mean_tertile_misses, report.per_fold.size());
}

bool AllFoldsConverged(const pairrank::ExperimentReport& report) {
  return std::all_of(report.fold_converged.begin(), report.fold_converged.end(),
                     [](bool value) { return value; });
}

int CmdEval(const std::string& cohort_path, const std::string& config_path,
            const std::string& out_path) {
  RequireWritablePath(out_path);
  const pairrank::Cohort cohort = pairrank::io::ReadCohortCsv(cohort_path);
  const pairrank::ExperimentConfig config =
      pairrank::io::ReadExperimentConfig(config_path);
  const pairrank::ExperimentReport report =
      pairrank::RunExperiment(cohort, config);
  if (!out_path.empty()) {
    pairrank::io::WriteFile(out_path,
                            pairrank::io::ExperimentReportToJson(report));
  }
  PrintEvalSummary(report);
  return AllFoldsConverged(report) ? kExitOk : kExitNotConverged;
}

int CmdAblate(const std::string& cohort_path, const std::string& config_path,
              std::vector<double> percentiles, const std::string& out_dir) {
  if (percentiles.empty()) {
    percentiles = {100.0, 90.0, 80.0, 70.0};
  }
  const pairrank::Cohort cohort = pairrank::io::ReadCohortCsv(cohort_path);
  pairrank::ExperimentConfig config =
      pairrank::io::ReadExperimentConfig(config_path);

  std::filesystem::create_directories(out_dir);
  std::string csv = "comparator,percentile,rho,ndcg,tertile_misses\n";
  bool all_converged = true;
  for (double percentile : percentiles) {
    config.percentile = percentile;
    const pairrank::ExperimentReport report =
        pairrank::RunExperiment(cohort, config);
    all_converged = all_converged && AllFoldsConverged(report);
    const std::string report_path =
        out_dir + "/report_p" + pairrank::io::FormatDouble(percentile) + ".json";
    pairrank::io::WriteFile(report_path,
                            pairrank::io::ExperimentReportToJson(report));
    csv += pairrank::io::AblationCsvRow(report);
    csv += '\n';
  }
  const std::string csv_path = out_dir + "/ablation.csv";
  pairrank::io::WriteFile(csv_path, csv);
  std::cout << csv;
  std::cout << "wrote " << percentiles.size() << " reports and " << csv_path
            << "\n";
  return all_converged ? kExitOk : kExitNotConverged;
}

int CmdReport(const std::string& in_path, const std::string& format) {
  const pairrank::ExperimentReport report = pairrank::io::ExperimentReportFromJson(
      pairrank::io::ReadFile(in_path), in_path);
  if (format == "csv") {
    std::cout << "comparator,percentile,rho,ndcg,tertile_misses\n";
    std::cout << pairrank::io::AblationCsvRow(report) << "\n";
    return kExitOk;
  }
  std::printf("comparator: %s   percentile: %s   master_seed: %llu\n",
              pairrank::ComparatorKindName(report.config.comparator.kind).c_str(),
              pairrank::io::FormatDouble(report.config.percentile).c_str(),
              static_cast<unsigned long long>(report.master_seed));
  std::printf("cohort: %zu items (%zu after subsampling), hash %s\n",
              report.n_items, report.n_items_subsampled,
              report.cohort_hash.c_str());
  std::printf("%4s  %8s  %8s  %14s  %7s  %9s\n", "fold", "rho", "ndcg",
              "tertile_misses", "items", "converged");
  for (size_t f = 0; f < report.per_fold.size(); ++f) {
    const pairrank::MetricReport& fold = report.per_fold[f];
    const bool converged =
        f < report.fold_converged.size() ? report.fold_converged[f] : true;
    std::printf("%4zu  %8.4f  %8.4f  %14zu  %7zu  %9s\n", f + 1,
                fold.spearman_rho, fold.ndcg, fold.tertile_misses, fold.n_items,
                converged ? "yes" : "no");
  }
  std::printf("mean  %8.4f  %8.4f  %14.2f\n", report.mean_spearman,
              report.mean_ndcg, report.mean_tertile_misses);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pairwise-comparison ranking via Bradley-Terry inference"};
  app.require_subcommand(1);

  // gen-cohort
  auto* gen = app.add_subcommand("gen-cohort", "Generate a synthetic cohort CSV");
  size_t gen_n = 140, gen_subjects = 39;
  double gen_min = 19.0, gen_max = 62.0;
  uint64_t gen_seed = 0;
  std::string gen_out;
  gen->add_option("--n", gen_n, "Number of items")->capture_default_str();
  gen->add_option("--subjects", gen_subjects, "Number of distinct subjects")
      ->capture_default_str();
  gen->add_option("--score-min", gen_min, "Lower score bound")
      ->capture_default_str();
  gen->add_option("--score-max", gen_max, "Upper score bound")
      ->capture_default_str();
  gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
  gen->add_option("--out", gen_out, "Output CSV path")->required();

  // pairs
  auto* pairs = app.add_subcommand("pairs", "Emit labeled pairs from a cohort");
  std::string pairs_cohort, pairs_mode = "unordered_once", pairs_out;
  pairs->add_option("--cohort", pairs_cohort, "Cohort CSV")->required();
  pairs->add_option("--mode", pairs_mode,
                    "Pair ordering: unordered_once or both_orders")
      ->capture_default_str();
  pairs->add_option("--out", pairs_out, "Output JSON-lines path")->required();

  // simulate
  auto* simulate =
      app.add_subcommand("simulate", "Predict every pair with a comparator");
  std::string sim_cohort, sim_config, sim_out;
  uint64_t sim_seed = 0;
  simulate->add_option("--cohort", sim_cohort, "Cohort CSV")->required();
  simulate->add_option("--comparator-config", sim_config,
                       "Comparator config JSON")->required();
  auto* sim_seed_opt =
      simulate->add_option("--seed", sim_seed, "Override the config seed");
  simulate->add_option("--out", sim_out, "Output comparisons JSON-lines")
      ->required();

  // rank
  auto* rank = app.add_subcommand("rank", "Infer a ranking from comparisons");
  std::string rank_comparisons, rank_cohort, rank_out;
  double rank_epsilon = 0.0, rank_tol = 1e-10;
  size_t rank_max_iter = 10000;
  rank->add_option("--comparisons", rank_comparisons,
                   "Comparison log JSON-lines")->required();
  rank->add_option("--cohort", rank_cohort, "Cohort CSV")->required();
  rank->add_option("--epsilon", rank_epsilon,
                   "Pseudocount added per direction on observed pairs")
      ->capture_default_str();
  rank->add_option("--tol", rank_tol, "Convergence tolerance")
      ->capture_default_str();
  rank->add_option("--max-iter", rank_max_iter, "Iteration budget")
      ->capture_default_str();
  rank->add_option("--out", rank_out, "Output ranking JSON path");

  // eval
  auto* eval = app.add_subcommand("eval", "Run the cross-validated experiment");
  std::string eval_cohort, eval_config, eval_out;
  eval->add_option("--cohort", eval_cohort, "Cohort CSV")->required();
  eval->add_option("--config", eval_config, "Experiment config JSON")
      ->required();
  eval->add_option("--out", eval_out, "Output report JSON path");

  // ablate
  auto* ablate =
      app.add_subcommand("ablate", "Sweep data percentiles and tabulate");
  std::string ablate_cohort, ablate_config, ablate_out_dir;
  std::vector<double> ablate_percentiles;
  ablate->add_option("--cohort", ablate_cohort, "Cohort CSV")->required();
  ablate->add_option("--config", ablate_config, "Experiment config JSON")
      ->required();
  ablate->add_option("--percentiles", ablate_percentiles,
                     "Percentiles to sweep (default 100 90 80 70)");
  ablate->add_option("--out-dir", ablate_out_dir, "Output directory")
      ->required();

  // report
  auto* report = app.add_subcommand("report", "Render an experiment report");
  std::string report_in, report_format = "text";
  report->add_option("--in", report_in, "Report JSON path")->required();
  report->add_option("--format", report_format, "Output format: text or csv")
      ->check(CLI::IsMember({"text", "csv"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return CmdGenCohort(gen_n, gen_subjects, gen_min, gen_max, gen_seed,
                          gen_out);
    }
    if (pairs->parsed()) {
      return CmdPairs(pairs_cohort, pairs_mode, pairs_out);
    }
    if (simulate->parsed()) {
      return CmdSimulate(sim_cohort, sim_config, sim_seed_opt->count() > 0,
                         sim_seed, sim_out);
    }
    if (rank->parsed()) {
      return CmdRank(rank_comparisons, rank_cohort, rank_epsilon, rank_tol,
                     rank_max_iter, rank_out);
    }
    if (eval->parsed()) {
      return CmdEval(eval_cohort, eval_config, eval_out);
    }
    if (ablate->parsed()) {
      return CmdAblate(ablate_cohort, ablate_config, ablate_percentiles,
                       ablate_out_dir);
    }
    if (report->parsed()) {
      return CmdReport(report_in, report_format);
    }
  } catch (const pairrank::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitUsage;
}
