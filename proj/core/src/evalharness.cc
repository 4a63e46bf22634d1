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

#include "pairrank/evalharness.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <map>
#include <set>

#include "pairrank/pairgen.h"
#include "pairrank/rng.h"

namespace pairrank {

namespace {

// Substream ids hung off the master seed.
enum StreamKind : uint64_t {
  kSubsampleStream = 1,
  kFoldSplitStream = 2,
  kFeatureStream = 3,
  kPredictionStream = 4,
};

uint64_t Fnv1aUpdate(uint64_t hash, const void* data, size_t size) {
  const unsigned char* bytes = static_cast<const unsigned char*>(data);
  for (size_t i = 0; i < size; ++i) {
    hash ^= bytes[i];
    hash *= 0x100000001b3ULL;
  }
  return hash;
}

}  // namespace

void ExperimentConfig::Validate() const {
  if (folds < 2) {
    throw ValidationError("experiment needs at least 2 folds");
  }
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw ValidationError("percentile must lie in (0, 100]");
  }
  comparator.Validate();
  fit.Validate();
}

std::string CohortHash(const Cohort& cohort) {
  uint64_t hash = 0xcbf29ce484222325ULL;
  for (const Item& item : cohort.items) {
    hash = Fnv1aUpdate(hash, item.id.data(), item.id.size());
    hash = Fnv1aUpdate(hash, "\x1f", 1);
    hash = Fnv1aUpdate(hash, item.subject_id.data(), item.subject_id.size());
    hash = Fnv1aUpdate(hash, "\x1f", 1);
    uint64_t bits = 0;
    static_assert(sizeof(bits) == sizeof(item.true_score));
    std::memcpy(&bits, &item.true_score, sizeof(bits));
    hash = Fnv1aUpdate(hash, &bits, sizeof(bits));
    hash = Fnv1aUpdate(hash, "\x1e", 1);
  }
  static const char* kHex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<size_t>(i)] = kHex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::vector<std::pair<Cohort, Cohort>> FoldSplit(const Cohort& cohort,
                                                 size_t k, uint64_t seed) {
  ValidateCohort(cohort);
  if (k < 2) {
    throw ValidationError("fold count k must be >= 2");
  }
  std::set<std::string> subject_set;
  for (const Item& item : cohort.items) subject_set.insert(item.subject_id);
  if (subject_set.size() < k) {
    throw ValidationError("cannot split " + std::to_string(subject_set.size()) +
                          " subjects into " + std::to_string(k) + " folds");
  }

  std::vector<std::string> subjects(subject_set.begin(), subject_set.end());
  Rng rng(seed);
  rng.Shuffle(subjects);

  // Part sizes differ by at most one; the first (n % k) parts get the extra.
  const size_t base = subjects.size() / k;
  const size_t extra = subjects.size() % k;
  std::map<std::string, size_t> part_of;
  size_t cursor = 0;
  for (size_t part = 0; part < k; ++part) {
    const size_t size = base + (part < extra ? 1 : 0);
    for (size_t i = 0; i < size; ++i) part_of[subjects[cursor++]] = part;
  }

  std::vector<std::pair<Cohort, Cohort>> folds(k);
  for (const Item& item : cohort.items) {
    const size_t part = part_of.at(item.subject_id);
    for (size_t f = 0; f < k; ++f) {
      if (f == part) {
        folds[f].second.items.push_back(item);
      } else {
        folds[f].first.items.push_back(item);
      }
    }
  }
  return folds;
}

Cohort PercentileSubsample(const Cohort& cohort, double percentile,
                           uint64_t seed) {
  ValidateCohort(cohort);
  if (!(percentile > 0.0 && percentile <= 100.0)) {
    throw ValidationError("percentile must lie in (0, 100]");
  }
  if (percentile == 100.0) return cohort;

  const size_t n = cohort.items.size();
  const size_t keep = static_cast<size_t>(
      std::floor(static_cast<double>(n) * percentile / 100.0));
  std::vector<size_t> indices(n);
  for (size_t i = 0; i < n; ++i) indices[i] = i;
  Rng rng(seed);
  rng.Shuffle(indices);
  indices.resize(keep);
  std::sort(indices.begin(), indices.end());

  Cohort out;
  out.items.reserve(keep);
  for (size_t index : indices) out.items.push_back(cohort.items[index]);
  return out;
}

FoldOutcome RunFold(const Cohort& train, const Cohort& test,
                    const ExperimentConfig& config, size_t fold_index,
                    const FeatureCohort* features) {
  config.Validate();
  ValidateCohort(train);
  ValidateCohort(test);
  if (test.items.size() < 3) {
    throw ValidationError("test fold needs at least 3 items");
  }

  // Component 1: train/configure the comparator.
  FeatureCohort local_features;
  LogisticPairModel model;
  const LogisticPairModel* model_ptr = nullptr;
  if (config.comparator.kind == ComparatorKind::kLogistic) {
    if (features == nullptr) {
      Cohort combined = train;
      combined.items.insert(combined.items.end(), test.items.begin(),
                            test.items.end());
      local_features = GenerateFeatures(
          combined, config.comparator.feature_dim,
          config.comparator.noise_scale,
          DeriveSeed(config.master_seed,
                     {kFeatureStream, config.comparator.seed}));
      features = &local_features;
    }
    const std::vector<LabeledPair> train_pairs =
        GeneratePairs(train, config.pair_ordering);
    model = FitLogistic(train_pairs, *features,
                        TrainingHyperparameters{config.comparator.learning_rate,
                                                config.comparator.epochs,
                                                config.comparator.seed});
    model_ptr = &model;
  }

  // Component 2: one prediction per unordered test pair, canonical
  // orientation. Equal-score pairs are predicted too; only training skips
  // them.
  std::vector<std::string> test_ids;
  test_ids.reserve(test.items.size());
  for (const Item& item : test.items) test_ids.push_back(item.id);
  std::sort(test_ids.begin(), test_ids.end());

  Rng rng(DeriveSeed(config.master_seed,
                     {kPredictionStream, fold_index, config.comparator.seed}));
  std::vector<ComparisonRecord> records;
  records.reserve(test_ids.size() * (test_ids.size() - 1) / 2);
  for (size_t i = 0; i < test_ids.size(); ++i) {
    for (size_t j = i + 1; j < test_ids.size(); ++j) {
      records.push_back(PredictPair(config.comparator, test, features,
                                    model_ptr, test_ids[i], test_ids[j], rng));
    }
  }

  // Component 3: Bradley-Terry inference over the predicted outcomes.
  const ComparisonGraph graph = AggregateComparisons(records, test);
  const FitResult fit = FitBradleyTerry(graph, config.fit);

  // Score the implied ranking against the test ground truth.
  const Ranking ranking = RankingFromStrengths(fit.strengths, test);
  std::map<std::string, double> true_scores;
  for (const Item& item : test.items) {
    true_scores.emplace(item.id, item.true_score);
  }

  FoldOutcome outcome;
  outcome.metrics = ScoreRanking(ranking, true_scores);
  outcome.bt_converged = fit.converged;
  outcome.bt_iterations = fit.iterations_used;
  return outcome;
}

ExperimentReport RunExperiment(const Cohort& cohort,
                               const ExperimentConfig& config) {
  config.Validate();
  ValidateCohort(cohort);

  ExperimentReport report;
  report.config = config;
  report.master_seed = config.master_seed;
  report.cohort_hash = CohortHash(cohort);
  report.n_items = cohort.items.size();

  const Cohort subsampled = PercentileSubsample(
      cohort, config.percentile,
      DeriveSeed(config.master_seed, {kSubsampleStream}));
  report.n_items_subsampled = subsampled.items.size();

  const auto folds = FoldSplit(subsampled, config.folds,
                               DeriveSeed(config.master_seed, {kFoldSplitStream}));

  // Features are per-item state, synthesized once and shared by all folds.
  FeatureCohort features;
  const FeatureCohort* features_ptr = nullptr;
  if (config.comparator.kind == ComparatorKind::kLogistic) {
    features = GenerateFeatures(
        subsampled, config.comparator.feature_dim, config.comparator.noise_scale,
        DeriveSeed(config.master_seed,
                   {kFeatureStream, config.comparator.seed}));
    features_ptr = &features;
  }

  for (size_t f = 0; f < folds.size(); ++f) {
    const FoldOutcome outcome =
        RunFold(folds[f].first, folds[f].second, config, f, features_ptr);
    report.per_fold.push_back(outcome.metrics);
    report.fold_converged.push_back(outcome.bt_converged);
  }

  const double k = static_cast<double>(report.per_fold.size());
  for (const MetricReport& fold : report.per_fold) {
    report.mean_spearman += fold.spearman_rho;
    report.mean_ndcg += fold.ndcg;
    report.mean_tertile_misses += static_cast<double>(fold.tertile_misses);
  }
  report.mean_spearman /= k;
  report.mean_ndcg /= k;
  report.mean_tertile_misses /= k;
  return report;
}

}  // namespace pairrank
