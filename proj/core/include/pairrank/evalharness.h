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

// Experiment orchestration: subject-disjoint k-fold cross-validation, the
// per-fold train -> predict -> rank -> score pipeline, percentile ablation
// and aggregation across folds. Fully deterministic given a master seed.

#ifndef PAIRRANK_EVALHARNESS_H_
#define PAIRRANK_EVALHARNESS_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pairrank/btinfer.h"
#include "pairrank/comparators.h"
#include "pairrank/metrics.h"
#include "pairrank/types.h"

namespace pairrank {

struct ExperimentConfig {
  size_t folds = 3;
  double percentile = 100.0;  // in (0, 100]
  PairOrdering pair_ordering = PairOrdering::kUnorderedOnce;
  ComparatorConfig comparator;
  FitConfig fit;
  uint64_t master_seed = 0;

  // Single-outcome-per-pair tournaments routinely produce undefeated items,
  // so the harness regularizes by default.
  ExperimentConfig() { fit.pseudocount = 0.1; }

  void Validate() const;
};

struct FoldOutcome {
  MetricReport metrics;
  bool bt_converged = false;
  size_t bt_iterations = 0;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<MetricReport> per_fold;
  std::vector<bool> fold_converged;
  double mean_spearman = 0.0;
  double mean_ndcg = 0.0;
  double mean_tertile_misses = 0.0;
  // Provenance.
  uint64_t master_seed = 0;
  std::string cohort_hash;
  size_t n_items = 0;
  size_t n_items_subsampled = 0;
};

// FNV-1a content hash of a cohort (ids, subject ids, score bit patterns),
// rendered as 16 hex digits. Used for report provenance.
std::string CohortHash(const Cohort& cohort);

// Partitions subjects (not items) into k parts with sizes differing by at
// most one, shuffled deterministically by seed after sorting subject ids.
// Fold f's test set holds all items of part f's subjects; train is the rest.
std::vector<std::pair<Cohort, Cohort>> FoldSplit(const Cohort& cohort,
                                                 size_t k, uint64_t seed);

// Keeps floor(n * percentile / 100) items chosen uniformly without
// replacement; percentile 100 returns the cohort unchanged. Retained items
// stay in cohort order.
Cohort PercentileSubsample(const Cohort& cohort, double percentile,
                           uint64_t seed);

// One fold of the pipeline: build training pairs and configure/train the
// comparator, predict every unordered test pair once (canonical
// orientation; tie exclusion applies to training only), aggregate, fit
// Bradley-Terry, rank and score against the test ground truth. A
// non-converged fit is reported, not fatal. `features` may be shared across
// folds; when null, logistic kinds synthesize features over train+test.
FoldOutcome RunFold(const Cohort& train, const Cohort& test,
                    const ExperimentConfig& config, size_t fold_index = 0,
                    const FeatureCohort* features = nullptr);

// Subsample, split, run every fold and aggregate fold means.
ExperimentReport RunExperiment(const Cohort& cohort,
                               const ExperimentConfig& config);

}  // namespace pairrank

#endif  // PAIRRANK_EVALHARNESS_H_
