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

// Ranking-quality metrics: DCG/IDCG/NDCG, tie-corrected Spearman rank
// correlation, and upper-tertile misclassification counts.

#ifndef PAIRRANK_METRICS_H_
#define PAIRRANK_METRICS_H_

#include <map>
#include <string>

#include "pairrank/types.h"

namespace pairrank {

struct MetricReport {
  double spearman_rho = 0.0;   // in [-1, 1]
  double ndcg = 0.0;           // in [0, 1]
  size_t tertile_misses = 0;   // <= ceil(n_items / 3)
  size_t n_items = 0;
};

// Sum of rel_i / log2(i + 1) over positions i = 1..n of the predicted
// ranking. Relevance must be nonnegative and cover every ranked id.
double Dcg(const Ranking& predicted,
           const std::map<std::string, double>& relevance);

// DCG of the best possible ordering (descending relevance). Ties in
// relevance leave the value unchanged whatever their order.
double Idcg(const std::map<std::string, double>& relevance);

// DCG / IDCG in [0, 1]; exactly 1 iff the predicted relevance sequence is
// non-increasing. All-zero relevance has no defined value and errors.
double Ndcg(const Ranking& predicted,
            const std::map<std::string, double>& relevance);

// Pearson correlation between predicted rank positions and ground-truth
// ranks, with average (fractional) ranks for tied true scores. Requires at
// least two items and non-constant true scores.
double Spearman(const Ranking& predicted,
                const std::map<std::string, double>& true_scores);

// Let k = floor(n/3). Counts the ground-truth top-k items (ties at the
// boundary broken by ascending id) that the predicted top k missed.
size_t TertileMisses(const Ranking& predicted,
                     const std::map<std::string, double>& true_scores);

// All three metrics at once.
MetricReport ScoreRanking(const Ranking& predicted,
                          const std::map<std::string, double>& true_scores);

}  // namespace pairrank

#endif  // PAIRRANK_METRICS_H_
