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

#include "pairrank/metrics.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>
#include <vector>

namespace pairrank {

namespace {

double RelevanceFor(const std::map<std::string, double>& relevance,
                    const std::string& id) {
  auto it = relevance.find(id);
  if (it == relevance.end()) {
    throw ValidationError("relevance map is missing item " + id);
  }
  if (it->second < 0.0 || !std::isfinite(it->second)) {
    throw ValidationError("relevance for item " + id +
                          " must be finite and nonnegative");
  }
  return it->second;
}

double DcgOfSequence(const std::vector<double>& relevances) {
  double dcg = 0.0;
  for (size_t i = 0; i < relevances.size(); ++i) {
    dcg += relevances[i] / std::log2(static_cast<double>(i) + 2.0);
  }
  return dcg;
}

// Items sorted by descending score with ascending-id tie-break.
std::vector<std::string> IdsByDescendingScore(
    const std::map<std::string, double>& scores) {
  std::vector<std::string> ids;
  ids.reserve(scores.size());
  for (const auto& [id, score] : scores) ids.push_back(id);
  std::sort(ids.begin(), ids.end(),
            [&](const std::string& a, const std::string& b) {
              const double sa = scores.at(a);
              const double sb = scores.at(b);
              if (sa != sb) return sa > sb;
              return a < b;
            });
  return ids;
}

}  // namespace

double Dcg(const Ranking& predicted,
           const std::map<std::string, double>& relevance) {
  std::vector<double> sequence;
  sequence.reserve(predicted.ordered_ids.size());
  for (const std::string& id : predicted.ordered_ids) {
    sequence.push_back(RelevanceFor(relevance, id));
  }
  return DcgOfSequence(sequence);
}

double Idcg(const std::map<std::string, double>& relevance) {
  if (relevance.empty()) {
    throw ValidationError("idcg of an empty relevance set is undefined");
  }
  std::vector<double> sequence;
  sequence.reserve(relevance.size());
  for (const auto& [id, value] : relevance) {
    sequence.push_back(RelevanceFor(relevance, id));
  }
  std::sort(sequence.begin(), sequence.end(), std::greater<double>());
  return DcgOfSequence(sequence);
}

double Ndcg(const Ranking& predicted,
            const std::map<std::string, double>& relevance) {
  if (predicted.ordered_ids.empty()) {
    throw ValidationError("ndcg of an empty ranking is undefined");
  }
  std::vector<double> sequence;
  sequence.reserve(predicted.ordered_ids.size());
  for (const std::string& id : predicted.ordered_ids) {
    sequence.push_back(RelevanceFor(relevance, id));
  }
  const double dcg = DcgOfSequence(sequence);
  std::vector<double> ideal_sequence = sequence;
  std::sort(ideal_sequence.begin(), ideal_sequence.end(),
            std::greater<double>());
  const double ideal = DcgOfSequence(ideal_sequence);
  if (ideal == 0.0) {
    throw ValidationError("ndcg is undefined when all relevances are zero");
  }
  return dcg / ideal;
}

double Spearman(const Ranking& predicted,
                const std::map<std::string, double>& true_scores) {
  const size_t n = predicted.ordered_ids.size();
  if (n < 2) {
    throw ValidationError("spearman needs at least two items");
  }

  // Predicted rank position per item, 1-based.
  std::vector<double> predicted_rank(n);
  std::vector<const std::string*> ids(n);
  for (size_t i = 0; i < n; ++i) {
    predicted_rank[i] = static_cast<double>(i) + 1.0;
    ids[i] = &predicted.ordered_ids[i];
  }

  // Ground-truth average (fractional) ranks, rank 1 = highest score.
  std::vector<double> scores(n);
  for (size_t i = 0; i < n; ++i) {
    auto it = true_scores.find(*ids[i]);
    if (it == true_scores.end()) {
      throw ValidationError("true_scores map is missing item " + *ids[i]);
    }
    scores[i] = it->second;
  }
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](size_t a, size_t b) { return scores[a] > scores[b]; });
  std::vector<double> truth_rank(n, 0.0);
  size_t start = 0;
  while (start < n) {
    size_t end = start;
    while (end + 1 < n && scores[order[end + 1]] == scores[order[start]]) ++end;
    const double average =
        (static_cast<double>(start) + static_cast<double>(end)) / 2.0 + 1.0;
    for (size_t k = start; k <= end; ++k) truth_rank[order[k]] = average;
    start = end + 1;
  }

  double mean_x = 0.0, mean_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    mean_x += predicted_rank[i];
    mean_y += truth_rank[i];
  }
  mean_x /= static_cast<double>(n);
  mean_y /= static_cast<double>(n);
  double covariance = 0.0, variance_x = 0.0, variance_y = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double dx = predicted_rank[i] - mean_x;
    const double dy = truth_rank[i] - mean_y;
    covariance += dx * dy;
    variance_x += dx * dx;
    variance_y += dy * dy;
  }
  if (variance_y == 0.0) {
    throw ValidationError(
        "spearman is undefined when all true scores are equal");
  }
  return covariance / std::sqrt(variance_x * variance_y);
}

size_t TertileMisses(const Ranking& predicted,
                     const std::map<std::string, double>& true_scores) {
  const size_t n = predicted.ordered_ids.size();
  if (n < 3) {
    throw ValidationError("tertile analysis needs at least three items");
  }
  for (const std::string& id : predicted.ordered_ids) {
    if (true_scores.find(id) == true_scores.end()) {
      throw ValidationError("true_scores map is missing item " + id);
    }
  }
  const size_t k = n / 3;
  std::map<std::string, double> ranked_scores;
  for (const std::string& id : predicted.ordered_ids) {
    ranked_scores.emplace(id, true_scores.at(id));
  }
  const std::vector<std::string> by_score = IdsByDescendingScore(ranked_scores);
  std::unordered_set<std::string> predicted_top(predicted.ordered_ids.begin(),
                                                predicted.ordered_ids.begin() +
                                                    static_cast<long>(k));
  size_t misses = 0;
  for (size_t i = 0; i < k; ++i) {
    if (predicted_top.find(by_score[i]) == predicted_top.end()) ++misses;
  }
  return misses;
}

MetricReport ScoreRanking(const Ranking& predicted,
                          const std::map<std::string, double>& true_scores) {
  MetricReport report;
  report.n_items = predicted.ordered_ids.size();
  report.spearman_rho = Spearman(predicted, true_scores);
  report.ndcg = Ndcg(predicted, true_scores);
  report.tertile_misses = TertileMisses(predicted, true_scores);
  return report;
}

}  // namespace pairrank
