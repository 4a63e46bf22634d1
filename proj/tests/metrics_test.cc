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

#include "gtest/gtest.h"
#include "testutil.h"

namespace pairrank {
namespace {

const std::map<std::string, double> kRel321{{"A", 3.0}, {"B", 2.0}, {"C", 1.0}};

TEST(Dcg, HandEvaluatedExample) {
  const Ranking predicted{{"A", "B", "C"}};
  // 3/1 + 2/log2(3) + 1/2
  EXPECT_NEAR(Dcg(predicted, kRel321), 4.7618595071429155, 1e-12);
  EXPECT_NEAR(Dcg(predicted, kRel321), 4.76186, 1e-5);
}

TEST(Dcg, SingleItemIsItsRelevance) {
  const Ranking predicted{{"A"}};
  EXPECT_DOUBLE_EQ(Dcg(predicted, {{"A", 7.25}}), 7.25);
}

TEST(Dcg, AllZeroRelevanceSumsToZero) {
  const Ranking predicted{{"A", "B", "C"}};
  const std::map<std::string, double> zeros{{"A", 0.0}, {"B", 0.0}, {"C", 0.0}};
  EXPECT_DOUBLE_EQ(Dcg(predicted, zeros), 0.0);
}

TEST(Dcg, RejectsNegativeRelevanceAndMissingIds) {
  const Ranking predicted{{"A", "B"}};
  EXPECT_THROW(Dcg(predicted, {{"A", 1.0}, {"B", -0.5}}), ValidationError);
  EXPECT_THROW(Dcg(predicted, {{"A", 1.0}}), ValidationError);
}

TEST(Idcg, MatchesTheSortedSum) {
  EXPECT_NEAR(Idcg(kRel321), 4.7618595071429155, 1e-12);
  // Equal relevances: any order is optimal.
  const double r = 2.5;
  EXPECT_NEAR(Idcg({{"A", r}, {"B", r}, {"C", r}}),
              r * 2.1309297535714578, 1e-12);
  EXPECT_THROW(Idcg({}), ValidationError);
}

TEST(Ndcg, PerfectOrderingIsExactlyOne) {
  const Ranking predicted{{"A", "B", "C"}};
  EXPECT_EQ(Ndcg(predicted, kRel321), 1.0);
}

TEST(Ndcg, HandEvaluatedExamples) {
  // Predicted [B, A, C] against relevances {A:3, B:2, C:1}.
  EXPECT_NEAR(Ndcg(Ranking{{"B", "A", "C"}}, kRel321), 0.9224945116765986,
              1e-12);
  EXPECT_NEAR(Ndcg(Ranking{{"B", "A", "C"}}, kRel321), 0.92250, 1e-5);
  // Fully reversed.
  EXPECT_NEAR(Ndcg(Ranking{{"C", "B", "A"}}, kRel321), 0.7899980042460358,
              1e-12);
}

TEST(Ndcg, AllZeroRelevanceIsAnErrorNotAOne) {
  const Ranking predicted{{"A", "B"}};
  EXPECT_THROW(Ndcg(predicted, {{"A", 0.0}, {"B", 0.0}}), ValidationError);
}

TEST(Ndcg, OneExactlyWhenRelevanceSequenceIsNonIncreasing) {
  Rng rng(99);
  for (int trial = 0; trial < 200; ++trial) {
    const size_t n = 2 + rng.NextBelow(10);
    std::map<std::string, double> relevance;
    Ranking predicted;
    for (size_t i = 0; i < n; ++i) {
      const std::string id = testutil::PaddedId("I", i);
      relevance[id] = static_cast<double>(rng.NextBelow(6));
      predicted.ordered_ids.push_back(id);
    }
    rng.Shuffle(predicted.ordered_ids);
    double total = 0.0;
    for (const auto& [id, value] : relevance) total += value;
    if (total == 0.0) continue;
    std::vector<double> sequence;
    for (const std::string& id : predicted.ordered_ids) {
      sequence.push_back(relevance[id]);
    }
    const bool sorted =
        std::is_sorted(sequence.begin(), sequence.end(), std::greater<double>());
    EXPECT_EQ(Ndcg(predicted, relevance) == 1.0, sorted);
  }
}

TEST(Spearman, PerfectAndReversedOrder) {
  const std::map<std::string, double> scores{
      {"A", 4.0}, {"B", 3.0}, {"C", 2.0}, {"D", 1.0}};
  EXPECT_NEAR(Spearman(Ranking{{"A", "B", "C", "D"}}, scores), 1.0, 1e-12);
  EXPECT_NEAR(Spearman(Ranking{{"D", "C", "B", "A"}}, scores), -1.0, 1e-12);
}

TEST(Spearman, TieCorrectedWorkedExample) {
  const std::map<std::string, double> scores{
      {"A", 4.0}, {"B", 2.0}, {"C", 2.0}, {"D", 1.0}};
  const double rho = Spearman(Ranking{{"A", "C", "B", "D"}}, scores);
  EXPECT_NEAR(rho, 0.9486832980505138, 1e-12);
  EXPECT_NEAR(rho, 0.9487, 1e-4);
}

TEST(Spearman, DegenerateInputsAreErrors) {
  EXPECT_THROW(Spearman(Ranking{{"A"}}, {{"A", 1.0}}), ValidationError);
  EXPECT_THROW(
      Spearman(Ranking{{"A", "B"}}, {{"A", 2.0}, {"B", 2.0}}),
      ValidationError);
}

TEST(Spearman, ReversalFlipsTheSignWithoutTies) {
  Rng rng(321);
  for (int trial = 0; trial < 100; ++trial) {
    const size_t n = 2 + rng.NextBelow(15);
    std::map<std::string, double> scores;
    Ranking predicted;
    for (size_t i = 0; i < n; ++i) {
      const std::string id = testutil::PaddedId("I", i);
      scores[id] = static_cast<double>(i) + rng.NextDouble() * 0.5;
      predicted.ordered_ids.push_back(id);
    }
    rng.Shuffle(predicted.ordered_ids);
    Ranking reversed = predicted;
    std::reverse(reversed.ordered_ids.begin(), reversed.ordered_ids.end());
    EXPECT_NEAR(Spearman(predicted, scores), -Spearman(reversed, scores),
                1e-12);
  }
}

TEST(Metrics, InvariantUnderIdRelabeling) {
  Rng rng(555);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 3 + rng.NextBelow(12);
    std::map<std::string, double> scores;
    Ranking predicted;
    for (size_t i = 0; i < n; ++i) {
      const std::string id = testutil::PaddedId("I", i);
      scores[id] = 1.0 + static_cast<double>(rng.NextBelow(30));
      predicted.ordered_ids.push_back(id);
    }
    rng.Shuffle(predicted.ordered_ids);

    std::map<std::string, double> relabeled_scores;
    Ranking relabeled;
    auto relabel = [](const std::string& id) { return "X" + id; };
    for (const auto& [id, score] : scores) relabeled_scores[relabel(id)] = score;
    for (const std::string& id : predicted.ordered_ids) {
      relabeled.ordered_ids.push_back(relabel(id));
    }
    EXPECT_NEAR(Ndcg(predicted, scores), Ndcg(relabeled, relabeled_scores),
                1e-15);
    EXPECT_NEAR(Spearman(predicted, scores),
                Spearman(relabeled, relabeled_scores), 1e-15);
  }
}

TEST(Metrics, AgreeWithBruteForceReferences) {
  Rng rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    const size_t n = 2 + rng.NextBelow(29);  // n <= 30
    std::map<std::string, double> scores;
    Ranking predicted;
    bool constant = true;
    double first = -1.0;
    for (size_t i = 0; i < n; ++i) {
      const std::string id = testutil::PaddedId("I", i);
      // Integer scores with frequent ties, always nonnegative.
      const double score = static_cast<double>(rng.NextBelow(12));
      if (i == 0) {
        first = score;
      } else if (score != first) {
        constant = false;
      }
      scores[id] = score;
      predicted.ordered_ids.push_back(id);
    }
    if (constant) scores[testutil::PaddedId("I", 0)] += 1.0;
    rng.Shuffle(predicted.ordered_ids);

    double total = 0.0;
    for (const auto& [id, value] : scores) total += value;
    if (total > 0.0) {
      EXPECT_NEAR(Ndcg(predicted, scores),
                  testutil::RefNdcg(predicted, scores), 1e-12);
    }
    EXPECT_NEAR(Spearman(predicted, scores),
                testutil::RefSpearman(predicted, scores), 1e-12);
  }
}

TEST(TertileMisses, PerfectRankingMissesNothing) {
  const std::map<std::string, double> scores{
      {"A", 6.0}, {"B", 5.0}, {"C", 4.0}, {"D", 3.0}, {"E", 2.0}, {"F", 1.0}};
  EXPECT_EQ(TertileMisses(Ranking{{"A", "B", "C", "D", "E", "F"}}, scores), 0u);
}

TEST(TertileMisses, CompleteMissOfTheTopTertile) {
  const std::map<std::string, double> scores{
      {"A", 6.0}, {"B", 5.0}, {"C", 4.0}, {"D", 3.0}, {"E", 2.0}, {"F", 1.0}};
  // n = 6, k = 2; predicted top two are the two lowest-scored items.
  EXPECT_EQ(TertileMisses(Ranking{{"F", "E", "A", "B", "C", "D"}}, scores), 2u);
}

TEST(TertileMisses, SwapAcrossTheBoundaryCostsOne) {
  std::map<std::string, double> scores;
  Ranking predicted;
  for (size_t i = 0; i < 9; ++i) {
    const std::string id = testutil::PaddedId("I", i);
    scores[id] = 9.0 - static_cast<double>(i);
    predicted.ordered_ids.push_back(id);
  }
  // Swap ground-truth positions 3 and 4 (1-based): k = 3, one top item
  // falls out of the predicted top set.
  std::swap(predicted.ordered_ids[2], predicted.ordered_ids[3]);
  EXPECT_EQ(TertileMisses(predicted, scores), 1u);
}

TEST(TertileMisses, NeedsAtLeastThreeItems) {
  EXPECT_THROW(
      TertileMisses(Ranking{{"A", "B"}}, {{"A", 2.0}, {"B", 1.0}}),
      ValidationError);
}

TEST(TertileMisses, BoundaryTiesBreakByAscendingId) {
  // Scores: A=3, B=2, C=2, D=1; k = 1... use n=6 with a tie at the k-th spot.
  const std::map<std::string, double> scores{
      {"A", 9.0}, {"B", 5.0}, {"C", 5.0}, {"D", 4.0}, {"E", 3.0}, {"F", 1.0}};
  // k = 2; ground-truth top set = {A, B} (B beats C on id).
  EXPECT_EQ(TertileMisses(Ranking{{"A", "B", "C", "D", "E", "F"}}, scores), 0u);
  EXPECT_EQ(TertileMisses(Ranking{{"A", "C", "B", "D", "E", "F"}}, scores), 1u);
}

TEST(TertileMisses, ZeroWheneverNdcgIsPerfectOnDistinctScores) {
  Rng rng(888);
  for (int trial = 0; trial < 50; ++trial) {
    const size_t n = 3 + rng.NextBelow(20);
    std::map<std::string, double> scores;
    std::vector<std::pair<double, std::string>> order;
    for (size_t i = 0; i < n; ++i) {
      const std::string id = testutil::PaddedId("I", i);
      const double score = static_cast<double>(i) + 1.0;
      scores[id] = score;
      order.emplace_back(-score, id);
    }
    std::sort(order.begin(), order.end());
    Ranking predicted;
    for (const auto& [neg, id] : order) predicted.ordered_ids.push_back(id);
    ASSERT_EQ(Ndcg(predicted, scores), 1.0);
    EXPECT_EQ(TertileMisses(predicted, scores), 0u);
  }
}

TEST(ScoreRanking, BundlesTheThreeMetrics) {
  const std::map<std::string, double> scores{
      {"A", 3.0}, {"B", 2.0}, {"C", 1.0}};
  const MetricReport report = ScoreRanking(Ranking{{"A", "B", "C"}}, scores);
  EXPECT_EQ(report.n_items, 3u);
  EXPECT_NEAR(report.spearman_rho, 1.0, 1e-12);
  EXPECT_EQ(report.ndcg, 1.0);
  EXPECT_EQ(report.tertile_misses, 0u);
}

}  // namespace
}  // namespace pairrank
