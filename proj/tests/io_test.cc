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

#include <sstream>

#include "gtest/gtest.h"
#include "json.hpp"
#include "testutil.h"

namespace pairrank {
namespace {

TEST(FormatDouble, CanonicalRendering) {
  EXPECT_EQ(io::FormatDouble(42.0), "42");
  EXPECT_EQ(io::FormatDouble(-3.0), "-3");
  EXPECT_EQ(io::FormatDouble(0.5), "0.5");
  EXPECT_EQ(io::FormatDouble(42.5), "42.5");
  EXPECT_EQ(io::FormatDouble(0.0), "0");
  // Shortest round-trip: parsing the string recovers the exact double.
  for (double value : {0.1, 1.0 / 3.0, 1e-9, 123456.789, 2e21}) {
    EXPECT_EQ(std::stod(io::FormatDouble(value)), value);
  }
}

TEST(CohortCsv, SerializeParseRoundTripIsByteIdentical) {
  Cohort cohort = testutil::MakeCohort(12, 4, 3);
  cohort.items[0].true_score = 42.5;  // exercise a fractional score
  const std::string first = io::CohortToCsv(cohort);
  std::istringstream in(first);
  const Cohort parsed = io::ParseCohortCsv(in, "test.csv");
  EXPECT_EQ(io::CohortToCsv(parsed), first);
  ASSERT_EQ(parsed.items.size(), cohort.items.size());
  EXPECT_EQ(parsed.items[0].id, cohort.items[0].id);
  EXPECT_EQ(parsed.items[0].subject_id, cohort.items[0].subject_id);
  EXPECT_EQ(parsed.items[0].true_score, cohort.items[0].true_score);
}

TEST(CohortCsv, HeaderAndVersionCommentAreWritten) {
  const Cohort cohort{{{"A", "S1", 19.0}}};
  const std::string csv = io::CohortToCsv(cohort);
  EXPECT_EQ(csv, "# pairrank-cohort-v1\nid,subject_id,true_score\nA,S1,19\n");
}

TEST(CohortCsv, NonCanonicalScoresNormalize) {
  std::istringstream in(
      "id,subject_id,true_score\nA,S1,42.50\nB,S2,7\n");
  const Cohort parsed = io::ParseCohortCsv(in, "x.csv");
  EXPECT_EQ(parsed.items[0].true_score, 42.5);
  const std::string normalized = io::CohortToCsv(parsed);
  EXPECT_NE(normalized.find("A,S1,42.5\n"), std::string::npos);
}

TEST(CohortCsv, ParseErrorsCarryFileAndLine) {
  std::istringstream missing_header("A,S1,19\n");
  EXPECT_THROW(io::ParseCohortCsv(missing_header, "bad.csv"), ParseError);

  std::istringstream bad_fields(
      "id,subject_id,true_score\nA,S1\n");
  try {
    io::ParseCohortCsv(bad_fields, "bad.csv");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("bad.csv:2"), std::string::npos);
  }

  std::istringstream bad_score(
      "id,subject_id,true_score\nA,S1,abc\n");
  EXPECT_THROW(io::ParseCohortCsv(bad_score, "bad.csv"), ParseError);

  std::istringstream duplicate(
      "id,subject_id,true_score\nA,S1,1\nA,S2,2\n");
  EXPECT_THROW(io::ParseCohortCsv(duplicate, "bad.csv"), ParseError);

  std::istringstream empty("");
  EXPECT_THROW(io::ParseCohortCsv(empty, "bad.csv"), ParseError);
}

TEST(ComparisonsJsonl, RoundTripAndHeader) {
  const std::vector<ComparisonRecord> records{{"A", "B"}, {"C", "A"}};
  const std::string text = io::ComparisonsToJsonl(records);
  EXPECT_EQ(text.rfind("# pairrank-comparisons-v1\n", 0), 0u);
  std::istringstream in(text);
  const auto parsed = io::ParseComparisonsJsonl(in, "c.jsonl");
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_EQ(parsed[0].winner_id, "A");
  EXPECT_EQ(parsed[0].loser_id, "B");
  EXPECT_EQ(parsed[1].winner_id, "C");
}

TEST(ComparisonsJsonl, AcceptsHeaderlessInputAndReportsBadLines) {
  std::istringstream plain("{\"winner\":\"A\",\"loser\":\"B\"}\n");
  EXPECT_EQ(io::ParseComparisonsJsonl(plain, "c.jsonl").size(), 1u);

  std::istringstream bad("{\"winner\":\"A\"}\n");
  try {
    io::ParseComparisonsJsonl(bad, "c.jsonl");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("c.jsonl:1"), std::string::npos);
  }

  std::istringstream garbage("not json\n");
  EXPECT_THROW(io::ParseComparisonsJsonl(garbage, "c.jsonl"), ParseError);
}

TEST(PairsJsonl, RoundTripWithBinaryLabels) {
  const std::vector<LabeledPair> pairs{{"A", "B", true}, {"B", "C", false}};
  const std::string text = io::PairsToJsonl(pairs);
  EXPECT_NE(text.find("\"label\":1"), std::string::npos);
  EXPECT_NE(text.find("\"label\":0"), std::string::npos);
  std::istringstream in(text);
  const auto parsed = io::ParsePairsJsonl(in, "p.jsonl");
  ASSERT_EQ(parsed.size(), 2u);
  EXPECT_TRUE(parsed[0].label);
  EXPECT_FALSE(parsed[1].label);
}

TEST(ComparatorConfigJson, MinimalAndFullConfigs) {
  const ComparatorConfig minimal =
      io::ComparatorConfigFromJson("{\"kind\": \"oracle\"}", "cfg");
  EXPECT_EQ(minimal.kind, ComparatorKind::kOracle);
  EXPECT_EQ(minimal.seed, 0u);

  const ComparatorConfig full = io::ComparatorConfigFromJson(
      "{\"kind\": \"bt_noisy\", \"beta\": 0.25, \"seed\": 9}", "cfg");
  EXPECT_EQ(full.kind, ComparatorKind::kBtNoisy);
  EXPECT_DOUBLE_EQ(full.beta, 0.25);
  EXPECT_EQ(full.seed, 9u);

  // Round trip through the writer.
  const ComparatorConfig again =
      io::ComparatorConfigFromJson(io::ComparatorConfigToJson(full), "cfg");
  EXPECT_EQ(again.kind, full.kind);
  EXPECT_DOUBLE_EQ(again.beta, full.beta);
}

TEST(ComparatorConfigJson, RejectsBadInput) {
  EXPECT_THROW(io::ComparatorConfigFromJson("{\"beta\": 1}", "cfg"),
               ParseError);
  EXPECT_THROW(io::ComparatorConfigFromJson("{\"kind\": \"cnn\"}", "cfg"),
               ParseError);
  EXPECT_THROW(
      io::ComparatorConfigFromJson(
          "{\"kind\": \"flip\", \"accuracy\": 0.3}", "cfg"),
      ParseError);
  EXPECT_THROW(
      io::ComparatorConfigFromJson("{\"kind\": \"oracle\", \"betta\": 1}",
                                   "cfg"),
      ParseError);
  EXPECT_THROW(io::ComparatorConfigFromJson("{not json", "cfg"), ParseError);
}

TEST(ExperimentConfigJson, DefaultsMaterialize) {
  const ExperimentConfig config = io::ExperimentConfigFromJson(
      "{\"comparator\": {\"kind\": \"oracle\"}}", "cfg");
  EXPECT_EQ(config.folds, 3u);
  EXPECT_DOUBLE_EQ(config.percentile, 100.0);
  EXPECT_EQ(config.pair_ordering, PairOrdering::kUnorderedOnce);
  EXPECT_DOUBLE_EQ(config.fit.pseudocount, 0.1);
  EXPECT_EQ(config.master_seed, 0u);
}

TEST(ExperimentConfigJson, RoundTrip) {
  ExperimentConfig config;
  config.folds = 4;
  config.percentile = 80.0;
  config.pair_ordering = PairOrdering::kBothOrders;
  config.master_seed = 99;
  config.comparator.kind = ComparatorKind::kLogistic;
  config.comparator.feature_dim = 16;
  config.comparator.noise_scale = 0.5;
  config.fit.pseudocount = 0.25;
  const ExperimentConfig parsed = io::ExperimentConfigFromJson(
      io::ExperimentConfigToJson(config), "cfg");
  EXPECT_EQ(parsed.folds, 4u);
  EXPECT_DOUBLE_EQ(parsed.percentile, 80.0);
  EXPECT_EQ(parsed.pair_ordering, PairOrdering::kBothOrders);
  EXPECT_EQ(parsed.master_seed, 99u);
  EXPECT_EQ(parsed.comparator.kind, ComparatorKind::kLogistic);
  EXPECT_EQ(parsed.comparator.feature_dim, 16u);
  EXPECT_DOUBLE_EQ(parsed.fit.pseudocount, 0.25);
}

TEST(LogisticPairModelJson, RoundTrip) {
  LogisticPairModel model;
  model.weights = {0.25, -1.5, 3.0};
  model.hyper.learning_rate = 0.1;
  model.hyper.epochs = 42;
  model.hyper.seed = 7;
  model.final_loss = 0.31;
  const std::string text = io::LogisticPairModelToJson(model);
  const LogisticPairModel parsed = io::LogisticPairModelFromJson(text, "m");
  EXPECT_EQ(parsed.weights, model.weights);
  EXPECT_DOUBLE_EQ(parsed.bias, 0.0);
  EXPECT_DOUBLE_EQ(parsed.hyper.learning_rate, 0.1);
  EXPECT_EQ(parsed.hyper.epochs, 42u);
  EXPECT_EQ(parsed.hyper.seed, 7u);
  EXPECT_DOUBLE_EQ(parsed.final_loss, 0.31);
  EXPECT_THROW(io::LogisticPairModelFromJson("{}", "m"), ParseError);
}

TEST(FitResultJson, ExactSchema) {
  FitResult result;
  result.strengths.log_strength = {{"A", 0.5}, {"B", -0.5}};
  result.iterations_used = 12;
  result.converged = true;
  const auto object = nlohmann::json::parse(io::FitResultToJson(result));
  EXPECT_EQ(object.size(), 3u);
  EXPECT_DOUBLE_EQ(object["strengths"]["A"].get<double>(), 0.5);
  EXPECT_EQ(object["iterations"].get<int>(), 12);
  EXPECT_TRUE(object["converged"].get<bool>());
}

TEST(MetricReportJson, ExactFieldNames) {
  MetricReport report;
  report.spearman_rho = 0.75;
  report.ndcg = 0.9;
  report.tertile_misses = 2;
  report.n_items = 30;
  const auto object = nlohmann::json::parse(io::MetricReportToJson(report));
  EXPECT_EQ(object.size(), 4u);
  EXPECT_TRUE(object.contains("spearman_rho"));
  EXPECT_TRUE(object.contains("ndcg"));
  EXPECT_TRUE(object.contains("tertile_misses"));
  EXPECT_TRUE(object.contains("n_items"));
}

TEST(ExperimentReportJson, RoundTrip) {
  ExperimentReport report;
  report.config.comparator.kind = ComparatorKind::kBtNoisy;
  report.config.comparator.beta = 0.1;
  report.config.percentile = 90.0;
  report.per_fold.push_back(MetricReport{0.9, 0.95, 1, 20});
  report.per_fold.push_back(MetricReport{0.8, 0.85, 2, 21});
  report.fold_converged = {true, true};
  report.mean_spearman = 0.85;
  report.mean_ndcg = 0.9;
  report.mean_tertile_misses = 1.5;
  report.master_seed = 7;
  report.cohort_hash = "0123456789abcdef";
  report.n_items = 41;
  report.n_items_subsampled = 36;

  const std::string text = io::ExperimentReportToJson(report);
  const ExperimentReport parsed = io::ExperimentReportFromJson(text, "rep");
  EXPECT_EQ(parsed.per_fold.size(), 2u);
  EXPECT_DOUBLE_EQ(parsed.per_fold[1].ndcg, 0.85);
  EXPECT_DOUBLE_EQ(parsed.mean_spearman, 0.85);
  EXPECT_EQ(parsed.cohort_hash, "0123456789abcdef");
  EXPECT_EQ(parsed.n_items_subsampled, 36u);
  // Re-serialization is stable.
  EXPECT_EQ(io::ExperimentReportToJson(parsed), text);
}

TEST(AblationCsvRow, TableRowFormat) {
  ExperimentReport report;
  report.config.comparator.kind = ComparatorKind::kBtNoisy;
  report.config.percentile = 90.0;
  report.mean_spearman = 0.6465;
  report.mean_ndcg = 0.6242;
  report.mean_tertile_misses = 1.0;
  EXPECT_EQ(io::AblationCsvRow(report), "bt_noisy,90,0.6465,0.6242,1.00");
}

TEST(PairOrderingNames, RoundTrip) {
  EXPECT_EQ(io::PairOrderingFromName("unordered_once"),
            PairOrdering::kUnorderedOnce);
  EXPECT_EQ(io::PairOrderingFromName("both_orders"), PairOrdering::kBothOrders);
  EXPECT_EQ(io::PairOrderingName(PairOrdering::kBothOrders), "both_orders");
  EXPECT_THROW(io::PairOrderingFromName("sideways"), ValidationError);
}

}  // namespace
}  // namespace pairrank
