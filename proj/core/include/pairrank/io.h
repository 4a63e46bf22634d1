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

// File formats and serialization. Cohorts travel as CSV, comparison logs
// and labeled pairs as JSON-lines, configs and reports as JSON. All writers
// emit a canonical form: LF line endings, no trailing spaces, shortest
// round-trip number rendering, versioned headers/fields.

#ifndef PAIRRANK_IO_H_
#define PAIRRANK_IO_H_

#include <iosfwd>
#include <string>
#include <vector>

#include "pairrank/btinfer.h"
#include "pairrank/comparators.h"
#include "pairrank/evalharness.h"
#include "pairrank/pairgen.h"
#include "pairrank/types.h"

namespace pairrank {
namespace io {

// Shortest decimal string that parses back to exactly the same double;
// integral values render without a decimal point.
std::string FormatDouble(double value);

std::string ReadFile(const std::string& path);
void WriteFile(const std::string& path, const std::string& content);

// --- Cohort CSV: "# pairrank-cohort-v1" header comment, then
//     "id,subject_id,true_score" and one row per item. ---
Cohort ParseCohortCsv(std::istream& in, const std::string& name);
Cohort ReadCohortCsv(const std::string& path);
std::string CohortToCsv(const Cohort& cohort);

// --- Comparison log JSON-lines: "# pairrank-comparisons-v1" header
//     comment, then one {"winner": ..., "loser": ...} object per line. ---
std::vector<ComparisonRecord> ParseComparisonsJsonl(std::istream& in,
                                                    const std::string& name);
std::vector<ComparisonRecord> ReadComparisonsJsonl(const std::string& path);
std::string ComparisonsToJsonl(const std::vector<ComparisonRecord>& records);

// --- Labeled pairs JSON-lines: {"first": ..., "second": ..., "label": 0|1}. ---
std::vector<LabeledPair> ParsePairsJsonl(std::istream& in,
                                         const std::string& name);
std::string PairsToJsonl(const std::vector<LabeledPair>& pairs);

// --- Comparator and experiment configuration JSON. ---
ComparatorConfig ComparatorConfigFromJson(const std::string& text,
                                          const std::string& name);
ComparatorConfig ReadComparatorConfig(const std::string& path);
std::string ComparatorConfigToJson(const ComparatorConfig& config);

ExperimentConfig ExperimentConfigFromJson(const std::string& text,
                                          const std::string& name);
ExperimentConfig ReadExperimentConfig(const std::string& path);
std::string ExperimentConfigToJson(const ExperimentConfig& config);

// --- Trained logistic pair model JSON (weights, bias, hyperparameters). ---
std::string LogisticPairModelToJson(const LogisticPairModel& model);
LogisticPairModel LogisticPairModelFromJson(const std::string& text,
                                            const std::string& name);

// --- Results. ---
std::string FitResultToJson(const FitResult& result);
std::string MetricReportToJson(const MetricReport& report);
std::string ExperimentReportToJson(const ExperimentReport& report);
ExperimentReport ExperimentReportFromJson(const std::string& text,
                                          const std::string& name);

// One "comparator,percentile,rho,ndcg,tertile_misses" row (no header).
std::string AblationCsvRow(const ExperimentReport& report);

std::string PairOrderingName(PairOrdering ordering);
PairOrdering PairOrderingFromName(const std::string& name);

}  // namespace io
}  // namespace pairrank

#endif  // PAIRRANK_IO_H_
