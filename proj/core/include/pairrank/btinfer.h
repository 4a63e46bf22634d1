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

// Bradley-Terry maximum-likelihood inference via minorization-maximization
// (Hunter-style) iterations, with pseudocount regularization for degenerate
// win graphs.

#ifndef PAIRRANK_BTINFER_H_
#define PAIRRANK_BTINFER_H_

#include <cstdint>
#include <vector>

#include "pairrank/types.h"

namespace pairrank {

struct FitConfig {
  // Virtual wins added in each direction on every observed unordered pair.
  // Zero demands a strongly connected win graph (exact MLE or an error).
  double pseudocount = 0.0;
  // Convergence threshold on the max absolute change of mean-centered
  // log-strengths between iterations.
  double tolerance = 1e-10;
  size_t max_iterations = 10000;
  // Record the regularized log-likelihood after every iteration.
  bool track_log_likelihood = false;

  void Validate() const;
};

struct FitResult {
  StrengthVector strengths;
  size_t iterations_used = 0;
  bool converged = false;
  double final_delta = 0.0;
  // Items that appear in no comparison at all; their log-strength is fixed
  // at zero rather than estimated.
  std::vector<std::string> unpaired_ids;
  // Filled only when FitConfig::track_log_likelihood is set: value after
  // the initial guess and after each iteration.
  std::vector<double> log_likelihood_trace;
};

// Counts wins per ordered pair over the cohort's items. Errors on records
// naming unknown ids or comparing an item with itself.
ComparisonGraph AggregateComparisons(
    const std::vector<ComparisonRecord>& records, const Cohort& cohort);

// Regularized Bradley-Terry log-likelihood of mean-centered log-strengths
// (indexed as graph.item_ids()) under the graph's counts plus `pseudocount`
// virtual wins per direction on observed pairs.
double RegularizedLogLikelihood(const ComparisonGraph& graph,
                                double pseudocount,
                                const std::vector<double>& log_strengths);

// Runs the MM update pi_i <- W_i / sum_j n_ij / (pi_i + pi_j) on regularized
// counts from a uniform start until the log-strength change falls below the
// tolerance or the iteration budget runs out. Returns mean-zero strengths.
//
// With pseudocount zero the win graph must be strongly connected on items
// that have at least one comparison; otherwise no MLE exists and a
// ValidationError names the offending component split.
FitResult FitBradleyTerry(const ComparisonGraph& graph, const FitConfig& config);

// P(i ranks higher than j) under the fitted strengths.
double PredictFromFit(const FitResult& result, const std::string& i,
                      const std::string& j);

}  // namespace pairrank

#endif  // PAIRRANK_BTINFER_H_
