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

#include <benchmark/benchmark.h>

#include <map>
#include <string>
#include <vector>

#include "pairrank/btinfer.h"
#include "pairrank/comparators.h"
#include "pairrank/evalharness.h"
#include "pairrank/metrics.h"
#include "pairrank/pairgen.h"
#include "pairrank/rng.h"
#include "pairrank/types.h"

namespace pairrank {
namespace {

std::string BenchId(size_t i) {
  char buffer[16];
  std::snprintf(buffer, sizeof(buffer), "I%05zu", i);
  return buffer;
}

Cohort BenchCohort(size_t n, uint64_t seed) {
  Rng rng(seed);
  Cohort cohort;
  for (size_t i = 0; i < n; ++i) {
    Item item;
    item.id = BenchId(i);
    item.subject_id = "S" + std::to_string(i % (n / 3 + 1));
    item.true_score = static_cast<double>(19 + rng.NextBelow(44));
    cohort.items.push_back(std::move(item));
  }
  return cohort;
}

// Single-outcome round-robin tournament with noisy winners.
ComparisonGraph BenchGraph(size_t n, uint64_t seed) {
  Rng rng(seed);
  std::vector<std::string> ids;
  for (size_t i = 0; i < n; ++i) ids.push_back(BenchId(i));
  ComparisonGraph graph(ids);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      const double p = BtProbability(0.05 * static_cast<double>(i),
                                     0.05 * static_cast<double>(j));
      if (rng.NextDouble() < p) {
        graph.AddWin(ids[i], ids[j]);
      } else {
        graph.AddWin(ids[j], ids[i]);
      }
    }
  }
  return graph;
}

void BM_GeneratePairs(benchmark::State& state) {
  const Cohort cohort = BenchCohort(static_cast<size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        GeneratePairs(cohort, PairOrdering::kUnorderedOnce));
  }
}
BENCHMARK(BM_GeneratePairs)->Arg(40)->Arg(140);

void BM_FitBradleyTerry(benchmark::State& state) {
  const ComparisonGraph graph =
      BenchGraph(static_cast<size_t>(state.range(0)), 2);
  FitConfig config;
  config.pseudocount = 0.1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(FitBradleyTerry(graph, config));
  }
}
BENCHMARK(BM_FitBradleyTerry)->Arg(20)->Arg(50)->Arg(140);

void BM_Ndcg(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(3);
  std::map<std::string, double> relevance;
  Ranking predicted;
  for (size_t i = 0; i < n; ++i) {
    const std::string id = BenchId(i);
    relevance[id] = static_cast<double>(rng.NextBelow(60));
    predicted.ordered_ids.push_back(id);
  }
  rng.Shuffle(predicted.ordered_ids);
  relevance[BenchId(0)] += 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Ndcg(predicted, relevance));
  }
}
BENCHMARK(BM_Ndcg)->Arg(140)->Arg(1000);

void BM_Spearman(benchmark::State& state) {
  const size_t n = static_cast<size_t>(state.range(0));
  Rng rng(4);
  std::map<std::string, double> scores;
  Ranking predicted;
  for (size_t i = 0; i < n; ++i) {
    const std::string id = BenchId(i);
    scores[id] = static_cast<double>(rng.NextBelow(60));
    predicted.ordered_ids.push_back(id);
  }
  rng.Shuffle(predicted.ordered_ids);
  scores[BenchId(0)] += 1.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(Spearman(predicted, scores));
  }
}
BENCHMARK(BM_Spearman)->Arg(140)->Arg(1000);

void BM_RunExperimentNoisy(benchmark::State& state) {
  const Cohort cohort = BenchCohort(static_cast<size_t>(state.range(0)), 5);
  ExperimentConfig config;
  config.comparator.kind = ComparatorKind::kBtNoisy;
  config.comparator.beta = 0.1;
  config.master_seed = 7;
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunExperiment(cohort, config));
  }
}
BENCHMARK(BM_RunExperimentNoisy)->Arg(60)->Arg(140)
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace pairrank

BENCHMARK_MAIN();
