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

#include "pairrank/pairgen.h"

#include <algorithm>
#include <map>

namespace pairrank {

std::vector<LabeledPair> GeneratePairs(const Cohort& cohort,
                                       PairOrdering ordering) {
  ValidateCohort(cohort);
  std::vector<const Item*> sorted;
  sorted.reserve(cohort.items.size());
  for (const Item& item : cohort.items) sorted.push_back(&item);
  std::sort(sorted.begin(), sorted.end(),
            [](const Item* a, const Item* b) { return a->id < b->id; });

  std::vector<LabeledPair> pairs;
  for (size_t i = 0; i < sorted.size(); ++i) {
    for (size_t j = 0; j < sorted.size(); ++j) {
      if (ordering == PairOrdering::kUnorderedOnce ? j <= i : j == i) continue;
      const Item& first = *sorted[i];
      const Item& second = *sorted[j];
      if (first.true_score == second.true_score) continue;
      pairs.push_back(LabeledPair{first.id, second.id,
                                  first.true_score > second.true_score});
    }
  }
  return pairs;
}

size_t CountExcludedTies(const Cohort& cohort) {
  ValidateCohort(cohort);
  std::map<double, size_t> score_counts;
  for (const Item& item : cohort.items) ++score_counts[item.true_score];
  size_t ties = 0;
  for (const auto& [score, count] : score_counts) {
    ties += count * (count - 1) / 2;
  }
  return ties;
}

}  // namespace pairrank
