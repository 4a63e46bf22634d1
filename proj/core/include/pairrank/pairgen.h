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

#ifndef PAIRRANK_PAIRGEN_H_
#define PAIRRANK_PAIRGEN_H_

#include <cstddef>
#include <vector>

#include "pairrank/types.h"

namespace pairrank {

// One labeled training/evaluation instance. `label` is true iff the first
// item's true score is strictly greater than the second's. Tied pairs are
// never materialized.
struct LabeledPair {
  std::string first_id;
  std::string second_id;
  bool label = false;
};

enum class PairOrdering {
  // Each unordered pair once, first = lexicographically smaller id.
  kUnorderedOnce,
  // Each pair in both orientations, with complementary labels.
  kBothOrders,
};

// Emits every pair of items with strictly different true scores; pairs with
// equal scores are skipped entirely (they still appear in pairs against
// other items). Output is sorted by (first_id, second_id).
std::vector<LabeledPair> GeneratePairs(const Cohort& cohort,
                                       PairOrdering ordering);

// Number of unordered pairs excluded because of exactly equal scores.
size_t CountExcludedTies(const Cohort& cohort);

}  // namespace pairrank

#endif  // PAIRRANK_PAIRGEN_H_
