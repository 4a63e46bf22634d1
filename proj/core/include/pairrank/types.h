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

// Shared data model: items, cohorts, pairwise comparison records, win-count
// graphs, strength estimates and rankings. All types are immutable value
// types once constructed; operations on them are pure functions.

#ifndef PAIRRANK_TYPES_H_
#define PAIRRANK_TYPES_H_

#include <cstdint>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

#include "pairrank/errors.h"

namespace pairrank {

// One rankable unit (a session): opaque id, opaque subject key and a
// ground-truth severity score. One subject may own several items.
struct Item {
  std::string id;
  std::string subject_id;
  double true_score = 0.0;
};

// An ordered population of items. Must have unique ids and finite scores;
// ValidateCohort enforces this.
struct Cohort {
  std::vector<Item> items;

  const Item& ItemById(const std::string& id) const;
  bool Contains(const std::string& id) const;
  size_t size() const { return items.size(); }
};

// One observed or predicted pairwise outcome: `winner_id` ranked higher.
struct ComparisonRecord {
  std::string winner_id;
  std::string loser_id;
};

// Aggregated win counts between pairs of items. wins(i, j) is the number of
// comparisons item i won over item j; self-pairs are forbidden.
class ComparisonGraph {
 public:
  ComparisonGraph() = default;
  explicit ComparisonGraph(std::vector<std::string> item_ids);

  void AddWin(const std::string& winner_id, const std::string& loser_id,
              int64_t count = 1);

  int64_t Wins(size_t winner_index, size_t loser_index) const;
  int64_t Wins(const std::string& winner_id, const std::string& loser_id) const;
  // Total comparisons item `index` participated in, both directions.
  int64_t Comparisons(size_t index) const;
  int64_t TotalWins(size_t index) const;
  int64_t TotalComparisons() const;

  size_t IndexOf(const std::string& id) const;
  const std::vector<std::string>& item_ids() const { return item_ids_; }
  size_t size() const { return item_ids_.size(); }

 private:
  std::vector<std::string> item_ids_;
  std::unordered_map<std::string, size_t> index_;
  // Dense row-major win counts; populations here are small.
  std::vector<int64_t> wins_;
};

// Inferred log-strength per item, normalized to mean zero over its ids.
struct StrengthVector {
  std::map<std::string, double> log_strength;

  // Throws ValidationError unless all values are finite and the mean is
  // zero to within 1e-12.
  void Validate() const;
};

// Item ids sorted from highest to lowest rank; position 1 = most severe.
struct Ranking {
  std::vector<std::string> ordered_ids;

  size_t size() const { return ordered_ids.size(); }
};

// Returns the cohort unchanged if every invariant holds. Errors on empty
// cohorts, duplicate ids and non-finite scores.
const Cohort& ValidateCohort(const Cohort& cohort);

// Sorts ids by descending log-strength; exact ties break by ascending id.
Ranking RankingFromStrengths(const StrengthVector& strengths);

// As above but ranks exactly the cohort's ids; throws ValidationError if the
// strength vector is missing any of them.
Ranking RankingFromStrengths(const StrengthVector& strengths,
                             const Cohort& cohort);

}  // namespace pairrank

#endif  // PAIRRANK_TYPES_H_
