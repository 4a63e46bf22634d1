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

#include "pairrank/types.h"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace pairrank {

const Item& Cohort::ItemById(const std::string& id) const {
  for (const Item& item : items) {
    if (item.id == id) return item;
  }
  throw ValidationError("unknown item id: " + id);
}

bool Cohort::Contains(const std::string& id) const {
  return std::any_of(items.begin(), items.end(),
                     [&](const Item& item) { return item.id == id; });
}

ComparisonGraph::ComparisonGraph(std::vector<std::string> item_ids)
    : item_ids_(std::move(item_ids)) {
  index_.reserve(item_ids_.size());
  for (size_t i = 0; i < item_ids_.size(); ++i) {
    if (!index_.emplace(item_ids_[i], i).second) {
      throw ValidationError("duplicate item id in comparison graph: " +
                            item_ids_[i]);
    }
  }
  wins_.assign(item_ids_.size() * item_ids_.size(), 0);
}

void ComparisonGraph::AddWin(const std::string& winner_id,
                             const std::string& loser_id, int64_t count) {
  if (winner_id == loser_id) {
    throw ValidationError("self-pair comparison: " + winner_id);
  }
  if (count < 0) {
    throw ValidationError("negative win count for pair (" + winner_id + ", " +
                          loser_id + ")");
  }
  const size_t w = IndexOf(winner_id);
  const size_t l = IndexOf(loser_id);
  wins_[w * item_ids_.size() + l] += count;
}

int64_t ComparisonGraph::Wins(size_t winner_index, size_t loser_index) const {
  return wins_[winner_index * item_ids_.size() + loser_index];
}

int64_t ComparisonGraph::Wins(const std::string& winner_id,
                              const std::string& loser_id) const {
  return Wins(IndexOf(winner_id), IndexOf(loser_id));
}

int64_t ComparisonGraph::Comparisons(size_t index) const {
  int64_t total = 0;
  for (size_t j = 0; j < item_ids_.size(); ++j) {
    if (j == index) continue;
    total += Wins(index, j) + Wins(j, index);
  }
  return total;
}

int64_t ComparisonGraph::TotalWins(size_t index) const {
  int64_t total = 0;
  for (size_t j = 0; j < item_ids_.size(); ++j) {
    if (j == index) continue;
    total += Wins(index, j);
  }
  return total;
}

int64_t ComparisonGraph::TotalComparisons() const {
  int64_t total = 0;
  for (int64_t w : wins_) total += w;
  return total;
}

size_t ComparisonGraph::IndexOf(const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) {
    throw ValidationError("unknown item id in comparison graph: " + id);
  }
  return it->second;
}

void StrengthVector::Validate() const {
  double sum = 0.0;
  for (const auto& [id, value] : log_strength) {
    if (!std::isfinite(value)) {
      throw ValidationError("non-finite log-strength for item " + id);
    }
    sum += value;
  }
  if (!log_strength.empty()) {
    const double mean = sum / static_cast<double>(log_strength.size());
    if (std::abs(mean) > 1e-12) {
      throw ValidationError("log-strengths are not mean-zero normalized");
    }
  }
}

const Cohort& ValidateCohort(const Cohort& cohort) {
  if (cohort.items.empty()) {
    throw ValidationError("cohort is empty");
  }
  std::unordered_set<std::string> seen;
  seen.reserve(cohort.items.size());
  for (const Item& item : cohort.items) {
    if (!seen.insert(item.id).second) {
      throw ValidationError("duplicate item id: " + item.id);
    }
    if (!std::isfinite(item.true_score)) {
      throw ValidationError("non-finite true_score for item " + item.id);
    }
  }
  return cohort;
}

namespace {

Ranking RankIds(std::vector<std::string> ids, const StrengthVector& strengths) {
  std::sort(ids.begin(), ids.end(),
            [&](const std::string& a, const std::string& b) {
              const double sa = strengths.log_strength.at(a);
              const double sb = strengths.log_strength.at(b);
              if (sa != sb) return sa > sb;
              return a < b;
            });
  return Ranking{std::move(ids)};
}

}  // namespace

Ranking RankingFromStrengths(const StrengthVector& strengths) {
  std::vector<std::string> ids;
  ids.reserve(strengths.log_strength.size());
  for (const auto& [id, value] : strengths.log_strength) ids.push_back(id);
  return RankIds(std::move(ids), strengths);
}

Ranking RankingFromStrengths(const StrengthVector& strengths,
                             const Cohort& cohort) {
  std::vector<std::string> ids;
  ids.reserve(cohort.items.size());
  for (const Item& item : cohort.items) {
    if (strengths.log_strength.find(item.id) == strengths.log_strength.end()) {
      throw ValidationError("strength vector is missing item " + item.id);
    }
    ids.push_back(item.id);
  }
  return RankIds(std::move(ids), strengths);
}

}  // namespace pairrank
