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

#include "pairrank/btinfer.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stack>

#include "pairrank/comparators.h"

namespace pairrank {

namespace {

// ln(e^a + e^b) without overflow.
double LogAddExp(double a, double b) {
  const double hi = std::max(a, b);
  const double lo = std::min(a, b);
  return hi + std::log1p(std::exp(lo - hi));
}

std::string JoinIds(const std::vector<std::string>& ids, size_t limit = 10) {
  std::ostringstream out;
  out << "{";
  for (size_t i = 0; i < ids.size() && i < limit; ++i) {
    if (i > 0) out << ", ";
    out << ids[i];
  }
  if (ids.size() > limit) out << ", ... (" << ids.size() << " items)";
  out << "}";
  return out.str();
}

// Iterative Tarjan strongly-connected components over the participant
// subgraph, edge u -> v iff u has at least one real win over v.
std::vector<std::vector<size_t>> StronglyConnectedComponents(
    const ComparisonGraph& graph, const std::vector<size_t>& participants) {
  const size_t n = participants.size();
  std::vector<std::vector<size_t>> adjacency(n);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = 0; b < n; ++b) {
      if (a != b && graph.Wins(participants[a], participants[b]) > 0) {
        adjacency[a].push_back(b);
      }
    }
  }

  std::vector<int> index(n, -1);
  std::vector<int> lowlink(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<size_t> stack;
  std::vector<std::vector<size_t>> components;
  int next_index = 0;

  struct Frame {
    size_t node;
    size_t edge = 0;
  };

  for (size_t root = 0; root < n; ++root) {
    if (index[root] != -1) continue;
    std::stack<Frame> frames;
    frames.push({root});
    while (!frames.empty()) {
      Frame& frame = frames.top();
      const size_t u = frame.node;
      if (frame.edge == 0) {
        index[u] = lowlink[u] = next_index++;
        stack.push_back(u);
        on_stack[u] = true;
      }
      bool descended = false;
      while (frame.edge < adjacency[u].size()) {
        const size_t v = adjacency[u][frame.edge++];
        if (index[v] == -1) {
          frames.push({v});
          descended = true;
          break;
        }
        if (on_stack[v]) lowlink[u] = std::min(lowlink[u], index[v]);
      }
      if (descended) continue;
      if (lowlink[u] == index[u]) {
        std::vector<size_t> component;
        while (true) {
          const size_t w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
          if (w == u) break;
        }
        components.push_back(std::move(component));
      }
      frames.pop();
      if (!frames.empty()) {
        const size_t parent = frames.top().node;
        lowlink[parent] = std::min(lowlink[parent], lowlink[u]);
      }
    }
  }
  return components;
}

void RequireStronglyConnected(const ComparisonGraph& graph,
                              const std::vector<size_t>& participants) {
  auto components = StronglyConnectedComponents(graph, participants);
  if (components.size() <= 1) return;

  // Find a component with no incoming edges: its members are never beaten
  // from outside, so their likelihood has no finite maximizer.
  std::vector<int> component_of(participants.size(), -1);
  for (size_t c = 0; c < components.size(); ++c) {
    for (size_t member : components[c]) component_of[member] = static_cast<int>(c);
  }
  std::vector<bool> has_incoming(components.size(), false);
  for (size_t a = 0; a < participants.size(); ++a) {
    for (size_t b = 0; b < participants.size(); ++b) {
      if (a == b || component_of[a] == component_of[b]) continue;
      if (graph.Wins(participants[a], participants[b]) > 0) {
        has_incoming[component_of[b]] = true;
      }
    }
  }
  size_t source = 0;
  while (source < components.size() && has_incoming[source]) ++source;
  if (source == components.size()) source = 0;  // disconnected halves

  std::vector<std::string> inside, outside;
  for (size_t a = 0; a < participants.size(); ++a) {
    const std::string& id = graph.item_ids()[participants[a]];
    if (component_of[a] == static_cast<int>(source)) {
      inside.push_back(id);
    } else {
      outside.push_back(id);
    }
  }
  std::sort(inside.begin(), inside.end());
  std::sort(outside.begin(), outside.end());
  throw ValidationError(
      "Bradley-Terry MLE does not exist: win graph is not strongly "
      "connected; items " +
      JoinIds(inside) + " are never beaten by " + JoinIds(outside) +
      "; rerun with pseudocount > 0");
}

}  // namespace

void FitConfig::Validate() const {
  if (!(pseudocount >= 0.0) || !std::isfinite(pseudocount)) {
    throw ValidationError("pseudocount must be finite and >= 0");
  }
  if (!(tolerance > 0.0)) {
    throw ValidationError("tolerance must be > 0");
  }
  if (max_iterations < 1) {
    throw ValidationError("max_iterations must be >= 1");
  }
}

ComparisonGraph AggregateComparisons(
    const std::vector<ComparisonRecord>& records, const Cohort& cohort) {
  ValidateCohort(cohort);
  std::vector<std::string> ids;
  ids.reserve(cohort.items.size());
  for (const Item& item : cohort.items) ids.push_back(item.id);
  ComparisonGraph graph(std::move(ids));
  for (const ComparisonRecord& record : records) {
    graph.AddWin(record.winner_id, record.loser_id);
  }
  return graph;
}

double RegularizedLogLikelihood(const ComparisonGraph& graph,
                                double pseudocount,
                                const std::vector<double>& log_strengths) {
  if (log_strengths.size() != graph.size()) {
    throw ValidationError("log-strength vector size does not match graph");
  }
  double ll = 0.0;
  for (size_t i = 0; i < graph.size(); ++i) {
    for (size_t j = i + 1; j < graph.size(); ++j) {
      const int64_t wij = graph.Wins(i, j);
      const int64_t wji = graph.Wins(j, i);
      if (wij + wji == 0) continue;
      const double regularized_ij = static_cast<double>(wij) + pseudocount;
      const double regularized_ji = static_cast<double>(wji) + pseudocount;
      const double denom = LogAddExp(log_strengths[i], log_strengths[j]);
      ll += regularized_ij * (log_strengths[i] - denom);
      ll += regularized_ji * (log_strengths[j] - denom);
    }
  }
  return ll;
}

FitResult FitBradleyTerry(const ComparisonGraph& graph,
                          const FitConfig& config) {
  config.Validate();
  if (graph.size() == 0) {
    throw ValidationError("comparison graph has no items");
  }
  if (graph.TotalComparisons() == 0) {
    throw ValidationError("comparison graph has no comparisons");
  }

  std::vector<size_t> participants;
  FitResult result;
  for (size_t i = 0; i < graph.size(); ++i) {
    if (graph.Comparisons(i) > 0) {
      participants.push_back(i);
    } else {
      result.unpaired_ids.push_back(graph.item_ids()[i]);
    }
  }
  if (config.pseudocount == 0.0) {
    RequireStronglyConnected(graph, participants);
  }

  const size_t n = participants.size();
  // Regularized counts over observed pairs: per participant, the win total
  // W_i and the list of (opponent, n_ij) with n_ij the pair's total count.
  std::vector<double> win_totals(n, 0.0);
  std::vector<std::vector<std::pair<size_t, double>>> opponents(n);
  for (size_t a = 0; a < n; ++a) {
    for (size_t b = a + 1; b < n; ++b) {
      const int64_t wab = graph.Wins(participants[a], participants[b]);
      const int64_t wba = graph.Wins(participants[b], participants[a]);
      if (wab + wba == 0) continue;
      const double reg_ab = static_cast<double>(wab) + config.pseudocount;
      const double reg_ba = static_cast<double>(wba) + config.pseudocount;
      win_totals[a] += reg_ab;
      win_totals[b] += reg_ba;
      opponents[a].emplace_back(b, reg_ab + reg_ba);
      opponents[b].emplace_back(a, reg_ab + reg_ba);
    }
  }

  std::vector<double> strengths(n, 1.0);       // pi, scale-normalized
  std::vector<double> logs(n, 0.0);            // mean-centered log pi
  std::vector<double> next_strengths(n, 0.0);
  std::vector<double> next_logs(n, 0.0);

  auto record_likelihood = [&](const std::vector<double>& centered) {
    if (!config.track_log_likelihood) return;
    std::vector<double> full(graph.size(), 0.0);
    for (size_t a = 0; a < n; ++a) full[participants[a]] = centered[a];
    result.log_likelihood_trace.push_back(
        RegularizedLogLikelihood(graph, config.pseudocount, full));
  };
  record_likelihood(logs);

  double delta = 0.0;
  size_t iteration = 0;
  for (; iteration < config.max_iterations; ++iteration) {
    for (size_t a = 0; a < n; ++a) {
      double denominator = 0.0;
      for (const auto& [b, count] : opponents[a]) {
        denominator += count / (strengths[a] + strengths[b]);
      }
      next_strengths[a] = win_totals[a] / denominator;
    }
    double mean_log = 0.0;
    for (size_t a = 0; a < n; ++a) {
      next_logs[a] = std::log(next_strengths[a]);
      mean_log += next_logs[a];
    }
    mean_log /= static_cast<double>(n);
    delta = 0.0;
    for (size_t a = 0; a < n; ++a) {
      next_logs[a] -= mean_log;
      delta = std::max(delta, std::abs(next_logs[a] - logs[a]));
      strengths[a] = std::exp(next_logs[a]);
    }
    logs.swap(next_logs);
    record_likelihood(logs);
    if (delta <= config.tolerance) {
      ++iteration;
      result.converged = true;
      break;
    }
  }

  result.iterations_used = iteration;
  result.final_delta = delta;
  for (size_t a = 0; a < n; ++a) {
    result.strengths.log_strength[graph.item_ids()[participants[a]]] = logs[a];
  }
  for (const std::string& id : result.unpaired_ids) {
    result.strengths.log_strength[id] = 0.0;
  }
  return result;
}

double PredictFromFit(const FitResult& result, const std::string& i,
                      const std::string& j) {
  const auto it_i = result.strengths.log_strength.find(i);
  const auto it_j = result.strengths.log_strength.find(j);
  if (it_i == result.strengths.log_strength.end()) {
    throw ValidationError("no fitted strength for item " + i);
  }
  if (it_j == result.strengths.log_strength.end()) {
    throw ValidationError("no fitted strength for item " + j);
  }
  return BtProbability(it_i->second, it_j->second);
}

}  // namespace pairrank
