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

#include "pairrank/comparators.h"

#include <cmath>

namespace pairrank {

namespace {

// softplus(z) = log(1 + e^z) without overflow.
double Softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

double DotDifference(const std::vector<double>& weights,
                     const std::vector<double>& xa,
                     const std::vector<double>& xb) {
  if (xa.size() != weights.size() || xb.size() != weights.size()) {
    throw ValidationError("feature dimension does not match model dimension");
  }
  double z = 0.0;
  for (size_t k = 0; k < weights.size(); ++k) {
    z += weights[k] * (xa[k] - xb[k]);
  }
  return z;
}

const Item& RequireItem(const Cohort& cohort, const std::string& id) {
  return cohort.ItemById(id);
}

ComparisonRecord OracleOutcome(const Cohort& cohort, const std::string& i,
                               const std::string& j) {
  const Item& a = RequireItem(cohort, i);
  const Item& b = RequireItem(cohort, j);
  if (a.true_score == b.true_score) {
    throw ValidationError("oracle comparator cannot break the tied pair (" +
                          i + ", " + j + ")");
  }
  return a.true_score > b.true_score ? ComparisonRecord{i, j}
                                     : ComparisonRecord{j, i};
}

}  // namespace

void ComparatorConfig::Validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw ValidationError("comparator beta must be finite and >= 0");
  }
  if (!(accuracy >= 0.5 && accuracy <= 1.0)) {
    throw ValidationError("comparator accuracy must lie in [0.5, 1]");
  }
  if (kind == ComparatorKind::kLogistic) {
    if (feature_dim < 1) {
      throw ValidationError("logistic comparator needs feature_dim >= 1");
    }
    if (!(noise_scale >= 0.0)) {
      throw ValidationError("noise_scale must be >= 0");
    }
  }
}

std::string ComparatorKindName(ComparatorKind kind) {
  switch (kind) {
    case ComparatorKind::kOracle:
      return "oracle";
    case ComparatorKind::kBtNoisy:
      return "bt_noisy";
    case ComparatorKind::kFlip:
      return "flip";
    case ComparatorKind::kLogistic:
      return "logistic";
  }
  throw ValidationError("unknown comparator kind");
}

ComparatorKind ComparatorKindFromName(const std::string& name) {
  if (name == "oracle") return ComparatorKind::kOracle;
  if (name == "bt_noisy") return ComparatorKind::kBtNoisy;
  if (name == "flip") return ComparatorKind::kFlip;
  if (name == "logistic") return ComparatorKind::kLogistic;
  throw ValidationError("unknown comparator kind: " + name);
}

const std::vector<double>& FeatureCohort::FeaturesFor(
    const std::string& id) const {
  auto it = features.find(id);
  if (it == features.end()) {
    throw ValidationError("no features for item " + id);
  }
  return it->second;
}

double BtProbability(double s1, double s2) {
  if (!std::isfinite(s1) || !std::isfinite(s2)) {
    throw ValidationError("bt_probability requires finite strengths");
  }
  const double d = s1 - s2;
  if (d >= 0.0) {
    return 1.0 / (1.0 + std::exp(-d));
  }
  const double e = std::exp(d);
  return e / (1.0 + e);
}

ComparisonRecord PredictPair(const ComparatorConfig& config,
                             const Cohort& cohort,
                             const FeatureCohort* features,
                             const LogisticPairModel* model,
                             const std::string& i, const std::string& j,
                             Rng& rng) {
  config.Validate();
  if (i == j) {
    throw ValidationError("cannot compare item " + i + " with itself");
  }
  switch (config.kind) {
    case ComparatorKind::kOracle:
      return OracleOutcome(cohort, i, j);
    case ComparatorKind::kBtNoisy: {
      const Item& a = RequireItem(cohort, i);
      const Item& b = RequireItem(cohort, j);
      const double p =
          BtProbability(config.beta * a.true_score, config.beta * b.true_score);
      return rng.NextDouble() < p ? ComparisonRecord{i, j}
                                  : ComparisonRecord{j, i};
    }
    case ComparatorKind::kFlip: {
      ComparisonRecord record = OracleOutcome(cohort, i, j);
      if (rng.NextDouble() >= config.accuracy) {
        std::swap(record.winner_id, record.loser_id);
      }
      return record;
    }
    case ComparatorKind::kLogistic: {
      if (features == nullptr || model == nullptr) {
        throw ValidationError(
            "logistic comparator requires features and a trained model");
      }
      const double z =
          DotDifference(model->weights, features->FeaturesFor(i),
                        features->FeaturesFor(j));
      if (z > 0.0) return ComparisonRecord{i, j};
      if (z < 0.0) return ComparisonRecord{j, i};
      return i < j ? ComparisonRecord{i, j} : ComparisonRecord{j, i};
    }
  }
  throw ValidationError("unknown comparator kind");
}

ComparisonRecord PredictPairConsensus(const ComparatorConfig& config,
                                      const Cohort& cohort,
                                      const FeatureCohort* features,
                                      const LogisticPairModel* model,
                                      const std::string& i,
                                      const std::string& j, Rng& rng) {
  const ComparisonRecord forward =
      PredictPair(config, cohort, features, model, i, j, rng);
  const ComparisonRecord backward =
      PredictPair(config, cohort, features, model, j, i, rng);
  if (forward.winner_id == backward.winner_id) return forward;
  const std::string& first = i < j ? i : j;
  const std::string& second = i < j ? j : i;
  return PredictPair(config, cohort, features, model, first, second, rng);
}

double LogisticLoss(const std::vector<double>& weights,
                    const std::vector<LabeledPair>& pairs,
                    const FeatureCohort& features) {
  if (pairs.empty()) {
    throw ValidationError("logistic loss needs a nonempty pair set");
  }
  if (weights.size() != features.dim) {
    throw ValidationError("weight dimension does not match feature dimension");
  }
  double total = 0.0;
  for (const LabeledPair& pair : pairs) {
    const double z = DotDifference(weights, features.FeaturesFor(pair.first_id),
                                   features.FeaturesFor(pair.second_id));
    // Cross-entropy: -log p for label 1, -log(1 - p) for label 0.
    total += pair.label ? Softplus(-z) : Softplus(z);
  }
  return total / static_cast<double>(pairs.size());
}

std::vector<double> LogisticGradient(const std::vector<double>& weights,
                                     const std::vector<LabeledPair>& pairs,
                                     const FeatureCohort& features) {
  if (pairs.empty()) {
    throw ValidationError("logistic gradient needs a nonempty pair set");
  }
  if (weights.size() != features.dim) {
    throw ValidationError("weight dimension does not match feature dimension");
  }
  std::vector<double> gradient(weights.size(), 0.0);
  for (const LabeledPair& pair : pairs) {
    const std::vector<double>& xa = features.FeaturesFor(pair.first_id);
    const std::vector<double>& xb = features.FeaturesFor(pair.second_id);
    const double z = DotDifference(weights, xa, xb);
    const double p = BtProbability(z, 0.0);
    const double residual = p - (pair.label ? 1.0 : 0.0);
    for (size_t k = 0; k < gradient.size(); ++k) {
      gradient[k] += residual * (xa[k] - xb[k]);
    }
  }
  const double scale = 1.0 / static_cast<double>(pairs.size());
  for (double& g : gradient) g *= scale;
  return gradient;
}

LogisticPairModel FitLogistic(const std::vector<LabeledPair>& pairs,
                              const FeatureCohort& features,
                              const TrainingHyperparameters& hyper) {
  if (pairs.empty()) {
    throw ValidationError("cannot train a logistic model on zero pairs");
  }
  LogisticPairModel model;
  model.hyper = hyper;
  model.weights.assign(features.dim, 0.0);
  for (size_t epoch = 0; epoch < hyper.epochs; ++epoch) {
    const std::vector<double> gradient =
        LogisticGradient(model.weights, pairs, features);
    for (size_t k = 0; k < model.weights.size(); ++k) {
      model.weights[k] -= hyper.learning_rate * gradient[k];
    }
  }
  model.final_loss = LogisticLoss(model.weights, pairs, features);
  for (double w : model.weights) {
    if (!std::isfinite(w)) {
      throw ValidationError("logistic training diverged to non-finite weights");
    }
  }
  return model;
}

double PairAccuracy(const LogisticPairModel& model,
                    const std::vector<LabeledPair>& pairs,
                    const FeatureCohort& features) {
  if (pairs.empty()) {
    throw ValidationError("pair accuracy needs a nonempty pair set");
  }
  size_t correct = 0;
  for (const LabeledPair& pair : pairs) {
    const double z = DotDifference(model.weights,
                                   features.FeaturesFor(pair.first_id),
                                   features.FeaturesFor(pair.second_id));
    bool predicted_first;
    if (z > 0.0) {
      predicted_first = true;
    } else if (z < 0.0) {
      predicted_first = false;
    } else {
      predicted_first = pair.first_id < pair.second_id;
    }
    if (predicted_first == pair.label) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(pairs.size());
}

FeatureCohort GenerateFeatures(const Cohort& cohort, size_t dim,
                               double noise_scale, uint64_t seed) {
  ValidateCohort(cohort);
  if (dim < 1) {
    throw ValidationError("feature dimension must be >= 1");
  }
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw ValidationError("noise_scale must be finite and >= 0");
  }
  const size_t n = cohort.items.size();
  double mean = 0.0;
  for (const Item& item : cohort.items) mean += item.true_score;
  mean /= static_cast<double>(n);
  double variance = 0.0;
  for (const Item& item : cohort.items) {
    const double d = item.true_score - mean;
    variance += d * d;
  }
  variance /= static_cast<double>(n);
  const double stddev = std::sqrt(variance);

  FeatureCohort out;
  out.dim = dim;
  out.noise_scale = noise_scale;
  out.seed = seed;

  Rng rng(seed);
  out.signal_direction.resize(dim);
  double norm = 0.0;
  do {
    norm = 0.0;
    for (size_t k = 0; k < dim; ++k) {
      out.signal_direction[k] = rng.NextGaussian();
      norm += out.signal_direction[k] * out.signal_direction[k];
    }
    norm = std::sqrt(norm);
  } while (norm < 1e-12);
  for (size_t k = 0; k < dim; ++k) out.signal_direction[k] /= norm;

  for (const Item& item : cohort.items) {
    const double z =
        stddev > 0.0 ? (item.true_score - mean) / stddev : 0.0;
    std::vector<double> x(dim);
    for (size_t k = 0; k < dim; ++k) {
      x[k] = z * out.signal_direction[k] + noise_scale * rng.NextGaussian();
    }
    out.features.emplace(item.id, std::move(x));
  }
  return out;
}

}  // namespace pairrank
