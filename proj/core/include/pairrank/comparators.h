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

// Pluggable sources of pairwise outcome predictions: a perfect oracle, two
// stochastic noise models, and a trainable logistic pairwise model over
// synthetic features.

#ifndef PAIRRANK_COMPARATORS_H_
#define PAIRRANK_COMPARATORS_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "pairrank/pairgen.h"
#include "pairrank/rng.h"
#include "pairrank/types.h"

namespace pairrank {

enum class ComparatorKind {
  kOracle,    // winner is the item with the higher true score
  kBtNoisy,   // winner sampled with P = logistic(beta * score difference)
  kFlip,      // oracle outcome kept with probability `accuracy`
  kLogistic,  // trained linear model on feature differences
};

struct ComparatorConfig {
  ComparatorKind kind = ComparatorKind::kOracle;
  double beta = 1.0;       // inverse temperature, bt_noisy only; >= 0
  double accuracy = 1.0;   // flip only; in [0.5, 1]
  uint64_t seed = 0;

  // Logistic-kind plumbing: how features are synthesized and the model
  // trained when a harness owns the pipeline.
  size_t feature_dim = 8;
  double noise_scale = 0.0;
  double learning_rate = 0.5;
  size_t epochs = 200;

  void Validate() const;
};

std::string ComparatorKindName(ComparatorKind kind);
ComparatorKind ComparatorKindFromName(const std::string& name);

// Synthetic per-item feature vectors: standardized score times a fixed unit
// direction plus isotropic Gaussian noise.
struct FeatureCohort {
  size_t dim = 0;
  std::vector<double> signal_direction;  // unit norm
  double noise_scale = 0.0;
  uint64_t seed = 0;
  std::map<std::string, std::vector<double>> features;

  const std::vector<double>& FeaturesFor(const std::string& id) const;
};

struct TrainingHyperparameters {
  double learning_rate = 0.5;
  size_t epochs = 200;
  uint64_t seed = 0;
};

// Linear model scoring feature differences; no bias enters the decision so
// predictions are antisymmetric in the pair orientation by construction.
struct LogisticPairModel {
  std::vector<double> weights;
  double bias = 0.0;
  TrainingHyperparameters hyper;
  double final_loss = 0.0;
};

// P(item 1 ranks higher) = e^{s1} / (e^{s1} + e^{s2}), evaluated in the
// numerically stable logistic(s1 - s2) form. Throws on non-finite input.
double BtProbability(double s1, double s2);

// One predicted comparison outcome for items i and j. `features` and `model`
// are required for the logistic kind and ignored otherwise. Stochastic kinds
// consume draws from `rng`; deterministic kinds consume none.
ComparisonRecord PredictPair(const ComparatorConfig& config,
                             const Cohort& cohort,
                             const FeatureCohort* features,
                             const LogisticPairModel* model,
                             const std::string& i, const std::string& j,
                             Rng& rng);

// Orientation-reconciled prediction: queries both (i, j) and (j, i); on
// disagreement a third draw in canonical orientation decides. Deterministic
// kinds are orientation-consistent, so this equals a single query for them.
ComparisonRecord PredictPairConsensus(const ComparatorConfig& config,
                                      const Cohort& cohort,
                                      const FeatureCohort* features,
                                      const LogisticPairModel* model,
                                      const std::string& i,
                                      const std::string& j, Rng& rng);

// Mean cross-entropy of logistic(weights . (x_first - x_second)) against the
// pair labels, and its gradient in the weights.
double LogisticLoss(const std::vector<double>& weights,
                    const std::vector<LabeledPair>& pairs,
                    const FeatureCohort& features);
std::vector<double> LogisticGradient(const std::vector<double>& weights,
                                     const std::vector<LabeledPair>& pairs,
                                     const FeatureCohort& features);

// Full-batch gradient descent from all-zero weights. Deterministic.
LogisticPairModel FitLogistic(const std::vector<LabeledPair>& pairs,
                              const FeatureCohort& features,
                              const TrainingHyperparameters& hyper);

// Fraction of pairs whose winner the model predicts correctly; a zero score
// on the feature difference counts as predicting the smaller id.
double PairAccuracy(const LogisticPairModel& model,
                    const std::vector<LabeledPair>& pairs,
                    const FeatureCohort& features);

// x_i = standardized(true_score_i) * u + noise_scale * eps_i with eps_i drawn
// i.i.d. standard normal per coordinate and u a seed-determined unit vector.
FeatureCohort GenerateFeatures(const Cohort& cohort, size_t dim,
                               double noise_scale, uint64_t seed);

}  // namespace pairrank

#endif  // PAIRRANK_COMPARATORS_H_
