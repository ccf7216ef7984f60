// Copyright 2026 The ipboost Authors
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

#ifndef IPBOOST_LEARNERS_H_
#define IPBOOST_LEARNERS_H_

#include <limits>
#include <span>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "ipboost/dataset.h"

namespace ipboost {

// How a base learner's output on an example enters the master problem and
// the vote:
//   kPlusMinus  (i)   eta = y * h(x)
//   kClassProb  (ii)  eta = 2 P(h(x) = y) - 1
//   kSammeR     (iii) eta = 1/2 y log(P(+1|x) / P(-1|x))
enum class EtaKind { kPlusMinus, kClassProb, kSammeR };

// "i", "ii", "iii".
std::string_view EtaKindTag(EtaKind kind);
// Accepts the tags above; throws std::invalid_argument otherwise.
EtaKind ParseEtaKind(std::string_view tag);

// Probabilities are clipped to [kProbabilityFloor, 1 - kProbabilityFloor]
// before taking log-odds.
inline constexpr double kProbabilityFloor = 1e-6;

// Depth-1 decision tree. Predicts +polarity when x[feature] <= threshold and
// -polarity otherwise; threshold = +inf gives a constant classifier.
struct DecisionStump {
  int feature = 0;
  double threshold = std::numeric_limits<double>::infinity();
  int polarity = 1;
  // P(y = +1) on the side predicted positive.
  double class_prob_pos = 0.5;
  // P(y = +1) on the other side.
  double class_prob_neg = 0.5;

  int Predict(std::span<const double> x) const {
    return x[feature] <= threshold ? polarity : -polarity;
  }
  // P(y = +1 | x) read from the leaf x falls into.
  double PositiveProbability(std::span<const double> x) const {
    return Predict(x) > 0 ? class_prob_pos : class_prob_neg;
  }
  bool SameSplit(const DecisionStump& o) const {
    return feature == o.feature && threshold == o.threshold &&
           polarity == o.polarity;
  }
};

double EtaValue(const DecisionStump& stump, std::span<const double> x, int y,
                EtaKind kind);
// Voting score xi: h(x), 2 P(+1|x) - 1, or half log-odds.
double VoteScore(const DecisionStump& stump, std::span<const double> x,
                 EtaKind kind);
std::vector<double> EtaColumn(const DecisionStump& stump, const Dataset& ds,
                              EtaKind kind);

// Objective a stump fit maximizes.
enum class SplitCriterion {
  // sum_i w_i y_i h(x_i); exact pricing for kind (i).
  kWeightedCorrectness,
  // sum_i w_i eta_i with eta of kind (ii) and leaf probabilities from w.
  kClassProb,
  // sum_i w_i eta_i with eta of kind (iii) and leaf probabilities from w.
  kSammeR,
  // Weighted Gini impurity decrease; leaves predict their majority class.
  kGini,
};

SplitCriterion PricingCriterion(EtaKind kind);

struct StumpFit {
  DecisionStump stump;
  double objective = 0.0;
};

// Splits already present in a column pool; candidates matching one are
// skipped by the fitter.
class SplitSet {
 public:
  void Insert(const DecisionStump& s);
  bool Contains(const DecisionStump& s) const;
  size_t size() const { return keys_.size(); }

 private:
  struct Hash {
    size_t operator()(const std::tuple<int, double, int>& k) const;
  };
  std::unordered_set<std::tuple<int, double, int>, Hash> keys_;
};

// Exhaustive stump search over every feature, every midpoint between
// consecutive distinct values, and the constant classifier. Sort orders are
// computed once per data set. Ties go to the lowest feature, then the
// smallest threshold, then polarity +1. Leaf class probabilities are the
// weighted class frequencies with add-one smoothing, after rescaling the
// weights so their sum equals the number of positively weighted examples.
class StumpTrainer {
 public:
  explicit StumpTrainer(const Dataset& ds);

  // Throws std::invalid_argument on negative, wrong-length, or all-zero
  // weights. Returns objective = -inf when every candidate is excluded.
  StumpFit Fit(std::span<const double> weights, SplitCriterion criterion,
               const SplitSet* exclude = nullptr) const;

  // Every distinct candidate stump (constant classifiers once), without
  // class probabilities. Useful for brute-force checks on small data.
  std::vector<DecisionStump> EnumerateCandidates() const;

  const Dataset& data() const { return ds_; }

 private:
  const Dataset& ds_;
  // order_[k] sorts examples by feature k.
  std::vector<std::vector<int>> order_;
};

StumpFit FitStumpWeighted(const Dataset& ds, std::span<const double> weights);

// Convex combination of stumps voted with `eta_kind` scores.
struct BoostedEnsemble {
  std::vector<DecisionStump> stumps;
  std::vector<double> weights;
  EtaKind eta_kind = EtaKind::kPlusMinus;
  double margin = 0.0;

  // Throws std::invalid_argument unless the lists are non-empty, equally long,
  // and the weights are nonnegative and sum to 1 within 1e-9.
  void Validate() const;

  double Decision(std::span<const double> x) const;
  // Sign of Decision; 0 maps to +1.
  int Predict(std::span<const double> x) const;
  int size() const { return static_cast<int>(stumps.size()); }
};

double Accuracy(const BoostedEnsemble& ens, const Dataset& ds);

// Number of pairwise distinct splits among the stumps.
int DistinctLearnerCount(const std::vector<DecisionStump>& stumps);

}  // namespace ipboost

#endif  // IPBOOST_LEARNERS_H_
