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

#ifndef IPBOOST_BASELINES_H_
#define IPBOOST_BASELINES_H_

#include <vector>

#include "ipboost/dataset.h"
#include "ipboost/learners.h"
#include "ipboost/master.h"

namespace ipboost {

struct LpBoostResult {
  BoostedEnsemble ensemble;
  double lp_objective = 0.0;
  int columns_generated = 0;
};

// Column generation on the root relaxation only (z continuous). The ensemble
// keeps the columns with positive weight, renormalized.
LpBoostResult TrainLpBoost(const Dataset& ds, const MasterConfig& cfg,
                           EtaKind kind);

enum class AdaBoostVariant { kDiscrete, kSammeR };

struct AdaBoostConfig {
  int iterations = 100;
  AdaBoostVariant variant = AdaBoostVariant::kDiscrete;
  // Keep a copy of the example distribution before every round.
  bool record_distributions = false;
};

struct AdaBoostResult {
  // Weights normalized to sum 1. Discrete votes with +-1 predictions; the
  // real variant votes with half log-odds and equal weights.
  BoostedEnsemble ensemble;
  int rounds = 0;
  std::vector<std::vector<double>> distributions;
};

// Stumps are grown with the Gini criterion and predict the weighted majority
// class of each leaf. Discrete: learner weight 1/2 log((1 - err) / err) with
// err clipped to [1e-10, 1 - 1e-10]; stops after a perfect learner, and
// before a learner with err >= 1/2 unless it is the first. Real: each round
// adds the half log-odds of the leaf class frequencies and reweights by
// exp(-y f(x)); stops after a perfect learner. Throws std::invalid_argument
// when iterations < 1.
AdaBoostResult TrainAdaBoost(const Dataset& ds, const AdaBoostConfig& cfg);

}  // namespace ipboost

#endif  // IPBOOST_BASELINES_H_
