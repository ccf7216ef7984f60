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

#ifndef IPBOOST_IPBOOST_H_
#define IPBOOST_IPBOOST_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ipboost/dataset.h"
#include "ipboost/error.h"
#include "ipboost/learners.h"
#include "ipboost/master.h"

namespace ipboost {

// z values within this distance of 0 or 1 count as integral.
inline constexpr double kIntegralityTolerance = 1e-6;

struct IpBoostConfig {
  MasterConfig master;
  EtaKind eta_kind = EtaKind::kPlusMinus;
  // Nodes processed since the last incumbent improvement before stopping.
  int stall_limit = 5000;
  double time_limit_seconds = 300.0;
  // 0 means unlimited.
  int64_t max_nodes = 0;
  // Re-optimize the margin over the final support with z fixed.
  bool postprocess = true;
};

struct SolverStats {
  int64_t nodes_processed = 0;
  int columns_generated = 0;
  int64_t lp_solves = 0;
  // Objective U of the incumbent (misclassified training examples).
  int incumbent_value = -1;
  // Smallest bound over open nodes at termination (= U when optimal).
  double lower_bound = 0.0;
  double best_solution_time = 0.0;
  double total_time = 0.0;
  int stall_counter = 0;
  int64_t incumbent_updates = 0;
  // The tree was exhausted, so the incumbent is optimal.
  bool optimal = false;
  bool time_limit_hit = false;
  bool stall_limit_hit = false;
  bool node_limit_hit = false;
};

struct IpBoostResult {
  BoostedEnsemble ensemble;
  SolverStats stats;
  // Incumbent before post-processing: z over the training examples and the
  // learner weights over the pool columns.
  std::vector<int> z;
  std::vector<double> pool_weights;
  // Incumbent support and its weights, as found by the search.
  std::vector<DecisionStump> support;
  std::vector<double> support_weights;
  // Margin rho' reached over the kept examples by the returned weights.
  double achieved_margin = 0.0;
};

// Raised when the limits stop the search before any integer solution exists.
class NoSolutionError : public SolverError {
 public:
  using SolverError::SolverError;
};

// Branch-and-price over the z variables. Each node solves its restricted
// master by column generation on the shared column pool; nodes are chosen by
// best bound with plunging into the z_i = 1 child.
IpBoostResult TrainIpBoost(const Dataset& ds, const IpBoostConfig& cfg);

struct RoundedSolution {
  std::vector<int> z;
  int objective = 0;
};

// With lambda fixed, z_i = 0 where sum_j eta_ij lambda_j >= rho - 1e-9 and 1
// otherwise. Returns nothing when z_i = 1 cannot satisfy some row, which only
// happens for error functions with values below -1.
std::optional<RoundedSolution> RoundingHeuristic(std::span<const double> lambda,
                                                 const ErrorMatrix& em,
                                                 double rho);

// Most fractional coordinate (|z_i - 1/2| minimal), lowest index on ties.
// Throws std::invalid_argument when every entry is integral.
int BranchSelect(std::span<const double> z);

struct MarginResult {
  std::vector<double> weights;
  double margin = 0.0;
};

// max rho' s.t. sum_j eta_ij lambda_j >= rho' for all i with z_i = 0,
// sum lambda = 1, lambda >= 0, over the columns of `em`. With no kept
// examples the margin is +inf and the weights are uniform.
MarginResult PostprocessMargin(const ErrorMatrix& em, std::span<const int> z);

// Smallest sum_j eta_ij lambda_j over the kept examples.
double AchievedMargin(const ErrorMatrix& em, std::span<const double> lambda,
                      std::span<const int> z);

// For kind (i) error matrices: when rho = 1, some lambda_j > (1 - rho) / 2 +
// 1e-9, or the support has fewer than 2 / (1 - rho) learners, one support
// learner is correct on every kept example. Returns its column after checking
// eta_ij = 1 on the kept examples, or nothing when no case applies or the
// check fails. Throws std::invalid_argument for other kinds.
std::optional<int> Lemma1Reduce(std::span<const double> lambda,
                                std::span<const int> z, const ErrorMatrix& em,
                                double rho);

}  // namespace ipboost

#endif  // IPBOOST_IPBOOST_H_
