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

#ifndef IPBOOST_MASTER_H_
#define IPBOOST_MASTER_H_

#include <optional>
#include <span>
#include <vector>

#include "ipboost/dataset.h"
#include "ipboost/error.h"
#include "ipboost/learners.h"
#include "ipboost/lp.h"

namespace ipboost {

// eta_ij for the generated learners, stored column-wise.
class ErrorMatrix {
 public:
  ErrorMatrix(int example_count, EtaKind kind)
      : example_count_(example_count), kind_(kind) {}

  // Appends a learner and its column; throws std::invalid_argument when the
  // column length is not example_count().
  int AddColumn(const DecisionStump& learner, std::vector<double> column);
  int AddLearner(const DecisionStump& learner, const Dataset& ds);

  int example_count() const { return example_count_; }
  int learner_count() const { return static_cast<int>(columns_.size()); }
  EtaKind eta_kind() const { return kind_; }
  double at(int i, int j) const { return columns_[j][i]; }
  std::span<const double> column(int j) const { return columns_[j]; }
  const DecisionStump& learner(int j) const { return learners_[j]; }
  const std::vector<DecisionStump>& learners() const { return learners_; }

  // Columns `keep`, in that order.
  ErrorMatrix Restricted(std::span<const int> keep) const;

 private:
  int example_count_;
  EtaKind kind_;
  std::vector<std::vector<double>> columns_;
  std::vector<DecisionStump> learners_;
};

struct ZBounds {
  std::vector<double> lo;
  std::vector<double> hi;
  static ZBounds Free(int n) {
    return {std::vector<double>(n, 0.0), std::vector<double>(n, 1.0)};
  }
};

struct MasterConfig {
  double rho = 0.05;
  // Total learner columns across the whole search.
  int max_columns = 500;
  double pricing_tolerance = 1e-6;
};

// Throws std::invalid_argument unless 0 < rho <= 1, max_columns >= 1 and
// pricing_tolerance >= 0.
void ValidateMasterConfig(const MasterConfig& cfg);

// Layout of the LP built by BuildMaster: z_0..z_{N-1} are columns 0..N-1,
// learner j is column N + j; row i < N is the margin row of example i, row N
// the convexity row.
//   min sum_i z_i
//   s.t. sum_j eta_ij lambda_j + (1 + rho) z_i >= rho   for all i
//        sum_j lambda_j = 1
//        lambda >= 0, lo_i <= z_i <= hi_i
LinearProgram BuildMaster(const ErrorMatrix& em, double rho,
                          const ZBounds& bounds);
// Appends learner column j of `em` to a master built from it.
void AppendLearnerColumn(LinearProgram& lp, const ErrorMatrix& em, int j);

inline int LambdaColumn(int example_count, int j) { return example_count + j; }

struct DualValues {
  // Margin-row multipliers, >= 0.
  std::vector<double> w;
  // Convexity-row multiplier, free.
  double v = 0.0;
  // Multipliers of z_i <= hi_i, max(0, (1 + rho) w_i - 1).
  std::vector<double> u;
  // Correction for z bounds other than [0, 1] set by branching.
  double branching_term = 0.0;

  // rho sum w + v - sum u + branching_term; equals the LP optimum.
  double Objective(double rho) const;
};

// Throws std::invalid_argument unless `sol` is optimal and has n + 1 rows.
DualValues ExtractDuals(const LpSolution& sol, const ZBounds& bounds,
                        double rho);

// sum_i eta_i w_i + v.
double ReducedCost(std::span<const double> eta, std::span<const double> w,
                   double v);

struct PricedColumn {
  DecisionStump stump;
  std::vector<double> eta;
  double reduced_cost = 0.0;
};

// Trains a stump on the weights max(w, 0) and returns it when its column
// satisfies sum_i eta_ij max(w_i, 0) + v > tol. Stumps whose split is in
// `exclude` are never returned. Exact over the stump class for kind (i).
std::optional<PricedColumn> Price(const StumpTrainer& trainer,
                                  std::span<const double> w, double v,
                                  EtaKind kind, double tol,
                                  const SplitSet* exclude = nullptr);

struct ColgenResult {
  LpSolution lp;
  int columns_added = 0;
  // Pricing stopped at MasterConfig::max_columns rather than at optimality,
  // so the objective is not a valid bound.
  bool column_limit_hit = false;
  int lp_solves = 0;
};

// Master problem with a column pool shared by every node of the search. Also
// serves single column-generation runs.
class RestrictedMaster {
 public:
  RestrictedMaster(const Dataset& ds, EtaKind kind, const MasterConfig& cfg);
  // Starts from the columns of `initial`; their splits join the pool.
  RestrictedMaster(const Dataset& ds, ErrorMatrix initial,
                   const MasterConfig& cfg);

  // Adds the stump trained with uniform weights, so the convexity row can
  // be met.
  void AddInitialColumn();
  // Returns false when the split is already in the pool.
  bool AddLearner(const DecisionStump& stump);

  // Column generation under `bounds`, starting from `warm` when given.
  // Infeasible restricted masters are repaired by pricing on the Farkas
  // certificate; a kInfeasible result means no stump can repair them.
  ColgenResult Solve(const ZBounds& bounds, const Basis* warm = nullptr);

  const ErrorMatrix& errors() const { return em_; }
  const LinearProgram& lp() const { return lp_; }
  const MasterConfig& config() const { return cfg_; }
  const Dataset& data() const { return ds_; }
  int example_count() const { return ds_.example_count(); }

 private:
  void ApplyBounds(const ZBounds& bounds);

  const Dataset& ds_;
  MasterConfig cfg_;
  StumpTrainer trainer_;
  ErrorMatrix em_;
  LinearProgram lp_;
  SplitSet splits_;
};

// Column generation starting from the columns in `em`, or from the
// uniform-weight stump when it has none. `em` receives every new column.
ColgenResult ColgenSolve(const Dataset& ds, const MasterConfig& cfg,
                         const ZBounds& bounds, ErrorMatrix& em);

}  // namespace ipboost

#endif  // IPBOOST_MASTER_H_
