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

#include "ipboost/master.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "ipboost/error.h"

namespace ipboost {

int ErrorMatrix::AddColumn(const DecisionStump& learner,
                           std::vector<double> column) {
  if (static_cast<int>(column.size()) != example_count_) {
    throw std::invalid_argument("error column length != example count");
  }
  columns_.push_back(std::move(column));
  learners_.push_back(learner);
  return learner_count() - 1;
}

int ErrorMatrix::AddLearner(const DecisionStump& learner, const Dataset& ds) {
  return AddColumn(learner, EtaColumn(learner, ds, kind_));
}

ErrorMatrix ErrorMatrix::Restricted(std::span<const int> keep) const {
  ErrorMatrix out(example_count_, kind_);
  for (int j : keep) out.AddColumn(learners_.at(j), columns_.at(j));
  return out;
}

void ValidateMasterConfig(const MasterConfig& cfg) {
  if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1]");
  }
  if (cfg.max_columns < 1) throw std::invalid_argument("max_columns < 1");
  if (!(cfg.pricing_tolerance >= 0.0)) {
    throw std::invalid_argument("negative pricing tolerance");
  }
}

LinearProgram BuildMaster(const ErrorMatrix& em, double rho,
                          const ZBounds& bounds) {
  const int n = em.example_count();
  if (static_cast<int>(bounds.lo.size()) != n ||
      static_cast<int>(bounds.hi.size()) != n) {
    throw std::invalid_argument("z bounds do not match the example count");
  }
  LinearProgram lp;
  for (int i = 0; i < n; ++i) lp.AddRow(RowSense::kGreaterEqual, rho);
  lp.AddRow(RowSense::kEqual, 1.0);
  for (int i = 0; i < n; ++i) {
    lp.AddSparseColumn(1.0, {{i, 1.0 + rho}}, bounds.lo[i], bounds.hi[i]);
  }
  for (int j = 0; j < em.learner_count(); ++j) AppendLearnerColumn(lp, em, j);
  return lp;
}

void AppendLearnerColumn(LinearProgram& lp, const ErrorMatrix& em, int j) {
  const int n = em.example_count();
  std::vector<ColumnEntry> entries;
  entries.reserve(n + 1);
  const auto col = em.column(j);
  for (int i = 0; i < n; ++i) {
    if (col[i] != 0.0) entries.push_back({i, col[i]});
  }
  entries.push_back({n, 1.0});
  lp.AddSparseColumn(0.0, std::move(entries), 0.0, kInfinity);
}

double DualValues::Objective(double rho) const {
  double s = v + branching_term;
  for (double wi : w) s += rho * wi;
  for (double ui : u) s -= ui;
  return s;
}

DualValues ExtractDuals(const LpSolution& sol, const ZBounds& bounds,
                        double rho) {
  const int n = static_cast<int>(bounds.lo.size());
  if (sol.status != LpStatus::kOptimal) {
    throw std::invalid_argument("duals requested from a non-optimal solve");
  }
  if (static_cast<int>(sol.duals.size()) != n + 1) {
    throw std::invalid_argument("solution does not match the master layout");
  }
  DualValues d;
  d.w.resize(n);
  d.u.resize(n);
  d.v = sol.duals[n];
  for (int i = 0; i < n; ++i) {
    const double w = std::max(0.0, sol.duals[i]);
    d.w[i] = w;
    // Reduced cost of z_i is 1 - (1 + rho) w_i.
    const double rc = 1.0 - (1.0 + rho) * w;
    d.u[i] = std::max(0.0, -rc);
    d.branching_term +=
        std::max(0.0, rc) * bounds.lo[i] + d.u[i] * (1.0 - bounds.hi[i]);
  }
  return d;
}

double ReducedCost(std::span<const double> eta, std::span<const double> w,
                   double v) {
  double s = v;
  for (size_t i = 0; i < eta.size(); ++i) s += eta[i] * w[i];
  return s;
}

std::optional<PricedColumn> Price(const StumpTrainer& trainer,
                                  std::span<const double> w, double v,
                                  EtaKind kind, double tol,
                                  const SplitSet* exclude) {
  const Dataset& ds = trainer.data();
  // Negative multipliers on >= rows are round-off; treat them as zero.
  std::vector<double> clipped(w.begin(), w.end());
  double total = 0.0;
  for (double& x : clipped) {
    x = std::max(0.0, x);
    total += x;
  }
  std::vector<double> weights = clipped;
  // Every column has sum_i eta_i w_i = 0 then; any new stump works.
  if (!(total > 0.0)) {
    if (!(v > tol)) return std::nullopt;
    std::fill(weights.begin(), weights.end(), 1.0);
  }
  StumpFit fit = trainer.Fit(weights, PricingCriterion(kind), exclude);
  if (std::isinf(fit.objective)) return std::nullopt;
  PricedColumn col;
  col.stump = fit.stump;
  col.eta = EtaColumn(fit.stump, ds, kind);
  col.reduced_cost = ReducedCost(col.eta, clipped, v);
  if (!(col.reduced_cost > tol)) return std::nullopt;
  return col;
}

RestrictedMaster::RestrictedMaster(const Dataset& ds, EtaKind kind,
                                   const MasterConfig& cfg)
    : RestrictedMaster(ds, ErrorMatrix(ds.example_count(), kind), cfg) {}

RestrictedMaster::RestrictedMaster(const Dataset& ds, ErrorMatrix initial,
                                   const MasterConfig& cfg)
    : ds_(ds), cfg_(cfg), trainer_(ds), em_(std::move(initial)) {
  ValidateMasterConfig(cfg);
  if (em_.example_count() != ds.example_count()) {
    throw std::invalid_argument("error matrix does not match the data set");
  }
  lp_ = BuildMaster(em_, cfg.rho, ZBounds::Free(ds.example_count()));
  for (const auto& s : em_.learners()) splits_.Insert(s);
}

void RestrictedMaster::AddInitialColumn() {
  std::vector<double> uniform(ds_.example_count(), 1.0);
  StumpFit fit =
      trainer_.Fit(uniform, PricingCriterion(em_.eta_kind()), &splits_);
  if (!std::isinf(fit.objective)) AddLearner(fit.stump);
}

bool RestrictedMaster::AddLearner(const DecisionStump& stump) {
  if (splits_.Contains(stump)) return false;
  splits_.Insert(stump);
  const int j = em_.AddLearner(stump, ds_);
  AppendLearnerColumn(lp_, em_, j);
  return true;
}

void RestrictedMaster::ApplyBounds(const ZBounds& bounds) {
  const int n = ds_.example_count();
  if (static_cast<int>(bounds.lo.size()) != n ||
      static_cast<int>(bounds.hi.size()) != n) {
    throw std::invalid_argument("z bounds do not match the example count");
  }
  for (int i = 0; i < n; ++i) lp_.SetVarBounds(i, bounds.lo[i], bounds.hi[i]);
}

ColgenResult RestrictedMaster::Solve(const ZBounds& bounds, const Basis* warm) {
  ApplyBounds(bounds);
  if (em_.learner_count() == 0) AddInitialColumn();
  const int n = ds_.example_count();
  ColgenResult result;
  Basis basis = warm != nullptr ? *warm : Basis{};
  while (true) {
    result.lp = ipboost::Solve(lp_, &basis);
    ++result.lp_solves;
    basis = result.lp.basis;
    std::span<const double> y;
    double v = 0.0;
    if (result.lp.status == LpStatus::kOptimal) {
      y = std::span<const double>(result.lp.duals).first(n);
      v = result.lp.duals[n];
    } else if (result.lp.status == LpStatus::kInfeasible) {
      // A column with positive value under the Farkas multipliers breaks the
      // certificate.
      y = std::span<const double>(result.lp.farkas).first(n);
      v = result.lp.farkas[n];
    } else {
      throw SolverError(std::string("restricted master: ") +
                        LpStatusName(result.lp.status));
    }
    auto col =
        Price(trainer_, y, v, em_.eta_kind(), cfg_.pricing_tolerance, &splits_);
    if (!col) return result;
    if (em_.learner_count() >= cfg_.max_columns) {
      result.column_limit_hit = true;
      return result;
    }
    splits_.Insert(col->stump);
    const int j = em_.AddColumn(col->stump, std::move(col->eta));
    AppendLearnerColumn(lp_, em_, j);
    ++result.columns_added;
  }
}

ColgenResult ColgenSolve(const Dataset& ds, const MasterConfig& cfg,
                         const ZBounds& bounds, ErrorMatrix& em) {
  RestrictedMaster master(ds, em, cfg);
  ColgenResult result = master.Solve(bounds);
  em = master.errors();
  return result;
}

}  // namespace ipboost
