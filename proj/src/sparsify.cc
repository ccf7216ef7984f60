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

#include "ipboost/sparsify.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <queue>
#include <stdexcept>

#include "ipboost/error.h"
#include "logging.h"

namespace ipboost {

bool MarginSystemFeasible(const ErrorMatrix& em, double rho,
                          std::span<const int> examples) {
  const int l = em.learner_count();
  if (l == 0) return false;
  LinearProgram lp;
  for (size_t r = 0; r < examples.size(); ++r) {
    lp.AddRow(RowSense::kGreaterEqual, rho);
  }
  const int convexity = lp.AddRow(RowSense::kEqual, 1.0);
  for (int j = 0; j < l; ++j) {
    std::vector<ColumnEntry> col;
    for (size_t r = 0; r < examples.size(); ++r) {
      col.push_back({static_cast<int>(r), em.at(examples[r], j)});
    }
    col.push_back({convexity, 1.0});
    lp.AddSparseColumn(0.0, std::move(col), 0.0, kInfinity);
  }
  const LpSolution sol = Solve(lp);
  if (sol.status == LpStatus::kIterationLimit) {
    throw SolverError("feasibility LP hit the iteration limit");
  }
  return sol.status == LpStatus::kOptimal;
}

namespace {

struct AlternativeVertex {
  std::vector<int> support;
  std::vector<double> w;
};

// Solves the alternative LP over `candidates`; nothing when it is infeasible,
// i.e. the margin system is feasible.
std::optional<AlternativeVertex> SolveAlternative(
    const ErrorMatrix& em, double rho, std::span<const int> candidates,
    std::span<const double> costs) {
  const int l = em.learner_count();
  LinearProgram lp;
  for (int j = 0; j < l; ++j) lp.AddRow(RowSense::kLessEqual, 0.0);
  const int norm = lp.AddRow(RowSense::kGreaterEqual, 1.0);
  for (size_t r = 0; r < candidates.size(); ++r) {
    std::vector<ColumnEntry> col;
    for (int j = 0; j < l; ++j) col.push_back({j, em.at(candidates[r], j)});
    col.push_back({norm, rho});
    const double c = costs.empty() ? 1.0 : costs[r];
    lp.AddSparseColumn(c, std::move(col), 0.0, kInfinity);
  }
  std::vector<ColumnEntry> vcol;
  for (int j = 0; j < l; ++j) vcol.push_back({j, 1.0});
  vcol.push_back({norm, 1.0});
  lp.AddSparseColumn(0.0, std::move(vcol), -kInfinity, kInfinity);
  const LpSolution sol = Solve(lp);
  if (sol.status == LpStatus::kInfeasible) return std::nullopt;
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("alternative LP: ") +
                      LpStatusName(sol.status));
  }
  AlternativeVertex out;
  for (size_t r = 0; r < candidates.size(); ++r) {
    if (sol.primal[r] > 1e-9) {
      out.support.push_back(candidates[r]);
      out.w.push_back(sol.primal[r]);
    }
  }
  return out;
}

// Drops every example whose removal keeps the system infeasible.
std::vector<int> DeletionFilter(const ErrorMatrix& em, double rho,
                                std::vector<int> set) {
  for (size_t k = 0; k < set.size();) {
    std::vector<int> rest = set;
    rest.erase(rest.begin() + static_cast<long>(k));
    if (!MarginSystemFeasible(em, rho, rest)) {
      set = std::move(rest);
    } else {
      ++k;
    }
  }
  return set;
}

}  // namespace

std::optional<std::vector<int>> FindIisCut(const ErrorMatrix& em, double rho,
                                           std::span<const int> candidates,
                                           std::span<const double> costs) {
  if (!costs.empty() && costs.size() != candidates.size()) {
    throw std::invalid_argument("one cost per candidate expected");
  }
  if (em.learner_count() == 0) {
    throw std::invalid_argument("no learner columns");
  }
  auto vertex = SolveAlternative(em, rho, candidates, costs);
  if (!vertex) return std::nullopt;
  std::vector<int> iis = DeletionFilter(em, rho, vertex->support);
  std::sort(iis.begin(), iis.end());
  return iis;
}

std::vector<std::vector<int>> FindIisCuts(const ErrorMatrix& em, double rho,
                                          std::span<const int> candidates,
                                          int max_cuts) {
  std::vector<int> pool(candidates.begin(), candidates.end());
  std::vector<std::vector<int>> cuts;
  for (int round = 0; round < max_cuts; ++round) {
    auto vertex = SolveAlternative(em, rho, pool, {});
    if (!vertex) break;
    std::vector<int> iis = DeletionFilter(em, rho, vertex->support);
    std::sort(iis.begin(), iis.end());
    if (std::find(cuts.begin(), cuts.end(), iis) == cuts.end()) {
      cuts.push_back(iis);
    }
    const auto heaviest = std::max_element(vertex->w.begin(), vertex->w.end());
    const int drop = vertex->support[heaviest - vertex->w.begin()];
    std::erase(pool, drop);
  }
  return cuts;
}

namespace {

struct SparseNode {
  double bound = 0.0;
  int64_t id = 0;
  // Variable index in the LP and its fixed value.
  std::vector<std::pair<int, int>> fixings;
  std::shared_ptr<const Basis> basis;
};

struct WorseSparseNode {
  bool operator()(const SparseNode& a, const SparseNode& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

bool IsIntegral(double x) { return std::abs(x - std::round(x)) <= 1e-6; }

}  // namespace

SparsifyResult Sparsify(const ErrorMatrix& em, const SparsifyConfig& cfg) {
  const int n = em.example_count(), l = em.learner_count();
  if (static_cast<int>(cfg.alphas.size()) != l) {
    throw std::invalid_argument("one alpha per learner expected");
  }
  for (double a : cfg.alphas) {
    if (!(a >= 0.0)) throw std::invalid_argument("negative alpha");
  }
  if (l == 0) throw std::invalid_argument("no learner columns");

  // Columns: z (n), lambda (l), y (l). Rows: margins (n), convexity,
  // lambda_j - y_j <= 0 (l), then cuts.
  LinearProgram lp;
  for (int i = 0; i < n; ++i) lp.AddRow(RowSense::kGreaterEqual, cfg.rho);
  const int convexity = lp.AddRow(RowSense::kEqual, 1.0);
  for (int j = 0; j < l; ++j) lp.AddRow(RowSense::kLessEqual, 0.0);
  for (int i = 0; i < n; ++i) {
    lp.AddSparseColumn(1.0, {{i, 1.0 + cfg.rho}}, 0.0, 1.0);
  }
  for (int j = 0; j < l; ++j) {
    std::vector<ColumnEntry> col;
    for (int i = 0; i < n; ++i) {
      if (em.at(i, j) != 0.0) col.push_back({i, em.at(i, j)});
    }
    col.push_back({convexity, 1.0});
    col.push_back({convexity + 1 + j, 1.0});
    lp.AddSparseColumn(0.0, std::move(col), 0.0, kInfinity);
  }
  for (int j = 0; j < l; ++j) {
    lp.AddSparseColumn(cfg.alphas[j], {{convexity + 1 + j, -1.0}}, 0.0, 1.0);
  }
  const int z0 = 0, lambda0 = n, y0 = n + l;

  SparsifyResult out;
  double incumbent = kInfinity;
  auto offer = [&](const std::vector<int>& y, std::span<const double> lambda,
                   const std::vector<int>& z) {
    double obj = 0.0;
    for (int i = 0; i < n; ++i) obj += z[i];
    for (int j = 0; j < l; ++j) obj += cfg.alphas[j] * y[j];
    if (obj >= incumbent - 1e-9) return;
    incumbent = obj;
    out.objective = obj;
    out.y = y;
    out.z = z;
    out.lambda.assign(lambda.begin(), lambda.end());
  };
  // Rounding: keep every learner with positive weight and rebuild z.
  auto round = [&](std::span<const double> x) {
    std::vector<int> y(l, 0), z(n, 0);
    std::vector<double> lambda(l);
    double sum = 0.0;
    for (int j = 0; j < l; ++j) {
      lambda[j] = std::max(0.0, x[lambda0 + j]);
      sum += lambda[j];
    }
    if (!(sum > 0.0)) return;
    for (int j = 0; j < l; ++j) {
      lambda[j] /= sum;
      y[j] = lambda[j] > 0.0 ? 1 : 0;
    }
    for (int i = 0; i < n; ++i) {
      double m = 0.0;
      for (int j = 0; j < l; ++j) m += em.at(i, j) * lambda[j];
      if (m >= cfg.rho - 1e-9) continue;
      if (m < -1.0 - 1e-9) return;
      z[i] = 1;
    }
    offer(y, lambda, z);
  };

  LpSolution root = Solve(lp);
  if (root.status != LpStatus::kOptimal) {
    throw SolverError(std::string("sparsify root LP: ") +
                      LpStatusName(root.status));
  }
  out.root_bound = root.objective;
  if (cfg.use_iis_cuts) {
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    for (int r = 0; r < cfg.max_cut_rounds; ++r) {
      std::vector<double> costs(n);
      for (int i = 0; i < n; ++i) costs[i] = root.primal[z0 + i] + 1e-3;
      auto iis = FindIisCut(em, cfg.rho, all, costs);
      if (!iis) break;
      double lhs = 0.0;
      for (int i : *iis) lhs += root.primal[z0 + i];
      if (lhs >= 1.0 - 1e-6) break;
      std::vector<ColumnEntry> row;
      for (int i : *iis) row.push_back({z0 + i, 1.0});
      lp.AddRow(RowSense::kGreaterEqual, 1.0, row);
      out.cuts.push_back(*iis);
      root = Solve(lp, &root.basis);
      if (root.status != LpStatus::kOptimal) {
        throw SolverError("sparsify LP after cuts: " +
                          std::string(LpStatusName(root.status)));
      }
    }
  }
  out.root_bound_with_cuts = root.objective;

  std::priority_queue<SparseNode, std::vector<SparseNode>, WorseSparseNode>
      open;
  open.push({root.objective, 0, {}, std::make_shared<Basis>(root.basis)});
  int64_t next_id = 1;
  bool exhausted = true;
  std::vector<double> lo(lp.num_cols()), hi(lp.num_cols());
  for (int k = 0; k < lp.num_cols(); ++k) {
    lo[k] = lp.lower(k);
    hi[k] = lp.upper(k);
  }
  while (!open.empty()) {
    SparseNode node = open.top();
    open.pop();
    if (node.bound >= incumbent - 1e-9) continue;
    if (out.nodes >= cfg.max_nodes) {
      exhausted = false;
      break;
    }
    ++out.nodes;
    for (int k = 0; k < lp.num_cols(); ++k) lp.SetVarBounds(k, lo[k], hi[k]);
    for (const auto& [k, v] : node.fixings) lp.SetVarBounds(k, v, v);
    const LpSolution sol = Solve(lp, node.basis.get());
    if (sol.status == LpStatus::kInfeasible) continue;
    if (sol.status != LpStatus::kOptimal) {
      throw SolverError(std::string("sparsify node LP: ") +
                        LpStatusName(sol.status));
    }
    round(sol.primal);
    const double bound = std::max(node.bound, sol.objective);
    if (bound >= incumbent - 1e-9) continue;
    // Branch on a fractional y first, then z; most fractional wins.
    int var = -1;
    double best = 1.0;
    for (int k : {y0, z0}) {
      const int count = k == y0 ? l : n;
      for (int t = 0; t < count; ++t) {
        const double x = sol.primal[k + t];
        if (IsIntegral(x)) continue;
        if (std::abs(x - 0.5) < best) {
          best = std::abs(x - 0.5);
          var = k + t;
        }
      }
      if (var >= 0) break;
    }
    if (var < 0) {
      std::vector<int> y(l), z(n);
      for (int j = 0; j < l; ++j) y[j] = std::lround(sol.primal[y0 + j]);
      for (int i = 0; i < n; ++i) z[i] = std::lround(sol.primal[z0 + i]);
      offer(y, std::span<const double>(sol.primal).subspan(lambda0, l), z);
      continue;
    }
    auto basis = std::make_shared<const Basis>(sol.basis);
    for (int v : {1, 0}) {
      SparseNode child{bound, next_id++, node.fixings, basis};
      child.fixings.emplace_back(var, v);
      open.push(std::move(child));
    }
  }
  out.optimal = exhausted;
  Log().debug("sparsify nodes={} cuts={} objective={} optimal={}", out.nodes,
              out.cuts.size(), out.objective, out.optimal);
  return out;
}

}  // namespace ipboost
