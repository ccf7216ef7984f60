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

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <queue>
#include <stdexcept>

#include "ipboost/ipboost.h"
#include "logging.h"

namespace ipboost {

std::optional<RoundedSolution> RoundingHeuristic(std::span<const double> lambda,
                                                 const ErrorMatrix& em,
                                                 double rho) {
  if (static_cast<int>(lambda.size()) > em.learner_count()) {
    throw std::invalid_argument("more weights than learner columns");
  }
  const int n = em.example_count();
  std::vector<double> margin(n, 0.0);
  for (size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] == 0.0) continue;
    const auto col = em.column(static_cast<int>(j));
    for (int i = 0; i < n; ++i) margin[i] += col[i] * lambda[j];
  }
  RoundedSolution out;
  out.z.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (margin[i] >= rho - 1e-9) continue;
    if (margin[i] + 1.0 + rho < rho - 1e-9) return std::nullopt;
    out.z[i] = 1;
    ++out.objective;
  }
  return out;
}

int BranchSelect(std::span<const double> z) {
  int best = -1;
  double best_dist = 0.0;
  for (size_t i = 0; i < z.size(); ++i) {
    const double f = z[i] - std::floor(z[i]);
    if (f <= kIntegralityTolerance || f >= 1.0 - kIntegralityTolerance) {
      continue;
    }
    const double dist = std::abs(z[i] - 0.5);
    if (best < 0 || dist < best_dist) {
      best = static_cast<int>(i);
      best_dist = dist;
    }
  }
  if (best < 0) throw std::invalid_argument("no fractional coordinate");
  return best;
}

double AchievedMargin(const ErrorMatrix& em, std::span<const double> lambda,
                      std::span<const int> z) {
  double m = kInfinity;
  for (int i = 0; i < em.example_count(); ++i) {
    if (z[i] != 0) continue;
    double s = 0.0;
    for (size_t j = 0; j < lambda.size(); ++j) {
      s += em.at(i, static_cast<int>(j)) * lambda[j];
    }
    m = std::min(m, s);
  }
  return m;
}

MarginResult PostprocessMargin(const ErrorMatrix& em, std::span<const int> z) {
  const int n = em.example_count(), l = em.learner_count();
  if (l == 0) throw std::invalid_argument("no learners to weight");
  if (static_cast<int>(z.size()) != n) {
    throw std::invalid_argument("z does not match the example count");
  }
  std::vector<int> kept;
  for (int i = 0; i < n; ++i) {
    if (z[i] == 0) kept.push_back(i);
  }
  MarginResult out;
  if (kept.empty()) {
    out.weights.assign(l, 1.0 / l);
    out.margin = kInfinity;
    return out;
  }
  LinearProgram lp;
  for (size_t r = 0; r < kept.size(); ++r)
    lp.AddRow(RowSense::kGreaterEqual, 0);
  const int convexity = lp.AddRow(RowSense::kEqual, 1.0);
  for (int j = 0; j < l; ++j) {
    std::vector<ColumnEntry> col;
    for (size_t r = 0; r < kept.size(); ++r) {
      col.push_back({static_cast<int>(r), em.at(kept[r], j)});
    }
    col.push_back({convexity, 1.0});
    lp.AddSparseColumn(0.0, std::move(col), 0.0, kInfinity);
  }
  std::vector<ColumnEntry> rho_col;
  for (size_t r = 0; r < kept.size(); ++r) {
    rho_col.push_back({static_cast<int>(r), -1.0});
  }
  lp.AddSparseColumn(-1.0, std::move(rho_col), -kInfinity, kInfinity);
  const LpSolution sol = Solve(lp);
  if (sol.status != LpStatus::kOptimal) {
    throw SolverError(std::string("margin LP: ") + LpStatusName(sol.status));
  }
  out.weights.assign(sol.primal.begin(), sol.primal.begin() + l);
  double sum = 0.0;
  for (double& w : out.weights) {
    w = std::max(0.0, w);
    sum += w;
  }
  for (double& w : out.weights) w /= sum;
  out.margin = AchievedMargin(em, out.weights, z);
  return out;
}

std::optional<int> Lemma1Reduce(std::span<const double> lambda,
                                std::span<const int> z, const ErrorMatrix& em,
                                double rho) {
  if (em.eta_kind() != EtaKind::kPlusMinus) {
    throw std::invalid_argument("the reduction needs +-1 error values");
  }
  int support = 0, best = -1;
  for (size_t j = 0; j < lambda.size(); ++j) {
    if (lambda[j] <= 1e-12) continue;
    ++support;
    if (best < 0 || lambda[j] > lambda[best]) best = static_cast<int>(j);
  }
  if (best < 0) return std::nullopt;
  const bool applies = rho >= 1.0 || lambda[best] > (1.0 - rho) / 2.0 + 1e-9 ||
                       support < 2.0 / (1.0 - rho);
  if (!applies) return std::nullopt;
  // In every case the heaviest learner is wrong on no kept example: a miss
  // would cap that example's margin at 1 - 2 lambda_best < rho.
  for (int i = 0; i < em.example_count(); ++i) {
    if (z[i] == 0 && em.at(i, best) != 1.0) return std::nullopt;
  }
  return best;
}

namespace {

using Clock = std::chrono::steady_clock;

struct Node {
  double bound = 0.0;
  int64_t id = 0;
  int depth = 0;
  // (example, value) pairs fixed on the path from the root.
  std::vector<std::pair<int, int>> fixings;
  std::shared_ptr<const Basis> basis;
};

struct WorseNode {
  bool operator()(const Node& a, const Node& b) const {
    if (a.bound != b.bound) return a.bound > b.bound;
    return a.id > b.id;
  }
};

class BranchAndPrice {
 public:
  BranchAndPrice(const Dataset& ds, const IpBoostConfig& cfg)
      : ds_(ds),
        cfg_(cfg),
        master_(ds, cfg.eta_kind, cfg.master),
        start_(Clock::now()) {}

  IpBoostResult Run();

 private:
  double Elapsed() const {
    return std::chrono::duration<double>(Clock::now() - start_).count();
  }
  // Objective values are integers, so a node is useless once its bound
  // rounds up to the incumbent.
  bool Prunable(double bound) const {
    return incumbent_value_ >= 0 &&
           std::ceil(bound - kIntegralityTolerance) >= incumbent_value_;
  }
  void Offer(std::vector<int> z, std::span<const double> lambda);
  ZBounds BoundsOf(const Node& node) const;
  IpBoostResult Assemble();

  const Dataset& ds_;
  IpBoostConfig cfg_;
  RestrictedMaster master_;
  Clock::time_point start_;
  SolverStats stats_;
  int incumbent_value_ = -1;
  std::vector<int> incumbent_z_;
  std::vector<double> incumbent_lambda_;
};

ZBounds BranchAndPrice::BoundsOf(const Node& node) const {
  ZBounds b = ZBounds::Free(ds_.example_count());
  for (const auto& [i, v] : node.fixings) b.lo[i] = b.hi[i] = v;
  return b;
}

void BranchAndPrice::Offer(std::vector<int> z, std::span<const double> lambda) {
  const int value = std::accumulate(z.begin(), z.end(), 0);
  if (incumbent_value_ >= 0 && value >= incumbent_value_) return;
  incumbent_value_ = value;
  incumbent_z_ = std::move(z);
  incumbent_lambda_.assign(lambda.begin(), lambda.end());
  stats_.best_solution_time = Elapsed();
  stats_.stall_counter = 0;
  ++stats_.incumbent_updates;
  Log().info("incumbent U={} node={} t={:.2f}s", value, stats_.nodes_processed,
             stats_.best_solution_time);
}

IpBoostResult BranchAndPrice::Run() {
  const int n = ds_.example_count();
  std::priority_queue<Node, std::vector<Node>, WorseNode> open;
  int64_t next_id = 1;
  std::optional<Node> current = Node{};
  bool proof_lost = false;

  while (true) {
    if (!current) {
      if (open.empty()) break;
      Node top = open.top();
      open.pop();
      if (Prunable(top.bound)) continue;
      current = std::move(top);
    }
    const bool out_of_time = Elapsed() >= cfg_.time_limit_seconds;
    const bool stalled =
        incumbent_value_ >= 0 && stats_.stall_counter >= cfg_.stall_limit;
    const bool node_cap =
        cfg_.max_nodes > 0 && stats_.nodes_processed >= cfg_.max_nodes;
    if (out_of_time || stalled || node_cap) {
      stats_.time_limit_hit = out_of_time;
      stats_.stall_limit_hit = stalled;
      stats_.node_limit_hit = node_cap;
      open.push(std::move(*current));
      current.reset();
      break;
    }

    Node node = std::move(*current);
    current.reset();
    const ColgenResult res = master_.Solve(BoundsOf(node), node.basis.get());
    ++stats_.nodes_processed;
    ++stats_.stall_counter;
    stats_.columns_generated += res.columns_added;
    stats_.lp_solves += res.lp_solves;
    // Pruning on a capped node's value is no longer exact.
    if (res.column_limit_hit) proof_lost = true;
    if (res.lp.status == LpStatus::kInfeasible) {
      Log().debug("node={} depth={} infeasible", node.id, node.depth);
      continue;
    }
    const LpSolution& lp = res.lp;
    std::span<const double> z(lp.primal.data(), n);
    std::span<const double> lambda(lp.primal.data() + n, lp.primal.size() - n);
    const double bound =
        res.column_limit_hit ? node.bound : std::max(node.bound, lp.objective);
    Log().debug("node={} depth={} lp={:.6f} bound={:.6f} U={} open={} cols={}",
                node.id, node.depth, lp.objective, bound, incumbent_value_,
                open.size(), master_.errors().learner_count());

    if (auto r = RoundingHeuristic(lambda, master_.errors(), cfg_.master.rho)) {
      Offer(std::move(r->z), lambda);
    }
    bool integral = true;
    for (double zi : z) {
      if (std::abs(zi - std::round(zi)) > kIntegralityTolerance) {
        integral = false;
        break;
      }
    }
    if (integral) {
      std::vector<int> zi(n);
      for (int i = 0; i < n; ++i) zi[i] = static_cast<int>(std::lround(z[i]));
      Offer(std::move(zi), lambda);
      continue;
    }
    if (Prunable(bound)) continue;

    const int i = BranchSelect(z);
    auto basis = std::make_shared<const Basis>(lp.basis);
    Node down{bound, next_id++, node.depth + 1, node.fixings, basis};
    down.fixings.emplace_back(i, 0);
    Node up{bound, next_id++, node.depth + 1, std::move(node.fixings), basis};
    up.fixings.emplace_back(i, 1);
    open.push(std::move(down));
    current = std::move(up);
  }

  stats_.total_time = Elapsed();
  if (incumbent_value_ < 0) {
    throw NoSolutionError("no integer solution found within the limits");
  }
  stats_.incumbent_value = incumbent_value_;
  double lower = incumbent_value_;
  while (!open.empty()) {
    lower = std::min(lower, open.top().bound);
    open.pop();
  }
  stats_.lower_bound = lower;
  stats_.optimal = !stats_.time_limit_hit && !stats_.stall_limit_hit &&
                   !stats_.node_limit_hit && !proof_lost;
  Log().info(
      "ipboost nodes={} U={} bound={:.4f} columns={} lp_solves={} "
      "time={:.2f}s time_to_best={:.2f}s optimal={}",
      stats_.nodes_processed, incumbent_value_, stats_.lower_bound,
      master_.errors().learner_count(), stats_.lp_solves, stats_.total_time,
      stats_.best_solution_time, stats_.optimal);
  return Assemble();
}

IpBoostResult BranchAndPrice::Assemble() {
  const ErrorMatrix& em = master_.errors();
  IpBoostResult out;
  out.stats = stats_;
  out.z = incumbent_z_;
  out.pool_weights.assign(em.learner_count(), 0.0);
  std::copy(incumbent_lambda_.begin(), incumbent_lambda_.end(),
            out.pool_weights.begin());

  std::vector<int> support;
  for (int j = 0; j < em.learner_count(); ++j) {
    if (out.pool_weights[j] > 1e-9) support.push_back(j);
  }
  const ErrorMatrix sub = em.Restricted(support);
  std::vector<double> weights(support.size());
  for (size_t k = 0; k < support.size(); ++k) {
    weights[k] = out.pool_weights[support[k]];
  }
  out.support = sub.learners();
  out.support_weights = weights;
  if (cfg_.postprocess) weights = PostprocessMargin(sub, out.z).weights;

  double sum = 0.0;
  for (size_t k = 0; k < support.size(); ++k) {
    if (weights[k] <= 1e-12) continue;
    out.ensemble.stumps.push_back(sub.learner(static_cast<int>(k)));
    out.ensemble.weights.push_back(weights[k]);
    sum += weights[k];
  }
  for (double& w : out.ensemble.weights) w /= sum;
  out.ensemble.eta_kind = em.eta_kind();
  std::vector<int> kept_cols;
  for (size_t k = 0; k < support.size(); ++k) {
    if (weights[k] > 1e-12) kept_cols.push_back(static_cast<int>(k));
  }
  out.achieved_margin =
      AchievedMargin(sub.Restricted(kept_cols), out.ensemble.weights, out.z);
  out.ensemble.margin = out.achieved_margin;
  return out;
}

}  // namespace

IpBoostResult TrainIpBoost(const Dataset& ds, const IpBoostConfig& cfg) {
  ValidateMasterConfig(cfg.master);
  if (cfg.stall_limit < 1) throw std::invalid_argument("stall limit < 1");
  if (!(cfg.time_limit_seconds > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  BranchAndPrice bnp(ds, cfg);
  return bnp.Run();
}

}  // namespace ipboost
