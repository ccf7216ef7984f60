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

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "ipboost/lp.h"

namespace ipboost {
namespace {

// LU factorization of a simplex basis that keeps singleton columns (logicals,
// and the master's z columns) out of the dense kernel: with the singleton
// columns fixed to their rows, the remaining k columns restricted to the
// uncovered rows form a k x k matrix that is factorized densely. Later basis
// changes are kept as a product-form eta file.
class BasisFactor {
 public:
  // `column` returns the sparse column placed at basis position p.
  template <typename ColumnFn>
  bool Factorize(int m, ColumnFn column, double pivot_tol) {
    m_ = m;
    etas_.clear();
    singleton_row_.assign(m, -1);
    singleton_val_.assign(m, 0.0);
    core_positions_.clear();
    core_rows_.clear();
    std::vector<bool> row_taken(m, false);
    for (int p = 0; p < m; ++p) {
      std::span<const ColumnEntry> col = column(p);
      if (col.size() == 1 && !row_taken[col[0].row]) {
        singleton_row_[p] = col[0].row;
        singleton_val_[p] = col[0].value;
        row_taken[col[0].row] = true;
      } else {
        core_positions_.push_back(p);
      }
    }
    row_core_index_.assign(m, -1);
    for (int r = 0; r < m; ++r) {
      if (!row_taken[r]) {
        row_core_index_[r] = static_cast<int>(core_rows_.size());
        core_rows_.push_back(r);
      }
    }
    const int k = static_cast<int>(core_positions_.size());
    off_core_.setZero(m, k);
    Eigen::MatrixXd kernel = Eigen::MatrixXd::Zero(k, k);
    double max_abs = 0.0;
    for (int q = 0; q < k; ++q) {
      for (const auto& e : column(core_positions_[q])) {
        const int rc = row_core_index_[e.row];
        if (rc >= 0) {
          kernel(rc, q) = e.value;
          max_abs = std::max(max_abs, std::abs(e.value));
        } else {
          off_core_(e.row, q) = e.value;
        }
      }
    }
    if (k > 0) {
      lu_.compute(kernel);
      const auto& lu = lu_.matrixLU();
      for (int q = 0; q < k; ++q) {
        if (!(std::abs(lu(q, q)) > pivot_tol * std::max(1.0, max_abs))) {
          return false;
        }
      }
    }
    return true;
  }

  // In: right-hand side indexed by row. Out: solution indexed by position.
  void Ftran(std::vector<double>& v) const {
    const int k = static_cast<int>(core_positions_.size());
    std::vector<double> out(m_, 0.0);
    Eigen::Map<Eigen::VectorXd> vm(v.data(), m_);
    if (k > 0) {
      Eigen::VectorXd rhs(k);
      for (int r = 0; r < k; ++r) rhs[r] = v[core_rows_[r]];
      const Eigen::VectorXd xc = lu_.solve(rhs);
      for (int q = 0; q < k; ++q) out[core_positions_[q]] = xc[q];
      // Singleton rows: subtract the core part, then divide.
      vm.noalias() -= off_core_ * xc;
    }
    for (int p = 0; p < m_; ++p) {
      const int r = singleton_row_[p];
      if (r >= 0) out[p] = v[r] / singleton_val_[p];
    }
    Eigen::Map<Eigen::VectorXd> om(out.data(), m_);
    for (const Eta& eta : etas_) {
      const double xp = out[eta.position] / eta.pivot;
      if (xp != 0.0) om -= eta.column * xp;
      out[eta.position] = xp;
    }
    v.swap(out);
  }

  // In: right-hand side indexed by position. Out: solution indexed by row.
  void Btran(std::vector<double>& c) const {
    Eigen::Map<const Eigen::VectorXd> cm(c.data(), m_);
    for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
      c[it->position] = (c[it->position] - it->column.dot(cm)) / it->pivot;
    }
    std::vector<double> y(m_, 0.0);
    for (int p = 0; p < m_; ++p) {
      const int r = singleton_row_[p];
      if (r >= 0) y[r] = c[p] / singleton_val_[p];
    }
    const int k = static_cast<int>(core_positions_.size());
    if (k > 0) {
      // y is still zero on the core rows here.
      Eigen::VectorXd rhs = -off_core_.transpose() *
                            Eigen::Map<const Eigen::VectorXd>(y.data(), m_);
      for (int q = 0; q < k; ++q) rhs[q] += c[core_positions_[q]];
      Eigen::VectorXd yc = lu_.transpose().solve(rhs);
      for (int r = 0; r < k; ++r) y[core_rows_[r]] = yc[r];
    }
    c.swap(y);
  }

  // Basis position p now holds the column whose Ftran image is alpha.
  void Update(int p, const std::vector<double>& alpha) {
    Eta eta;
    eta.position = p;
    eta.pivot = alpha[p];
    eta.column = Eigen::Map<const Eigen::VectorXd>(alpha.data(), m_);
    eta.column[p] = 0.0;
    etas_.push_back(std::move(eta));
  }

  int num_updates() const { return static_cast<int>(etas_.size()); }

 private:
  int m_ = 0;
  std::vector<int> singleton_row_;
  std::vector<double> singleton_val_;
  std::vector<int> core_positions_;
  std::vector<int> core_rows_;
  std::vector<int> row_core_index_;
  // Core columns restricted to the singleton rows (zero on core rows).
  Eigen::MatrixXd off_core_;
  Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
  // Ftran image of an entering column with its pivot entry zeroed.
  struct Eta {
    int position;
    double pivot;
    Eigen::VectorXd column;
  };
  std::vector<Eta> etas_;
};

class SimplexSolver {
 public:
  SimplexSolver(const LinearProgram& lp, const SimplexOptions& opt)
      : lp_(lp),
        opt_(opt),
        m_(lp.num_rows()),
        n_(lp.num_cols()),
        lo_(n_ + m_),
        up_(n_ + m_),
        cost_(n_ + m_, 0.0),
        status_(n_ + m_),
        x_(n_ + m_, 0.0),
        basic_(m_),
        position_(n_ + m_, -1) {
    for (int j = 0; j < n_; ++j) {
      lo_[j] = lp.lower(j);
      up_[j] = lp.upper(j);
      cost_[j] = lp.cost(j);
    }
    for (int i = 0; i < m_; ++i) {
      lo_[n_ + i] = lp.row_lower(i);
      up_[n_ + i] = lp.row_upper(i);
      logical_cols_.push_back({i, -1.0});
    }
  }

  LpSolution Run(const Basis* warm);

 private:
  std::span<const ColumnEntry> Column(int k) const {
    if (k < n_) return lp_.column(k);
    return {&logical_cols_[k - n_], 1};
  }

  void SlackBasis();
  bool LoadBasis(const Basis& b);
  void PlaceNonbasic(int k, VarStatus preferred);
  bool Refactor();
  void ComputeBasicValues();
  double Infeasibility(int k) const;
  LpSolution Finish(LpStatus status, const std::vector<double>& y);
  std::vector<double> BuildFarkas(const std::vector<double>& y) const;

  const LinearProgram& lp_;
  SimplexOptions opt_;
  int m_, n_;
  std::vector<double> lo_, up_, cost_;
  std::vector<VarStatus> status_;
  std::vector<double> x_;
  std::vector<int> basic_;
  std::vector<int> position_;
  std::vector<ColumnEntry> logical_cols_;
  BasisFactor factor_;
  std::vector<double> ray_;
  int iterations_ = 0;
};

void SimplexSolver::PlaceNonbasic(int k, VarStatus preferred) {
  const bool has_lo = !std::isinf(lo_[k]);
  const bool has_up = !std::isinf(up_[k]);
  VarStatus s = preferred;
  if (s == VarStatus::kAtLower && !has_lo) s = VarStatus::kAtUpper;
  if (s == VarStatus::kAtUpper && !has_up) {
    s = has_lo ? VarStatus::kAtLower : VarStatus::kAtZero;
  }
  if (s == VarStatus::kAtZero || s == VarStatus::kBasic) {
    s = has_lo ? VarStatus::kAtLower
               : (has_up ? VarStatus::kAtUpper : VarStatus::kAtZero);
  }
  status_[k] = s;
  x_[k] = s == VarStatus::kAtLower   ? lo_[k]
          : s == VarStatus::kAtUpper ? up_[k]
                                     : 0.0;
  position_[k] = -1;
}

void SimplexSolver::SlackBasis() {
  for (int j = 0; j < n_; ++j) PlaceNonbasic(j, VarStatus::kAtLower);
  for (int i = 0; i < m_; ++i) {
    status_[n_ + i] = VarStatus::kBasic;
    basic_[i] = n_ + i;
    position_[n_ + i] = i;
  }
}

bool SimplexSolver::LoadBasis(const Basis& b) {
  if (static_cast<int>(b.columns.size()) > n_ ||
      static_cast<int>(b.rows.size()) > m_) {
    return false;
  }
  int p = 0;
  for (int k = 0; k < n_ + m_; ++k) {
    VarStatus s;
    if (k < n_) {
      s = k < static_cast<int>(b.columns.size()) ? b.columns[k]
                                                 : VarStatus::kAtLower;
    } else {
      const int i = k - n_;
      s = i < static_cast<int>(b.rows.size()) ? b.rows[i] : VarStatus::kBasic;
    }
    if (s == VarStatus::kBasic) {
      if (p >= m_) return false;
      status_[k] = VarStatus::kBasic;
      basic_[p] = k;
      position_[k] = p;
      ++p;
    } else {
      PlaceNonbasic(k, s);
    }
  }
  return p == m_;
}

bool SimplexSolver::Refactor() {
  return factor_.Factorize(
      m_, [&](int p) { return Column(basic_[p]); }, opt_.pivot_tolerance);
}

void SimplexSolver::ComputeBasicValues() {
  std::vector<double> rhs(m_, 0.0);
  for (int k = 0; k < n_ + m_; ++k) {
    if (status_[k] == VarStatus::kBasic || x_[k] == 0.0) continue;
    for (const auto& e : Column(k)) rhs[e.row] -= e.value * x_[k];
  }
  factor_.Ftran(rhs);
  for (int p = 0; p < m_; ++p) x_[basic_[p]] = rhs[p];
}

double SimplexSolver::Infeasibility(int k) const {
  if (x_[k] < lo_[k] - opt_.primal_tolerance) return lo_[k] - x_[k];
  if (x_[k] > up_[k] + opt_.primal_tolerance) return x_[k] - up_[k];
  return 0.0;
}

std::vector<double> SimplexSolver::BuildFarkas(
    const std::vector<double>& y) const {
  // Phase-1 multipliers satisfy y^T (A x - r) = 0 on every solution; one of
  // +-y separates the column box from the row ranges.
  std::vector<double> best;
  double best_gap = -kInfinity;
  for (double sign : {-1.0, 1.0}) {
    std::vector<double> cand(m_);
    double scale = 0.0;
    for (int i = 0; i < m_; ++i) scale = std::max(scale, std::abs(y[i]));
    if (scale == 0.0) return {};
    for (int i = 0; i < m_; ++i) {
      double v = sign * y[i] / scale;
      if (std::abs(v) < 1e-11) v = 0.0;
      const RowSense s = lp_.sense(i);
      if ((s == RowSense::kGreaterEqual && v < 0 && v > -1e-9) ||
          (s == RowSense::kLessEqual && v > 0 && v < 1e-9)) {
        v = 0.0;
      }
      cand[i] = v;
    }
    if (!VerifyFarkas(lp_, cand, -kInfinity)) continue;
    // Gap of the certificate, recomputed for ranking.
    double row_min = 0.0, box_max = 0.0;
    for (int i = 0; i < m_; ++i) row_min += cand[i] * lp_.rhs(i);
    for (int j = 0; j < n_; ++j) {
      double g = 0.0;
      for (const auto& e : lp_.column(j)) g += cand[e.row] * e.value;
      if (std::abs(g) > 1e-12) box_max += g * (g > 0 ? up_[j] : lo_[j]);
    }
    if (row_min - box_max > best_gap) {
      best_gap = row_min - box_max;
      best = std::move(cand);
    }
  }
  if (best.empty()) best.assign(y.begin(), y.end());
  return best;
}

LpSolution SimplexSolver::Finish(LpStatus status,
                                 const std::vector<double>& y) {
  LpSolution sol;
  sol.status = status;
  sol.iterations = iterations_;
  sol.primal.assign(x_.begin(), x_.begin() + n_);
  sol.row_activity.assign(x_.begin() + n_, x_.end());
  sol.basis.columns.assign(status_.begin(), status_.begin() + n_);
  sol.basis.rows.assign(status_.begin() + n_, status_.end());
  sol.objective = 0.0;
  for (int j = 0; j < n_; ++j) sol.objective += cost_[j] * x_[j];
  if (status == LpStatus::kOptimal) {
    sol.duals = y;
    sol.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) {
      double d = cost_[j];
      for (const auto& e : lp_.column(j)) d -= y[e.row] * e.value;
      sol.reduced_costs[j] = status_[j] == VarStatus::kBasic ? 0.0 : d;
    }
  } else if (status == LpStatus::kInfeasible) {
    sol.farkas = BuildFarkas(y);
  } else if (status == LpStatus::kUnbounded) {
    sol.primal_ray.assign(ray_.begin(), ray_.begin() + n_);
  }
  return sol;
}

LpSolution SimplexSolver::Run(const Basis* warm) {
  if (warm == nullptr || warm->empty() || !LoadBasis(*warm) || !Refactor()) {
    SlackBasis();
    if (!Refactor()) throw std::logic_error("slack basis singular");
  }
  ComputeBasicValues();

  const int limit =
      opt_.iteration_limit > 0 ? opt_.iteration_limit : 100 * (m_ + n_ + 1);
  const double ptol = opt_.primal_tolerance;
  const double dtol = opt_.dual_tolerance;
  int degenerate_run = 0;
  bool bland = false;
  std::vector<double> cb(m_), y, alpha;

  while (true) {
    if (iterations_ >= limit) return Finish(LpStatus::kIterationLimit, {});
    if (factor_.num_updates() >= opt_.refactor_interval) {
      if (!Refactor()) {
        // Numerical breakdown: restart from the slack basis.
        SlackBasis();
        Refactor();
      }
      ComputeBasicValues();
    }

    bool phase1 = false;
    for (int p = 0; p < m_; ++p) {
      const int k = basic_[p];
      double c = cost_[k];
      if (x_[k] < lo_[k] - ptol) {
        c = -1.0;
        phase1 = true;
      } else if (x_[k] > up_[k] + ptol) {
        c = 1.0;
        phase1 = true;
      }
      cb[p] = c;
    }
    if (phase1) {
      for (int p = 0; p < m_; ++p) {
        const int k = basic_[p];
        if (Infeasibility(k) == 0.0) cb[p] = 0.0;
      }
    }
    y = cb;
    factor_.Btran(y);

    // Pricing.
    int enter = -1;
    double enter_d = 0.0;
    double best_score = 0.0;
    for (int k = 0; k < n_ + m_; ++k) {
      const VarStatus s = status_[k];
      if (s == VarStatus::kBasic) continue;
      if (lo_[k] == up_[k]) continue;
      double d = phase1 ? 0.0 : cost_[k];
      for (const auto& e : Column(k)) d -= y[e.row] * e.value;
      bool eligible = (s == VarStatus::kAtLower && d < -dtol) ||
                      (s == VarStatus::kAtUpper && d > dtol) ||
                      (s == VarStatus::kAtZero && std::abs(d) > dtol);
      if (!eligible) continue;
      if (bland) {
        enter = k;
        enter_d = d;
        break;
      }
      if (std::abs(d) > best_score) {
        best_score = std::abs(d);
        enter = k;
        enter_d = d;
      }
    }

    if (enter < 0) {
      if (factor_.num_updates() > 0) {
        // Confirm on a fresh factorization before terminating.
        if (!Refactor()) {
          SlackBasis();
          Refactor();
        }
        ComputeBasicValues();
        continue;
      }
      if (phase1) return Finish(LpStatus::kInfeasible, y);
      return Finish(LpStatus::kOptimal, y);
    }

    alpha.assign(m_, 0.0);
    for (const auto& e : Column(enter)) alpha[e.row] = e.value;
    factor_.Ftran(alpha);
    const double dir = enter_d < 0 ? 1.0 : -1.0;

    // Ratio test. Basic variable at position p moves at rate -dir * alpha_p.
    auto target = [&](int p, double rate, double* bound) -> bool {
      const int k = basic_[p];
      const double v = x_[k];
      if (rate < 0) {
        if (phase1 && v > up_[k] + ptol) {
          *bound = up_[k];
          return true;
        }
        if (phase1 && v < lo_[k] - ptol) return false;
        if (std::isinf(lo_[k])) return false;
        *bound = lo_[k];
        return true;
      }
      if (phase1 && v < lo_[k] - ptol) {
        *bound = lo_[k];
        return true;
      }
      if (phase1 && v > up_[k] + ptol) return false;
      if (std::isinf(up_[k])) return false;
      *bound = up_[k];
      return true;
    };

    const double flip_range = up_[enter] - lo_[enter];
    int leave = -1;
    double leave_bound = 0.0;
    double theta = kInfinity;
    if (!bland) {
      // Harris two-pass.
      double theta_max = kInfinity;
      for (int p = 0; p < m_; ++p) {
        if (std::abs(alpha[p]) <= opt_.pivot_tolerance) continue;
        const double rate = -dir * alpha[p];
        double bound;
        if (!target(p, rate, &bound)) continue;
        const double v = x_[basic_[p]];
        const double relaxed = rate < 0 ? (v - (bound - ptol)) / -rate
                                        : ((bound + ptol) - v) / rate;
        theta_max = std::min(theta_max, relaxed);
      }
      if (theta_max < kInfinity) {
        double best_alpha = 0.0;
        for (int p = 0; p < m_; ++p) {
          if (std::abs(alpha[p]) <= opt_.pivot_tolerance) continue;
          const double rate = -dir * alpha[p];
          double bound;
          if (!target(p, rate, &bound)) continue;
          const double v = x_[basic_[p]];
          const double ratio =
              rate < 0 ? (v - bound) / -rate : (bound - v) / rate;
          if (ratio <= theta_max && std::abs(alpha[p]) > best_alpha) {
            best_alpha = std::abs(alpha[p]);
            leave = p;
            leave_bound = bound;
            theta = std::max(0.0, ratio);
          }
        }
      }
    } else {
      for (int p = 0; p < m_; ++p) {
        if (std::abs(alpha[p]) <= opt_.pivot_tolerance) continue;
        const double rate = -dir * alpha[p];
        double bound;
        if (!target(p, rate, &bound)) continue;
        const double v = x_[basic_[p]];
        const double ratio =
            std::max(0.0, rate < 0 ? (v - bound) / -rate : (bound - v) / rate);
        if (ratio < theta - 1e-12 ||
            (std::abs(ratio - theta) <= 1e-12 && leave >= 0 &&
             basic_[p] < basic_[leave])) {
          theta = ratio;
          leave = p;
          leave_bound = bound;
        }
      }
    }

    const bool flip = !std::isinf(flip_range) && flip_range <= theta;
    if (flip) {
      theta = flip_range;
      leave = -1;
    }
    if (leave < 0 && !flip) {
      if (phase1) {
        // Cannot happen in exact arithmetic; treat as a numerical breakdown.
        return Finish(LpStatus::kIterationLimit, {});
      }
      ray_.assign(n_ + m_, 0.0);
      ray_[enter] = dir;
      for (int p = 0; p < m_; ++p) ray_[basic_[p]] = -dir * alpha[p];
      return Finish(LpStatus::kUnbounded, {});
    }

    ++iterations_;
    if (theta * std::abs(enter_d) <= 1e-12) {
      if (++degenerate_run >= opt_.bland_after) bland = true;
    } else {
      degenerate_run = 0;
      bland = false;
    }

    x_[enter] += dir * theta;
    for (int p = 0; p < m_; ++p) x_[basic_[p]] -= dir * alpha[p] * theta;

    if (flip) {
      PlaceNonbasic(enter, status_[enter] == VarStatus::kAtLower
                               ? VarStatus::kAtUpper
                               : VarStatus::kAtLower);
      continue;
    }

    const int out = basic_[leave];
    position_[out] = -1;
    if (leave_bound == lo_[out]) {
      status_[out] = VarStatus::kAtLower;
      x_[out] = lo_[out];
    } else {
      status_[out] = VarStatus::kAtUpper;
      x_[out] = up_[out];
    }
    status_[enter] = VarStatus::kBasic;
    basic_[leave] = enter;
    position_[enter] = leave;
    factor_.Update(leave, alpha);
  }
}

}  // namespace

LpSolution Solve(const LinearProgram& lp, const Basis* warm,
                 const SimplexOptions& options) {
  SimplexSolver solver(lp, options);
  return solver.Run(warm);
}

}  // namespace ipboost
