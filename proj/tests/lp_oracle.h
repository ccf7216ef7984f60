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

#ifndef IPBOOST_TESTS_LP_ORACLE_H_
#define IPBOOST_TESTS_LP_ORACLE_H_

// Brute-force references for the simplex tests: random LP generation,
// objective by enumeration of all bases, and certificate checks.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "ipboost/lp.h"

namespace ipboost::testing {

struct RandomLpOptions {
  int max_boxed = 3;
  // Probability of drawing right-hand sides independently of any point, which
  // yields infeasible problems fairly often.
  double wild_rhs = 0.2;
};

// Integer data in small ranges so degenerate vertices are common. Columns are
// nonnegative with at most `max_boxed` finite upper bounds, and the last row
// sum_j c_j x_j <= U with c_j >= 1 keeps the feasible region bounded.
inline LinearProgram RandomBoundedLp(std::mt19937_64& rng, int m, int n,
                                     const RandomLpOptions& opt = {}) {
  std::uniform_int_distribution<int> coef(-3, 3), cost(-5, 5), pos(1, 3),
      sense(0, 5), upper(1, 4), point(0, 3), slack(0, 2);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const bool wild = unit(rng) < opt.wild_rhs;
  std::vector<double> x0(n);
  for (auto& v : x0) v = point(rng);
  std::vector<std::vector<double>> a(m, std::vector<double>(n));
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) a[i][j] = i + 1 == m ? pos(rng) : coef(rng);
  }
  LinearProgram lp;
  for (int i = 0; i < m; ++i) {
    double ax = 0.0;
    for (int j = 0; j < n; ++j) ax += a[i][j] * x0[j];
    if (wild) ax += 2 * coef(rng);
    const int s = i + 1 == m ? 3 : sense(rng);
    if (s <= 2) {
      lp.AddRow(RowSense::kGreaterEqual, ax - slack(rng));
    } else if (s <= 4) {
      lp.AddRow(RowSense::kLessEqual, ax + slack(rng));
    } else {
      lp.AddRow(RowSense::kEqual, ax);
    }
  }
  int boxed = 0;
  for (int j = 0; j < n; ++j) {
    std::vector<double> col(m);
    for (int i = 0; i < m; ++i) col[i] = a[i][j];
    double hi = kInfinity;
    if (boxed < opt.max_boxed && unit(rng) < 0.3) {
      hi = std::max<double>(x0[j], upper(rng));
      ++boxed;
    }
    lp.AddColumn(cost(rng), col, 0.0, hi);
  }
  return lp;
}

// Minimum objective over all basic feasible solutions of the problem written
// with one logical per row (A x - r = 0, r within the row range), or nullopt
// when there is none. Assumes every variable has a finite bound.
inline std::optional<double> EnumerateBases(const LinearProgram& lp) {
  const int m = lp.num_rows(), n = lp.num_cols(), total = n + m;
  Eigen::MatrixXd full = Eigen::MatrixXd::Zero(m, total);
  std::vector<double> lo(total), hi(total);
  for (int j = 0; j < n; ++j) {
    for (const auto& e : lp.column(j)) full(e.row, j) = e.value;
    lo[j] = lp.lower(j);
    hi[j] = lp.upper(j);
  }
  for (int i = 0; i < m; ++i) {
    full(i, n + i) = -1.0;
    lo[n + i] = lp.row_lower(i);
    hi[n + i] = lp.row_upper(i);
  }
  std::optional<double> best;
  std::vector<int> pick(m);
  std::vector<bool> is_basic(total);
  // Iterate over m-subsets in lexicographic order.
  for (int i = 0; i < m; ++i) pick[i] = i;
  while (true) {
    std::fill(is_basic.begin(), is_basic.end(), false);
    Eigen::MatrixXd b(m, m);
    for (int i = 0; i < m; ++i) {
      is_basic[pick[i]] = true;
      b.col(i) = full.col(pick[i]);
    }
    Eigen::FullPivLU<Eigen::MatrixXd> lu(b);
    if (lu.rank() == m) {
      std::vector<int> nonbasic;
      for (int k = 0; k < total; ++k) {
        if (!is_basic[k]) nonbasic.push_back(k);
      }
      std::vector<int> boxed;
      for (int k : nonbasic) {
        if (!std::isinf(lo[k]) && !std::isinf(hi[k]) && lo[k] != hi[k]) {
          boxed.push_back(k);
        }
      }
      if (boxed.size() <= 20) {
        for (uint32_t mask = 0; mask < (1u << boxed.size()); ++mask) {
          std::vector<double> x(total, 0.0);
          for (int k : nonbasic) x[k] = std::isinf(lo[k]) ? hi[k] : lo[k];
          for (size_t t = 0; t < boxed.size(); ++t) {
            if (mask >> t & 1u) x[boxed[t]] = hi[boxed[t]];
          }
          Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m);
          for (int k : nonbasic) {
            if (x[k] != 0.0) rhs -= full.col(k) * x[k];
          }
          Eigen::VectorXd xb = lu.solve(rhs);
          bool ok = true;
          for (int i = 0; i < m && ok; ++i) {
            const int k = pick[i];
            x[k] = xb[i];
            ok = x[k] >= lo[k] - 1e-9 && x[k] <= hi[k] + 1e-9;
          }
          if (!ok) continue;
          double obj = 0.0;
          for (int j = 0; j < n; ++j) obj += lp.cost(j) * x[j];
          if (!best || obj < *best) best = obj;
        }
      }
    }
    int i = m - 1;
    while (i >= 0 && pick[i] == total - m + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int k = i + 1; k < m; ++k) pick[k] = pick[k - 1] + 1;
  }
  return best;
}

// Checks primal feasibility, dual feasibility, complementary slackness and
// the duality gap of an optimal solution. Returns an empty string on success.
inline std::string CheckOptimality(const LinearProgram& lp,
                                   const LpSolution& sol, double tol = 1e-6) {
  std::ostringstream err;
  const int m = lp.num_rows(), n = lp.num_cols();
  std::vector<double> act(m, 0.0);
  for (int j = 0; j < n; ++j) {
    const double x = sol.primal[j];
    if (x < lp.lower(j) - tol || x > lp.upper(j) + tol) {
      err << "column " << j << " violates its bounds; ";
    }
    for (const auto& e : lp.column(j)) act[e.row] += e.value * x;
  }
  for (int i = 0; i < m; ++i) {
    if (act[i] < lp.row_lower(i) - tol || act[i] > lp.row_upper(i) + tol) {
      err << "row " << i << " infeasible; ";
    }
    const double y = sol.duals[i];
    if (lp.sense(i) == RowSense::kGreaterEqual && y < -tol) {
      err << "row " << i << " dual has wrong sign; ";
    }
    if (lp.sense(i) == RowSense::kLessEqual && y > tol) {
      err << "row " << i << " dual has wrong sign; ";
    }
    if (std::abs(y * (act[i] - lp.rhs(i))) > tol) {
      err << "row " << i << " complementary slackness; ";
    }
  }
  for (int j = 0; j < n; ++j) {
    double d = lp.cost(j);
    for (const auto& e : lp.column(j)) d -= sol.duals[e.row] * e.value;
    if (std::abs(d - sol.reduced_costs[j]) > tol) {
      err << "column " << j << " reduced cost inconsistent; ";
    }
    const double x = sol.primal[j];
    if (d > tol && std::isinf(lp.lower(j))) err << "dual infeasible " << j;
    if (d < -tol && std::isinf(lp.upper(j))) err << "dual infeasible " << j;
    if (d > tol && std::abs(d * (x - lp.lower(j))) > tol) {
      err << "column " << j << " complementary slackness; ";
    }
    if (d < -tol && std::abs(d * (lp.upper(j) - x)) > tol) {
      err << "column " << j << " complementary slackness; ";
    }
  }
  double primal = 0.0;
  for (int j = 0; j < n; ++j) primal += lp.cost(j) * sol.primal[j];
  if (std::abs(primal - sol.objective) > tol) err << "objective mismatch; ";
  if (std::abs(primal - DualObjective(lp, sol)) > tol) err << "duality gap; ";
  return err.str();
}

}  // namespace ipboost::testing

#endif  // IPBOOST_TESTS_LP_ORACLE_H_
