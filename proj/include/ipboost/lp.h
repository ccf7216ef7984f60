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

#ifndef IPBOOST_LP_H_
#define IPBOOST_LP_H_

#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

namespace ipboost {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

enum class RowSense { kGreaterEqual, kLessEqual, kEqual };

struct ColumnEntry {
  int row;
  double value;
};

// min c^T x  s.t.  a_i x {>=,<=,=} b_i,  lo <= x <= hi.
// Columns are stored sparsely; rows and columns can be appended at any time.
class LinearProgram {
 public:
  int num_rows() const { return static_cast<int>(senses_.size()); }
  int num_cols() const { return static_cast<int>(cost_.size()); }

  // Appends a row with the given coefficients on existing columns, as
  // (column, value) pairs.
  int AddRow(RowSense sense, double rhs,
             std::span<const ColumnEntry> coefficients = {});

  // Dense coefficients, one per row. Throws std::invalid_argument on a
  // length mismatch or lo > hi.
  int AddColumn(double cost, std::span<const double> coeffs, double lo,
                double hi);
  // Entries are (row, value); rows must be in range and unique.
  int AddSparseColumn(double cost, std::vector<ColumnEntry> entries, double lo,
                      double hi);

  // Throws std::invalid_argument when lo > hi.
  void SetVarBounds(int col, double lo, double hi);
  void SetCost(int col, double cost) { cost_[col] = cost; }
  void SetRhs(int row, double rhs) { rhs_[row] = rhs; }

  double cost(int col) const { return cost_[col]; }
  double lower(int col) const { return lower_[col]; }
  double upper(int col) const { return upper_[col]; }
  RowSense sense(int row) const { return senses_[row]; }
  double rhs(int row) const { return rhs_[row]; }
  std::span<const ColumnEntry> column(int col) const { return columns_[col]; }

  // Admissible range of row activity a_i x.
  double row_lower(int row) const;
  double row_upper(int row) const;

  // Plain-text dump:
  //   LP <rows> <cols>
  //   ROW <i> <G|L|E> <rhs>                       (one per row)
  //   COL <j> <cost> <lo> <hi> <nnz> <row>:<val>... (one per column)
  // Infinite bounds print as inf / -inf.
  std::string Dump() const;

 private:
  std::vector<RowSense> senses_;
  std::vector<double> rhs_;
  std::vector<double> cost_;
  std::vector<double> lower_;
  std::vector<double> upper_;
  std::vector<std::vector<ColumnEntry>> columns_;
};

enum class VarStatus : uint8_t { kBasic, kAtLower, kAtUpper, kAtZero };

// Simplex basis. `rows` holds the status of each row's logical variable
// (the row activity). Shorter vectors are padded on warm start: missing
// columns start nonbasic at a bound and missing rows start basic, so a basis
// stays reusable after AddColumn / AddRow.
struct Basis {
  std::vector<VarStatus> columns;
  std::vector<VarStatus> rows;
  bool empty() const { return columns.empty() && rows.empty(); }
};

enum class LpStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };
const char* LpStatusName(LpStatus status);

struct LpSolution {
  LpStatus status = LpStatus::kIterationLimit;
  std::vector<double> primal;
  std::vector<double> row_activity;
  // Row multipliers y with reduced_costs = c - A^T y. For a minimization,
  // y_i >= 0 on >= rows and y_i <= 0 on <= rows at optimality.
  std::vector<double> duals;
  std::vector<double> reduced_costs;
  double objective = 0.0;
  Basis basis;
  // kInfeasible: y proving infeasibility, see VerifyFarkas.
  std::vector<double> farkas;
  // kUnbounded: improving direction over the columns.
  std::vector<double> primal_ray;
  int iterations = 0;
};

struct SimplexOptions {
  double primal_tolerance = 1e-7;
  double dual_tolerance = 1e-7;
  double pivot_tolerance = 1e-10;
  int refactor_interval = 50;
  // Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 1000;
  // 0 means 100 * (rows + cols).
  int iteration_limit = 0;
};

// Bounded-variable primal revised simplex. Phase 1 minimizes the sum of
// bound violations of the basic variables; the same basis then continues
// into phase 2. `warm` is used as the starting basis when it is consistent
// with the problem, otherwise the all-logical basis is used.
LpSolution Solve(const LinearProgram& lp, const Basis* warm = nullptr,
                 const SimplexOptions& options = {});

// y proves infeasibility when y_i >= 0 on >= rows, y_i <= 0 on <= rows and
//   sum_i y_i b_i - max_{lo <= x <= hi} (y^T A) x > tol.
bool VerifyFarkas(const LinearProgram& lp, std::span<const double> y,
                  double tol = 1e-9);

// Dual objective y^T b + sum_j min/max bound terms of the reduced costs;
// equals the primal objective at an optimal basis.
double DualObjective(const LinearProgram& lp, const LpSolution& sol);

}  // namespace ipboost

#endif  // IPBOOST_LP_H_
