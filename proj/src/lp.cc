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

#include "ipboost/lp.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ipboost {

int LinearProgram::AddRow(RowSense sense, double rhs,
                          std::span<const ColumnEntry> coefficients) {
  const int row = num_rows();
  for (const auto& e : coefficients) {
    if (e.row < 0 || e.row >= num_cols()) {
      throw std::invalid_argument("row coefficient on unknown column");
    }
  }
  senses_.push_back(sense);
  rhs_.push_back(rhs);
  for (const auto& e : coefficients) {
    if (e.value != 0.0) columns_[e.row].push_back({row, e.value});
  }
  return row;
}

int LinearProgram::AddColumn(double cost, std::span<const double> coeffs,
                             double lo, double hi) {
  if (static_cast<int>(coeffs.size()) != num_rows()) {
    throw std::invalid_argument("column length does not match row count");
  }
  std::vector<ColumnEntry> entries;
  for (int i = 0; i < num_rows(); ++i) {
    if (coeffs[i] != 0.0) entries.push_back({i, coeffs[i]});
  }
  return AddSparseColumn(cost, std::move(entries), lo, hi);
}

int LinearProgram::AddSparseColumn(double cost,
                                   std::vector<ColumnEntry> entries, double lo,
                                   double hi) {
  if (lo > hi) throw std::invalid_argument("column lower bound > upper bound");
  std::sort(
      entries.begin(), entries.end(),
      [](const ColumnEntry& a, const ColumnEntry& b) { return a.row < b.row; });
  for (size_t k = 0; k < entries.size(); ++k) {
    if (entries[k].row < 0 || entries[k].row >= num_rows()) {
      throw std::invalid_argument("column entry row out of range");
    }
    if (k > 0 && entries[k].row == entries[k - 1].row) {
      throw std::invalid_argument("duplicate row in column");
    }
  }
  std::erase_if(entries, [](const ColumnEntry& e) { return e.value == 0.0; });
  cost_.push_back(cost);
  lower_.push_back(lo);
  upper_.push_back(hi);
  columns_.push_back(std::move(entries));
  return num_cols() - 1;
}

void LinearProgram::SetVarBounds(int col, double lo, double hi) {
  if (col < 0 || col >= num_cols()) {
    throw std::out_of_range("column index out of range");
  }
  if (lo > hi) throw std::invalid_argument("lower bound > upper bound");
  lower_[col] = lo;
  upper_[col] = hi;
}

double LinearProgram::row_lower(int row) const {
  return senses_[row] == RowSense::kLessEqual ? -kInfinity : rhs_[row];
}

double LinearProgram::row_upper(int row) const {
  return senses_[row] == RowSense::kGreaterEqual ? kInfinity : rhs_[row];
}

std::string LinearProgram::Dump() const {
  std::ostringstream out;
  out.precision(17);
  out << "LP " << num_rows() << ' ' << num_cols() << '\n';
  for (int i = 0; i < num_rows(); ++i) {
    const char s = senses_[i] == RowSense::kGreaterEqual ? 'G'
                   : senses_[i] == RowSense::kLessEqual  ? 'L'
                                                         : 'E';
    out << "ROW " << i << ' ' << s << ' ' << rhs_[i] << '\n';
  }
  for (int j = 0; j < num_cols(); ++j) {
    out << "COL " << j << ' ' << cost_[j] << ' ' << lower_[j] << ' '
        << upper_[j] << ' ' << columns_[j].size();
    for (const auto& e : columns_[j]) out << ' ' << e.row << ':' << e.value;
    out << '\n';
  }
  return out.str();
}

const char* LpStatusName(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal:
      return "optimal";
    case LpStatus::kInfeasible:
      return "infeasible";
    case LpStatus::kUnbounded:
      return "unbounded";
    case LpStatus::kIterationLimit:
      return "iteration_limit";
  }
  return "unknown";
}

bool VerifyFarkas(const LinearProgram& lp, std::span<const double> y,
                  double tol) {
  if (static_cast<int>(y.size()) != lp.num_rows()) return false;
  constexpr double kZero = 1e-12;
  double row_min = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    if (std::abs(y[i]) <= kZero) continue;
    switch (lp.sense(i)) {
      case RowSense::kGreaterEqual:
        if (y[i] < 0) return false;
        break;
      case RowSense::kLessEqual:
        if (y[i] > 0) return false;
        break;
      case RowSense::kEqual:
        break;
    }
    row_min += y[i] * lp.rhs(i);
  }
  double box_max = 0.0;
  for (int j = 0; j < lp.num_cols(); ++j) {
    double g = 0.0;
    for (const auto& e : lp.column(j)) g += y[e.row] * e.value;
    if (std::abs(g) <= kZero) continue;
    const double bound = g > 0 ? lp.upper(j) : lp.lower(j);
    if (std::isinf(bound)) return false;
    box_max += g * bound;
  }
  return row_min - box_max > tol;
}

double DualObjective(const LinearProgram& lp, const LpSolution& sol) {
  // Terms whose bound is infinite can only come from dual infeasibilities
  // within tolerance; they are dropped.
  auto term = [](double mult, double lo, double hi) {
    const double bound = mult > 0 ? lo : hi;
    return mult == 0.0 || std::isinf(bound) ? 0.0 : mult * bound;
  };
  double obj = 0.0;
  for (int i = 0; i < lp.num_rows(); ++i) {
    obj += term(sol.duals[i], lp.row_lower(i), lp.row_upper(i));
  }
  for (int j = 0; j < lp.num_cols(); ++j) {
    obj += term(sol.reduced_costs[j], lp.lower(j), lp.upper(j));
  }
  return obj;
}

}  // namespace ipboost
