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

#ifndef IPBOOST_SPARSIFY_H_
#define IPBOOST_SPARSIFY_H_

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ipboost/master.h"

namespace ipboost {

struct SparsifyConfig {
  // Cost alpha_j >= 0 of using learner j; one per column.
  std::vector<double> alphas;
  double rho = 0.05;
  int64_t max_nodes = 100000;
  bool use_iis_cuts = true;
  // Separation rounds at the root.
  int max_cut_rounds = 20;
};

struct SparsifyResult {
  // Learner selection y, weights lambda (zero off the selection), and z.
  std::vector<int> y;
  std::vector<double> lambda;
  std::vector<int> z;
  double objective = 0.0;
  // False when the node budget ran out; the result is then the best found.
  bool optimal = false;
  int64_t nodes = 0;
  std::vector<std::vector<int>> cuts;
  // Root relaxation value before and after the cuts.
  double root_bound = 0.0;
  double root_bound_with_cuts = 0.0;
};

// Exact branch-and-bound on (y, z) for
//   min sum_i z_i + sum_j alpha_j y_j
//   s.t. sum_j eta_ij lambda_j + (1 + rho) z_i >= rho, sum_j lambda_j = 1,
//        0 <= lambda_j <= y_j, z and y binary,
// over the fixed columns of `em`. Throws std::invalid_argument on a
// negative or missing alpha.
SparsifyResult Sparsify(const ErrorMatrix& em, const SparsifyConfig& cfg);

// True when {sum_j eta_ij lambda_j >= rho for i in examples, sum lambda = 1,
// lambda >= 0} has a solution.
bool MarginSystemFeasible(const ErrorMatrix& em, double rho,
                          std::span<const int> examples);

// An irreducible infeasible subset I of `candidates`: the margin system over
// I has no solution while every proper subset does, so sum_{i in I} z_i >= 1
// holds for every feasible (lambda, z). Found as the support of a vertex of
// the alternative polyhedron
//   { w >= 0, v : sum_i eta_ij w_i + v <= 0 for all j, rho sum_i w_i + v >= 1 }
// minimizing sum_i c_i w_i (c = 1 when `costs` is empty), then shrunk by a
// deletion filter. Nothing when the system over `candidates` is feasible.
std::optional<std::vector<int>> FindIisCut(const ErrorMatrix& em, double rho,
                                           std::span<const int> candidates,
                                           std::span<const double> costs = {});

// Several cuts: after each one, its most weighted example is removed from
// the candidates and the search repeats, at most `max_cuts` times.
std::vector<std::vector<int>> FindIisCuts(const ErrorMatrix& em, double rho,
                                          std::span<const int> candidates,
                                          int max_cuts);

}  // namespace ipboost

#endif  // IPBOOST_SPARSIFY_H_
