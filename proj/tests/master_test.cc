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

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "ipboost/hard_instances.h"
#include "ipboost/learners.h"
#include "mip_oracle.h"

namespace ipboost {
namespace {

using testing::RandomBinaryData;

Dataset SmallData(std::mt19937_64& rng, int n, int d) {
  std::uniform_int_distribution<int> level(0, 3);
  std::bernoulli_distribution coin(0.5);
  std::vector<double> x(n * d);
  std::vector<int> y(n);
  for (auto& v : x) v = level(rng);
  for (auto& v : y) v = coin(rng) ? 1 : -1;
  return Dataset(x, y, d);
}

// Master over every candidate stump, solved in one shot.
double FullPoolOptimum(const Dataset& ds, double rho, const ZBounds& b) {
  ErrorMatrix em(ds.example_count(), EtaKind::kPlusMinus);
  for (const auto& s : StumpTrainer(ds).EnumerateCandidates()) {
    em.AddLearner(s, ds);
  }
  LpSolution sol = Solve(BuildMaster(em, rho, b));
  return sol.status == LpStatus::kOptimal ? sol.objective : INFINITY;
}

ZBounds RandomFixings(std::mt19937_64& rng, int n) {
  ZBounds b = ZBounds::Free(n);
  std::uniform_int_distribution<int> pick(0, 3);
  for (int i = 0; i < n; ++i) {
    switch (pick(rng)) {
      case 0:
        b.hi[i] = 0.0;
        break;
      case 1:
        b.lo[i] = 1.0;
        break;
      default:
        break;
    }
  }
  return b;
}

TEST(MasterTest, LayoutOfBuiltLp) {
  ErrorMatrix em(2, EtaKind::kPlusMinus);
  em.AddColumn(DecisionStump{}, {1.0, -1.0});
  EXPECT_THROW(em.AddColumn(DecisionStump{}, {1.0}), std::invalid_argument);
  ZBounds b = ZBounds::Free(2);
  b.hi[1] = 0.0;
  LinearProgram lp = BuildMaster(em, 0.25, b);
  EXPECT_EQ(lp.Dump(),
            "LP 3 3\n"
            "ROW 0 G 0.25\nROW 1 G 0.25\nROW 2 E 1\n"
            "COL 0 1 0 1 1 0:1.25\n"
            "COL 1 1 0 0 1 1:1.25\n"
            "COL 2 0 0 inf 3 0:1 1:-1 2:1\n");
  EXPECT_EQ(LambdaColumn(2, 0), 2);
  EXPECT_THROW(BuildMaster(em, 0.25, ZBounds::Free(3)), std::invalid_argument);
}

TEST(MasterTest, ValidatesConfig) {
  MasterConfig c;
  c.rho = 0.0;
  EXPECT_THROW(ValidateMasterConfig(c), std::invalid_argument);
  c.rho = 1.5;
  EXPECT_THROW(ValidateMasterConfig(c), std::invalid_argument);
  c.rho = 0.1;
  c.max_columns = 0;
  EXPECT_THROW(ValidateMasterConfig(c), std::invalid_argument);
}

TEST(MasterTest, SingleExample) {
  Dataset ds({0.0}, {1}, 1);
  RestrictedMaster m(ds, EtaKind::kPlusMinus, MasterConfig{});
  ColgenResult r = m.Solve(ZBounds::Free(1));
  ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.lp.objective, 0.0, 1e-9);
  EXPECT_EQ(m.errors().learner_count(), 1);
}

TEST(MasterTest, ExtractDualsNeedsOptimum) {
  LpSolution sol;
  sol.status = LpStatus::kInfeasible;
  EXPECT_THROW(ExtractDuals(sol, ZBounds::Free(1), 0.1), std::invalid_argument);
}

TEST(MasterTest, ConflictingExamplesCannotBothBeKept) {
  Dataset ds({1.0, 1.0}, {1, -1}, 1);
  RestrictedMaster m(ds, EtaKind::kPlusMinus, MasterConfig{});
  ZBounds keep_both = ZBounds::Free(2);
  keep_both.hi = {0.0, 0.0};
  EXPECT_EQ(m.Solve(keep_both).lp.status, LpStatus::kInfeasible);
  // Relaxed: the cheapest fractional fix puts equal mass on both z.
  ColgenResult r = m.Solve(ZBounds::Free(2));
  ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.lp.objective, 2 * 0.05 / 1.05, 1e-9);
}

TEST(MasterTest, FarkasPricingRepairsInfeasibleMaster) {
  Dataset ds({0.0, 1.0, 2.0, 3.0}, {-1, 1, 1, -1}, 1);
  RestrictedMaster m(ds, EtaKind::kPlusMinus, MasterConfig{});
  // No single stump keeps all four examples; three of them together do.
  ZBounds all_kept = ZBounds::Free(4);
  all_kept.hi.assign(4, 0.0);
  ColgenResult r = m.Solve(all_kept);
  ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
  EXPECT_NEAR(r.lp.objective, 0.0, 1e-12);
  EXPECT_GE(r.columns_added, 2);
}

TEST(PricingTest, MatchesExhaustiveSearch) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-0.2, 1.0), vd(-1.0, 1.0);
  for (int trial = 0; trial < 200; ++trial) {
    Dataset ds = SmallData(rng, 2 + trial % 10, 1 + trial % 3);
    const int n = ds.example_count();
    std::vector<double> w(n);
    for (auto& x : w) x = u(rng);
    const double v = vd(rng);
    StumpTrainer t(ds);
    double best = -INFINITY;
    std::vector<double> clipped(n);
    for (int i = 0; i < n; ++i) clipped[i] = std::max(0.0, w[i]);
    for (const auto& s : t.EnumerateCandidates()) {
      best = std::max(
          best, ReducedCost(EtaColumn(s, ds, EtaKind::kPlusMinus), clipped, v));
    }
    auto col = Price(t, w, v, EtaKind::kPlusMinus, 1e-6);
    if (best > 1e-6 + 1e-9) {
      ASSERT_TRUE(col.has_value()) << "trial " << trial;
      EXPECT_NEAR(ReducedCost(col->eta, clipped, v), best, 1e-9);
      EXPECT_NEAR(col->reduced_cost, best, 1e-9);
    } else if (best < 1e-6 - 1e-9) {
      EXPECT_FALSE(col.has_value()) << "trial " << trial;
    }
  }
}

TEST(ColumnGenerationTest, MatchesFullPoolUnderFixings) {
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 120; ++trial) {
    Dataset ds = SmallData(rng, 3 + trial % 10, 1 + trial % 3);
    const int n = ds.example_count();
    const double rho = trial % 2 ? 0.05 : 0.3;
    ZBounds b = trial < 30 ? ZBounds::Free(n) : RandomFixings(rng, n);
    MasterConfig cfg;
    cfg.rho = rho;
    RestrictedMaster m(ds, EtaKind::kPlusMinus, cfg);
    ColgenResult r = m.Solve(b);
    const double oracle = FullPoolOptimum(ds, rho, b);
    if (std::isinf(oracle)) {
      EXPECT_EQ(r.lp.status, LpStatus::kInfeasible) << "trial " << trial;
      continue;
    }
    ASSERT_EQ(r.lp.status, LpStatus::kOptimal) << "trial " << trial;
    EXPECT_NEAR(r.lp.objective, oracle, 1e-6) << "trial " << trial;
    // Strong duality through the recovered multipliers.
    DualValues d = ExtractDuals(r.lp, b, rho);
    EXPECT_NEAR(d.Objective(rho), r.lp.objective, 1e-6) << "trial " << trial;
    for (int i = 0; i < n; ++i) {
      EXPECT_GE(d.w[i], 0.0);
      EXPECT_GE(d.u[i], 0.0);
      EXPECT_LE(d.w[i], 1.0 / (1.0 + rho) + 1e-7 + d.u[i] / (1.0 + rho));
    }
    // No stump prices out at termination.
    for (const auto& s : StumpTrainer(ds).EnumerateCandidates()) {
      EXPECT_LE(ReducedCost(EtaColumn(s, ds, EtaKind::kPlusMinus), d.w, d.v),
                1e-6);
    }
  }
}

TEST(ColumnGenerationTest, ObjectiveNonIncreasingInColumns) {
  std::mt19937_64 rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    Dataset ds = RandomBinaryData(rng, 12, 3);
    double last = INFINITY;
    for (int cap = 1; cap <= 8; ++cap) {
      MasterConfig cfg;
      cfg.max_columns = cap;
      RestrictedMaster m(ds, EtaKind::kPlusMinus, cfg);
      ColgenResult r = m.Solve(ZBounds::Free(12));
      ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
      EXPECT_LE(r.lp.objective, last + 1e-9);
      EXPECT_LE(m.errors().learner_count(), cap);
      last = r.lp.objective;
    }
  }
}

TEST(ColumnGenerationTest, ColgenSolveFillsMatrix) {
  Dataset ds({0.0, 1.0, 2.0, 3.0}, {1, -1, 1, -1}, 1);
  ErrorMatrix em(4, EtaKind::kClassProb);
  MasterConfig cfg;
  ColgenResult r = ColgenSolve(ds, cfg, ZBounds::Free(4), em);
  ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
  EXPECT_GE(em.learner_count(), 1);
  for (int j = 0; j < em.learner_count(); ++j) {
    for (int i = 0; i < 4; ++i) {
      EXPECT_GT(em.at(i, j), -1.0);
      EXPECT_LT(em.at(i, j), 1.0);
    }
  }
}

TEST(ColumnGenerationTest, CleanHardInstanceIsRealizable) {
  // Equal weights on the 21 coordinate stumps give margin >= 1/21 on every
  // clean point, so rho = 0.04 is reachable with every z fixed to 0.
  for (uint64_t seed : {0, 1, 2}) {
    HardInstanceConfig hc;
    hc.n_points = 300;
    hc.noise_rate = 0.0;
    hc.seed = seed;
    const Dataset ds = GenerateHard(hc).data;
    MasterConfig cfg;
    cfg.rho = 0.04;
    ErrorMatrix em(ds.example_count(), EtaKind::kPlusMinus);
    ZBounds kept{std::vector<double>(ds.example_count(), 0.0),
                 std::vector<double>(ds.example_count(), 0.0)};
    ColgenResult r = ColgenSolve(ds, cfg, kept, em);
    ASSERT_EQ(r.lp.status, LpStatus::kOptimal) << "seed " << seed;
    EXPECT_NEAR(r.lp.objective, 0.0, 1e-9);
    em = ErrorMatrix(ds.example_count(), EtaKind::kPlusMinus);
    r = ColgenSolve(ds, cfg, ZBounds::Free(ds.example_count()), em);
    ASSERT_EQ(r.lp.status, LpStatus::kOptimal);
    EXPECT_NEAR(r.lp.objective, 0.0, 1e-9);
  }
}

}  // namespace
}  // namespace ipboost
