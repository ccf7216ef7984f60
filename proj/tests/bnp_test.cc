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

#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "ipboost/ipboost.h"
#include "mip_oracle.h"

namespace ipboost {
namespace {

using testing::BruteForceMinErrors;
using testing::RandomBinaryData;

ErrorMatrix FullPool(const Dataset& ds) {
  ErrorMatrix em(ds.example_count(), EtaKind::kPlusMinus);
  for (const auto& s : StumpTrainer(ds).EnumerateCandidates()) {
    em.AddLearner(s, ds);
  }
  return em;
}

ErrorMatrix Matrix(const std::vector<std::vector<double>>& columns) {
  ErrorMatrix em(static_cast<int>(columns[0].size()), EtaKind::kPlusMinus);
  for (size_t j = 0; j < columns.size(); ++j) {
    DecisionStump s;
    s.feature = static_cast<int>(j);
    em.AddColumn(s, columns[j]);
  }
  return em;
}

TEST(BranchSelectTest, MostFractionalLowestIndex) {
  EXPECT_EQ(BranchSelect(std::vector<double>{0.0, 0.3, 0.6, 1.0}), 2);
  EXPECT_EQ(BranchSelect(std::vector<double>{0.4, 0.6}), 0);
  EXPECT_EQ(BranchSelect(std::vector<double>{1.0, 1e-7, 0.999}), 2);
  EXPECT_THROW(BranchSelect(std::vector<double>{0.0, 1.0, 1.0 - 1e-8}),
               std::invalid_argument);
}

TEST(RoundingTest, MarksExamplesBelowMargin) {
  ErrorMatrix em = Matrix({{1, 1, -1}, {1, -1, -1}});
  std::vector<double> lambda = {0.5, 0.5};
  auto r = RoundingHeuristic(lambda, em, 0.05);
  ASSERT_TRUE(r.has_value());
  EXPECT_EQ(r->z, (std::vector<int>{0, 1, 1}));
  EXPECT_EQ(r->objective, 2);
  // A score below -1 cannot be covered by z = 1.
  ErrorMatrix deep(1, EtaKind::kSammeR);
  deep.AddColumn(DecisionStump{}, {-3.0});
  std::vector<double> one = {1.0};
  EXPECT_FALSE(RoundingHeuristic(one, deep, 0.05).has_value());
}

TEST(PostprocessTest, MatchesGridSearchOnTwoLearners) {
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 6;
    std::vector<double> a(n), b(n);
    for (int i = 0; i < n; ++i) {
      a[i] = u(rng);
      b[i] = u(rng);
    }
    ErrorMatrix em = Matrix({a, b});
    std::vector<int> z(n, 0);
    z[0] = trial % 3 == 0;
    double grid = -INFINITY;
    for (int k = 0; k <= 10000; ++k) {
      const double t = k / 10000.0;
      std::vector<double> lam = {t, 1.0 - t};
      grid = std::max(grid, AchievedMargin(em, lam, z));
    }
    MarginResult r = PostprocessMargin(em, z);
    EXPECT_NEAR(r.weights[0] + r.weights[1], 1.0, 1e-12);
    EXPECT_GE(r.margin, grid - 1e-9);
    EXPECT_LE(r.margin, grid + 2e-4 + 1e-9);
    EXPECT_NEAR(r.margin, AchievedMargin(em, r.weights, z), 1e-12);
  }
}

TEST(PostprocessTest, NoKeptExamples) {
  ErrorMatrix em = Matrix({{1, -1}, {-1, 1}});
  std::vector<int> z = {1, 1};
  MarginResult r = PostprocessMargin(em, z);
  EXPECT_TRUE(std::isinf(r.margin));
  EXPECT_EQ(r.weights, (std::vector<double>{0.5, 0.5}));
}

TEST(Lemma1Test, Examples) {
  ErrorMatrix em = Matrix({{1, 1, -1}, {1, -1, 1}, {-1, 1, 1}});
  std::vector<int> z = {0, 1, 1};
  // Heavy learner 0 is right on the kept example.
  std::vector<double> heavy = {0.6, 0.2, 0.2};
  EXPECT_EQ(Lemma1Reduce(heavy, z, em, 0.05), 0);
  // Three equal weights at rho = 0.05: 3 < 2 / 0.95 fails and 1/3 < 0.475.
  std::vector<double> even = {1.0 / 3, 1.0 / 3, 1.0 / 3};
  EXPECT_EQ(Lemma1Reduce(even, z, em, 0.05), std::nullopt);
  // rho = 1 always applies.
  std::vector<double> pair = {0.5, 0.5, 0.0};
  EXPECT_EQ(Lemma1Reduce(pair, std::vector<int>{0, 1, 1}, em, 1.0), 0);
  // The check fails when the heaviest learner misses a kept example.
  std::vector<double> wrong = {0.1, 0.1, 0.8};
  EXPECT_EQ(Lemma1Reduce(wrong, std::vector<int>{0, 0, 0}, em, 0.05),
            std::nullopt);
  ErrorMatrix real(1, EtaKind::kClassProb);
  real.AddColumn(DecisionStump{}, {0.5});
  EXPECT_THROW(
      Lemma1Reduce(std::vector<double>{1.0}, std::vector<int>{0}, real, 0.05),
      std::invalid_argument);
}

TEST(TrainIpBoostTest, MatchesBruteForceOnBinaryData) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 4 + trial % 7, d = 1 + trial % 3;
    Dataset ds = RandomBinaryData(rng, n, d);
    const double rho = trial % 2 ? 0.05 : 0.2;
    IpBoostConfig cfg;
    cfg.master.rho = rho;
    IpBoostResult r = TrainIpBoost(ds, cfg);
    ASSERT_TRUE(r.stats.optimal);
    EXPECT_EQ(r.stats.incumbent_value, BruteForceMinErrors(FullPool(ds), rho))
        << "trial " << trial;
    EXPECT_EQ(std::accumulate(r.z.begin(), r.z.end(), 0),
              r.stats.incumbent_value);
    EXPECT_NEAR(r.stats.lower_bound, r.stats.incumbent_value, 1e-9);
    r.ensemble.Validate();
    EXPECT_GE(r.achieved_margin, rho - 1e-7);
  }
}

TEST(TrainIpBoostTest, Xor) {
  Dataset ds({-1, -1, -1, 1, 1, -1, 1, 1}, {-1, 1, 1, -1}, 2);
  IpBoostConfig cfg;
  IpBoostResult r = TrainIpBoost(ds, cfg);
  EXPECT_TRUE(r.stats.optimal);
  EXPECT_EQ(r.stats.incumbent_value, BruteForceMinErrors(FullPool(ds), 0.05));
  EXPECT_GE(r.stats.incumbent_value, 1);
}

TEST(TrainIpBoostTest, LimitsAndDeterminism) {
  std::mt19937_64 rng(8);
  Dataset ds = RandomBinaryData(rng, 40, 6);
  IpBoostConfig cfg;
  cfg.max_nodes = 1;
  IpBoostResult one = TrainIpBoost(ds, cfg);
  EXPECT_TRUE(one.stats.node_limit_hit);
  EXPECT_FALSE(one.stats.optimal);
  EXPECT_EQ(one.stats.nodes_processed, 1);
  cfg.max_nodes = 0;
  cfg.stall_limit = 3;
  IpBoostResult a = TrainIpBoost(ds, cfg), b = TrainIpBoost(ds, cfg);
  EXPECT_EQ(a.z, b.z);
  EXPECT_EQ(a.ensemble.weights, b.ensemble.weights);
  EXPECT_LE(a.stats.incumbent_value, one.stats.incumbent_value);
  EXPECT_LE(a.stats.lower_bound, a.stats.incumbent_value + 1e-9);
  cfg.stall_limit = 0;
  EXPECT_THROW(TrainIpBoost(ds, cfg), std::invalid_argument);
}

TEST(TrainIpBoostTest, PostprocessKeepsSupportAndClassification) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 10; ++trial) {
    Dataset ds = RandomBinaryData(rng, 30, 5);
    for (EtaKind kind : {EtaKind::kPlusMinus, EtaKind::kClassProb}) {
      IpBoostConfig cfg;
      cfg.eta_kind = kind;
      cfg.stall_limit = 50;
      IpBoostResult r = TrainIpBoost(ds, cfg);
      ErrorMatrix em(30, kind);
      for (const auto& s : r.support) em.AddLearner(s, ds);
      const double before = AchievedMargin(em, r.support_weights, r.z);
      EXPECT_GE(r.achieved_margin, before - 1e-9);
      EXPECT_GE(before, cfg.master.rho - 1e-7);
      EXPECT_LE(r.ensemble.size(), static_cast<int>(r.support.size()));
    }
  }
}

TEST(TrainIpBoostTest, SammeRScoresStillGiveASolution) {
  std::mt19937_64 rng(13);
  Dataset ds = RandomBinaryData(rng, 25, 4);
  IpBoostConfig cfg;
  cfg.eta_kind = EtaKind::kSammeR;
  cfg.stall_limit = 50;
  IpBoostResult r = TrainIpBoost(ds, cfg);
  r.ensemble.Validate();
  EXPECT_GE(r.stats.incumbent_value, 0);
  EXPECT_LE(r.stats.incumbent_value, 25);
}

}  // namespace
}  // namespace ipboost
