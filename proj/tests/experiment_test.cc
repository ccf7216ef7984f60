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

#include "ipboost/experiment.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "ipboost/error.h"
#include "ipboost/model_io.h"

namespace ipboost {
namespace {

const std::string kDataDir = IPBOOST_TEST_DATA_DIR;

BoostedEnsemble RandomEnsemble(std::mt19937_64& rng, int size, int d) {
  std::uniform_real_distribution<double> u(0.0, 1.0), x(-2.0, 2.0);
  std::uniform_int_distribution<int> feature(0, d - 1);
  BoostedEnsemble ens;
  ens.eta_kind = static_cast<EtaKind>(rng() % 3);
  ens.margin = u(rng);
  double sum = 0.0;
  for (int j = 0; j < size; ++j) {
    DecisionStump s;
    s.feature = feature(rng);
    s.threshold = j == 0 ? kInfinity : x(rng);
    s.polarity = u(rng) < 0.5 ? 1 : -1;
    s.class_prob_pos = u(rng);
    s.class_prob_neg = u(rng);
    ens.stumps.push_back(s);
    ens.weights.push_back(u(rng) + 0.01);
    sum += ens.weights.back();
  }
  for (double& w : ens.weights) w /= sum;
  return ens;
}

TEST(ModelIoTest, RoundTripPreservesPredictions) {
  std::mt19937_64 rng(51);
  std::uniform_real_distribution<double> x(-2.0, 2.0);
  for (int trial = 0; trial < 20; ++trial) {
    BoostedEnsemble ens = RandomEnsemble(rng, 1 + trial % 7, 4);
    BoostedEnsemble back = ModelFromJson(ModelToJson(ens));
    EXPECT_EQ(back.eta_kind, ens.eta_kind);
    EXPECT_EQ(back.margin, ens.margin);
    EXPECT_EQ(back.weights, ens.weights);
    for (int p = 0; p < 1000; ++p) {
      std::vector<double> pt = {x(rng), x(rng), x(rng), x(rng)};
      ASSERT_EQ(back.Decision(pt), ens.Decision(pt));
    }
  }
}

TEST(ModelIoTest, RejectsBadModels) {
  EXPECT_THROW(ModelToJson(BoostedEnsemble{}), std::invalid_argument);
  std::mt19937_64 rng(52);
  const std::string good = ModelToJson(RandomEnsemble(rng, 2, 3));
  auto replaced = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  EXPECT_THROW(ModelFromJson("{"), ModelFormatError);
  EXPECT_THROW(ModelFromJson(replaced("\"version\": 1", "\"version\": 2")),
               ModelFormatError);
  const size_t at = good.find("\"eta_kind\": \"");
  std::string bad_kind = good;
  bad_kind.replace(at, good.find('"', at + 13) - at + 1,
                   "\"eta_kind\": \"iv\"");
  EXPECT_THROW(ModelFromJson(bad_kind), ModelFormatError);
  EXPECT_THROW(ModelFromJson(replaced("\"learners\": [",
                                      "\"learners\": [],"
                                      "\"x\": [")),
               ModelFormatError);
  EXPECT_THROW(ModelFromJson(replaced("ipboost-ensemble", "other")),
               ModelFormatError);
}

TEST(ModelIoTest, SavesAndLoadsFiles) {
  std::mt19937_64 rng(53);
  BoostedEnsemble ens = RandomEnsemble(rng, 3, 2);
  ens.margin = kInfinity;
  const auto path =
      std::filesystem::temp_directory_path() / "ipboost_model_io_test.json";
  SaveModel(ens, path);
  BoostedEnsemble back = LoadModel(path);
  std::filesystem::remove(path);
  EXPECT_TRUE(std::isinf(back.margin));
  EXPECT_TRUE(std::isinf(back.stumps[0].threshold));
  EXPECT_THROW(LoadModel(path), Error);
}

ExperimentConfig HeartConfig(Algorithm a) {
  ExperimentConfig c;
  c.name = "heart";
  c.data_path = kDataDir + "/heart_scale";
  c.algorithm = a;
  c.seeds = {0, 1, 2};
  c.stall_limit = 20;
  c.adaboost.iterations = 20;
  return c;
}

TEST(ExperimentTest, ValidatesConfig) {
  ExperimentConfig c = HeartConfig(Algorithm::kLpBoost);
  c.hard = HardSource{};
  EXPECT_THROW(ValidateExperimentConfig(c), std::invalid_argument);
  c = HeartConfig(Algorithm::kLpBoost);
  c.seeds.clear();
  EXPECT_THROW(ValidateExperimentConfig(c), std::invalid_argument);
  c = HeartConfig(Algorithm::kLpBoost);
  c.rho = 0.0;
  EXPECT_THROW(ValidateExperimentConfig(c), std::invalid_argument);
  EXPECT_EQ(ParseAlgorithm(AlgorithmName(Algorithm::kAdaBoost)),
            Algorithm::kAdaBoost);
  EXPECT_THROW(ParseAlgorithm("svm"), std::invalid_argument);
}

TEST(ExperimentTest, SampleStandardDeviationAndCsv) {
  ExperimentReport r = RunExperiment(HeartConfig(Algorithm::kLpBoost));
  ASSERT_EQ(r.failures, 0);
  ASSERT_EQ(r.seeds.size(), 3u);
  double mean = 0.0;
  for (const auto& s : r.seeds) mean += s.test_accuracy / 3.0;
  double ss = 0.0;
  for (const auto& s : r.seeds) {
    ss += (s.test_accuracy - mean) * (s.test_accuracy - mean);
  }
  EXPECT_NEAR(r.acc_mean, mean, 1e-9);
  EXPECT_NEAR(r.acc_std, std::sqrt(ss / 2.0), 1e-9);
  EXPECT_TRUE(r.std_defined);
  const std::string row = CsvRow(r);
  EXPECT_EQ(row.rfind("heart,lpboost,0.0500,i,", 0), 0u) << row;
  const std::string header = CsvHeader();
  EXPECT_EQ(std::count(row.begin(), row.end(), ','),
            std::count(header.begin(), header.end(), ','));

  ExperimentConfig one = HeartConfig(Algorithm::kLpBoost);
  one.seeds = {4};
  ExperimentReport single = RunExperiment(one);
  EXPECT_FALSE(single.std_defined);
  EXPECT_EQ(single.acc_std, 0.0);
}

TEST(ExperimentTest, DeterministicAcrossJobCounts) {
  ExperimentConfig c = HeartConfig(Algorithm::kIpBoost);
  ExperimentReport serial = RunExperiment(c);
  c.jobs = 3;
  ExperimentReport parallel = RunExperiment(c);
  ASSERT_EQ(serial.seeds.size(), parallel.seeds.size());
  for (size_t k = 0; k < serial.seeds.size(); ++k) {
    EXPECT_EQ(serial.seeds[k].test_accuracy, parallel.seeds[k].test_accuracy);
    EXPECT_EQ(serial.seeds[k].learners, parallel.seeds[k].learners);
    EXPECT_EQ(serial.seeds[k].nodes, parallel.seeds[k].nodes);
  }
}

TEST(ExperimentTest, AdaBoostIgnoresRho) {
  ExperimentConfig c = HeartConfig(Algorithm::kAdaBoost);
  ExperimentReport a = RunExperiment(c);
  c.rho = 0.3;
  ExperimentReport b = RunExperiment(c);
  EXPECT_EQ(a.acc_mean, b.acc_mean);
  EXPECT_EQ(a.learners_mean, b.learners_mean);
}

TEST(ExperimentTest, HardInstancesAndFailures) {
  ExperimentConfig c;
  c.name = "hard";
  c.hard = HardSource{200, 0.1, 21};
  c.algorithm = Algorithm::kLpBoost;
  c.seeds = {0, 1};
  c.keep_models = true;
  ExperimentReport r = RunExperiment(c);
  ASSERT_EQ(r.failures, 0);
  EXPECT_EQ(r.seeds[0].train->example_count(), 160);
  EXPECT_TRUE(r.seeds[0].model.has_value());

  ExperimentConfig missing = HeartConfig(Algorithm::kLpBoost);
  missing.data_path = "/nonexistent/data";
  EXPECT_THROW(RunExperiment(missing), Error);
}

}  // namespace
}  // namespace ipboost
