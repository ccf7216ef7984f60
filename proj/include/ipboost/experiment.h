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

#ifndef IPBOOST_EXPERIMENT_H_
#define IPBOOST_EXPERIMENT_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ipboost/baselines.h"
#include "ipboost/dataset.h"
#include "ipboost/ipboost.h"
#include "ipboost/learners.h"

namespace ipboost {

enum class Algorithm { kIpBoost, kLpBoost, kAdaBoost };

std::string_view AlgorithmName(Algorithm a);
// "ipboost", "lpboost", "adaboost"; throws std::invalid_argument otherwise.
Algorithm ParseAlgorithm(std::string_view name);

struct HardSource {
  int n_points = 2000;
  double noise_rate = 0.1;
  int dimension = 21;
};

struct ExperimentConfig {
  std::string name;
  // Exactly one of data_path / hard.
  std::optional<std::filesystem::path> data_path;
  // Companion test file; without one each seed splits off 20 % for testing.
  std::optional<std::filesystem::path> test_path;
  std::optional<HardSource> hard;
  Algorithm algorithm = Algorithm::kIpBoost;
  double rho = 0.05;
  EtaKind eta_kind = EtaKind::kPlusMinus;
  std::vector<uint64_t> seeds = {0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  int stall_limit = 5000;
  double time_limit_seconds = 300.0;
  int subsample_cap = 30000;
  int max_columns = 500;
  double test_fraction = 0.2;
  AdaBoostConfig adaboost;
  // Seeds run concurrently on this many workers.
  int jobs = 1;
  // Keep each seed's training set and model in the report.
  bool keep_models = false;
};

// Throws std::invalid_argument when the config breaks an invariant.
void ValidateExperimentConfig(const ExperimentConfig& cfg);

struct SeedOutcome {
  uint64_t seed = 0;
  bool ok = false;
  std::string error;
  // Percent.
  double train_accuracy = 0.0;
  double test_accuracy = 0.0;
  int learners = 0;
  double time_total = 0.0;
  double time_to_best = 0.0;
  int64_t nodes = 0;
  double margin = 0.0;
  // Only with keep_models.
  std::optional<Dataset> train;
  std::optional<BoostedEnsemble> model;
  std::optional<IpBoostResult> ipboost;
};

struct ExperimentReport {
  std::string name;
  Algorithm algorithm = Algorithm::kIpBoost;
  double rho = 0.0;
  EtaKind eta_kind = EtaKind::kPlusMinus;
  // Over successful seeds; std is the sample standard deviation, 0 with a
  // single seed (std_defined is then false).
  double acc_mean = 0.0;
  double acc_std = 0.0;
  bool std_defined = false;
  double learners_mean = 0.0;
  double time_total = 0.0;
  double time_to_best = 0.0;
  double nodes_mean = 0.0;
  int failures = 0;
  // Sorted by seed.
  std::vector<SeedOutcome> seeds;
};

// Per seed: build the split (hard instances are generated with the seed
// before splitting), subsample the training part, train, and evaluate. A
// failing seed is recorded and the others still run. Throws Error when the
// data cannot be read.
ExperimentReport RunExperiment(const ExperimentConfig& cfg);

// name,algo,rho,eta_kind,acc_mean,acc_std,L_mean,time_total,time_to_best,nodes
std::string CsvHeader();
std::string CsvRow(const ExperimentReport& r);
void WriteCsv(const std::filesystem::path& path,
              const std::vector<ExperimentReport>& reports);

}  // namespace ipboost

#endif  // IPBOOST_EXPERIMENT_H_
