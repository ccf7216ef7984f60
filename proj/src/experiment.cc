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

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "ipboost/error.h"
#include "ipboost/hard_instances.h"
#include "logging.h"

namespace ipboost {

std::string_view AlgorithmName(Algorithm a) {
  switch (a) {
    case Algorithm::kIpBoost:
      return "ipboost";
    case Algorithm::kLpBoost:
      return "lpboost";
    case Algorithm::kAdaBoost:
      return "adaboost";
  }
  return "?";
}

Algorithm ParseAlgorithm(std::string_view name) {
  if (name == "ipboost") return Algorithm::kIpBoost;
  if (name == "lpboost") return Algorithm::kLpBoost;
  if (name == "adaboost") return Algorithm::kAdaBoost;
  throw std::invalid_argument("unknown algorithm '" + std::string(name) + "'");
}

void ValidateExperimentConfig(const ExperimentConfig& cfg) {
  if (cfg.data_path.has_value() == cfg.hard.has_value()) {
    throw std::invalid_argument("give exactly one of a data file or --hard");
  }
  if (cfg.seeds.empty()) throw std::invalid_argument("no seeds");
  if (!(cfg.rho > 0.0 && cfg.rho <= 1.0)) {
    throw std::invalid_argument("rho must lie in (0, 1]");
  }
  if (cfg.subsample_cap < 1) throw std::invalid_argument("subsample cap < 1");
  if (cfg.stall_limit < 1) throw std::invalid_argument("stall limit < 1");
  if (!(cfg.time_limit_seconds > 0.0)) {
    throw std::invalid_argument("time limit must be positive");
  }
  if (!(cfg.test_fraction >= 0.0 && cfg.test_fraction < 1.0)) {
    throw std::invalid_argument("test fraction must lie in [0, 1)");
  }
  if (cfg.jobs < 1) throw std::invalid_argument("jobs < 1");
  if (cfg.hard) {
    if (cfg.hard->n_points < 1 || !(cfg.hard->noise_rate >= 0.0) ||
        !(cfg.hard->noise_rate < 0.5)) {
      throw std::invalid_argument("bad hard-instance parameters");
    }
  }
}

namespace {

using Clock = std::chrono::steady_clock;

struct SeedData {
  Dataset train;
  std::optional<Dataset> test;
};

SeedData MakeSplit(const ExperimentConfig& cfg,
                   const std::optional<Dataset>& file,
                   const std::optional<Dataset>& file_test, uint64_t seed) {
  if (cfg.hard) {
    HardInstanceConfig h;
    h.n_points = cfg.hard->n_points;
    h.noise_rate = cfg.hard->noise_rate;
    h.dimension = cfg.hard->dimension;
    h.seed = seed;
    HardInstance inst = GenerateHard(h);
    SplitResult s = Split(inst.data, {cfg.test_fraction, seed});
    return {std::move(s.train), std::move(s.test)};
  }
  if (file_test) return {*file, *file_test};
  SplitResult s = Split(*file, {cfg.test_fraction, seed});
  return {std::move(s.train), std::move(s.test)};
}

SeedOutcome RunSeed(const ExperimentConfig& cfg,
                    const std::optional<Dataset>& file,
                    const std::optional<Dataset>& file_test, uint64_t seed) {
  SeedOutcome out;
  out.seed = seed;
  try {
    SeedData split = MakeSplit(cfg, file, file_test, seed);
    const Dataset train = Subsample(split.train, cfg.subsample_cap, seed);
    const auto start = Clock::now();
    BoostedEnsemble ens;
    switch (cfg.algorithm) {
      case Algorithm::kIpBoost: {
        IpBoostConfig ic;
        ic.master.rho = cfg.rho;
        ic.master.max_columns = cfg.max_columns;
        ic.eta_kind = cfg.eta_kind;
        ic.stall_limit = cfg.stall_limit;
        ic.time_limit_seconds = cfg.time_limit_seconds;
        IpBoostResult r = TrainIpBoost(train, ic);
        ens = r.ensemble;
        out.time_to_best = r.stats.best_solution_time;
        out.nodes = r.stats.nodes_processed;
        if (cfg.keep_models) out.ipboost = std::move(r);
        break;
      }
      case Algorithm::kLpBoost: {
        MasterConfig mc;
        mc.rho = cfg.rho;
        mc.max_columns = cfg.max_columns;
        ens = TrainLpBoost(train, mc, cfg.eta_kind).ensemble;
        out.nodes = 1;
        break;
      }
      case Algorithm::kAdaBoost:
        ens = TrainAdaBoost(train, cfg.adaboost).ensemble;
        break;
    }
    out.time_total =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (cfg.algorithm != Algorithm::kIpBoost) out.time_to_best = out.time_total;
    out.train_accuracy = 100.0 * Accuracy(ens, train);
    out.test_accuracy =
        split.test ? 100.0 * Accuracy(ens, *split.test) : out.train_accuracy;
    out.learners = DistinctLearnerCount(ens.stumps);
    out.margin = ens.margin;
    if (cfg.keep_models) {
      out.train = train;
      out.model = std::move(ens);
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
    Log().error("{} seed {}: {}", cfg.name, seed, e.what());
  }
  return out;
}

}  // namespace

ExperimentReport RunExperiment(const ExperimentConfig& cfg) {
  ValidateExperimentConfig(cfg);
  std::optional<Dataset> file, file_test;
  if (cfg.data_path) {
    file = ReadLibsvmFile(*cfg.data_path);
    if (cfg.test_path) {
      file_test = ReadLibsvmFile(*cfg.test_path);
      AlignFeatureCounts(*file, *file_test);
    }
  }

  std::vector<uint64_t> seeds = cfg.seeds;
  std::sort(seeds.begin(), seeds.end());
  std::vector<SeedOutcome> outcomes(seeds.size());
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t k = next++; k < seeds.size(); k = next++) {
      outcomes[k] = RunSeed(cfg, file, file_test, seeds[k]);
    }
  };
  const int jobs = std::min<int>(cfg.jobs, static_cast<int>(seeds.size()));
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  }

  ExperimentReport r;
  r.name = cfg.name;
  r.algorithm = cfg.algorithm;
  r.rho = cfg.rho;
  r.eta_kind = cfg.eta_kind;
  std::vector<double> acc;
  double learners = 0.0, total = 0.0, to_best = 0.0, nodes = 0.0;
  for (const auto& o : outcomes) {
    if (!o.ok) {
      ++r.failures;
      continue;
    }
    acc.push_back(o.test_accuracy);
    learners += o.learners;
    total += o.time_total;
    to_best += o.time_to_best;
    nodes += static_cast<double>(o.nodes);
  }
  const double k = static_cast<double>(acc.size());
  if (!acc.empty()) {
    for (double a : acc) r.acc_mean += a;
    r.acc_mean /= k;
    if (acc.size() > 1) {
      double ss = 0.0;
      for (double a : acc) ss += (a - r.acc_mean) * (a - r.acc_mean);
      r.acc_std = std::sqrt(ss / (k - 1.0));
      r.std_defined = true;
    }
    r.learners_mean = learners / k;
    r.time_total = total / k;
    r.time_to_best = to_best / k;
    r.nodes_mean = nodes / k;
  } else {
    r.acc_mean = r.acc_std = r.learners_mean = std::nan("");
  }
  r.seeds = std::move(outcomes);
  return r;
}

std::string CsvHeader() {
  return "name,algo,rho,eta_kind,acc_mean,acc_std,L_mean,time_total,"
         "time_to_best,nodes";
}

std::string CsvRow(const ExperimentReport& r) {
  std::ostringstream out;
  out.setf(std::ios::fixed);
  out.precision(4);
  out << r.name << ',' << AlgorithmName(r.algorithm) << ',' << r.rho << ','
      << EtaKindTag(r.eta_kind) << ',' << r.acc_mean << ',' << r.acc_std << ','
      << r.learners_mean << ',' << r.time_total << ',' << r.time_to_best << ','
      << r.nodes_mean;
  return out.str();
}

void WriteCsv(const std::filesystem::path& path,
              const std::vector<ExperimentReport>& reports) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << CsvHeader() << '\n';
  for (const auto& r : reports) out << CsvRow(r) << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace ipboost
