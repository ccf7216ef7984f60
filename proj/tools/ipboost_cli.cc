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

// Command-line experiment runner.
//
//   ipboost_cli --hard 2000 0.1 --algo ipboost --rho 0.05 --seeds 5 --out r.csv
//   ipboost_cli --data heart_scale --algo lpboost --eta ii
//   ipboost_cli --hard-sweep --seeds 5 --stall 500 --out sweep.csv

#include <CLI11.hpp>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "ipboost/error.h"
#include "ipboost/experiment.h"
#include "ipboost/model_io.h"

namespace {

// (N, gamma) grid of the hard-instance sweep.
const std::vector<std::pair<int, double>> kHardSweepRows = {
    {2000, 0.1},    {2000, 0.075},  {2000, 0.05},   {4000, 0.1},
    {4000, 0.075},  {4000, 0.05},   {8000, 0.1},    {8000, 0.075},
    {8000, 0.05},   {16000, 0.1},   {16000, 0.075}, {16000, 0.05},
    {32000, 0.1},   {32000, 0.075}, {32000, 0.05},  {64000, 0.1},
    {64000, 0.075}, {64000, 0.05}};

std::string HardName(int n, double gamma) {
  std::ostringstream s;
  s << "hard_N" << n << "_g" << gamma;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Boosting by branch-and-price, with LPBoost and AdaBoost"};
  std::string data, test, algo = "ipboost", eta = "i", out, model_out;
  std::vector<double> hard;
  double rho = 0.05, time_limit = 300.0;
  int seeds = 10, stall = 5000, subsample = 30000, jobs = 1, max_columns = 500;
  int ada_iterations = 100;
  bool hard_sweep = false, samme_r = false;

  auto* data_opt = app.add_option("--data", data, "LIBSVM training file");
  app.add_option("--test", test, "LIBSVM test file (default: 20% split)")
      ->needs(data_opt);
  auto* hard_opt =
      app.add_option("--hard", hard, "Hard instance: N GAMMA")->expected(2);
  auto* table_opt = app.add_flag("--hard-sweep", hard_sweep,
                                 "Run the full (N, gamma) hard-instance grid");
  data_opt->excludes(hard_opt)->excludes(table_opt);
  hard_opt->excludes(table_opt);
  app.add_option("--algo", algo, "ipboost | lpboost | adaboost | all")
      ->check(CLI::IsMember({"ipboost", "lpboost", "adaboost", "all"}));
  app.add_option("--rho", rho, "Margin")->check(CLI::Range(1e-9, 1.0));
  app.add_option("--eta", eta, "Error function i | ii | iii")
      ->check(CLI::IsMember({"i", "ii", "iii"}));
  app.add_option("--seeds", seeds, "Seeds 0..K-1")->check(CLI::PositiveNumber);
  app.add_option("--stall", stall, "Stall limit (nodes)")
      ->check(CLI::PositiveNumber);
  app.add_option("--time-limit", time_limit, "Seconds per seed")
      ->check(CLI::PositiveNumber);
  app.add_option("--subsample", subsample, "Training subsample cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-columns", max_columns, "Column pool cap")
      ->check(CLI::PositiveNumber);
  app.add_option("--ada-iterations", ada_iterations, "AdaBoost rounds")
      ->check(CLI::PositiveNumber);
  app.add_flag("--samme-r", samme_r, "Real AdaBoost instead of discrete");
  app.add_option("--jobs", jobs, "Concurrent seeds")
      ->check(CLI::PositiveNumber);
  app.add_option("--out", out, "CSV report path (default: stdout)");
  app.add_option("--model-out", model_out,
                 "Write the first seed's model as JSON");
  CLI11_PARSE(app, argc, argv);

  if (data.empty() && hard.empty() && !hard_sweep) {
    std::cerr << "one of --data, --hard or --hard-sweep is required\n";
    return 2;
  }

  std::vector<ipboost::Algorithm> algos;
  if (algo == "all") {
    algos = {ipboost::Algorithm::kIpBoost, ipboost::Algorithm::kLpBoost,
             ipboost::Algorithm::kAdaBoost};
  } else {
    algos = {ipboost::ParseAlgorithm(algo)};
  }

  ipboost::ExperimentConfig base;
  base.rho = rho;
  base.eta_kind = ipboost::ParseEtaKind(eta);
  base.seeds.clear();
  for (int s = 0; s < seeds; ++s) base.seeds.push_back(s);
  base.stall_limit = stall;
  base.time_limit_seconds = time_limit;
  base.subsample_cap = subsample;
  base.max_columns = max_columns;
  base.jobs = jobs;
  base.adaboost.iterations = ada_iterations;
  base.adaboost.variant = samme_r ? ipboost::AdaBoostVariant::kSammeR
                                  : ipboost::AdaBoostVariant::kDiscrete;
  base.keep_models = !model_out.empty();

  std::vector<ipboost::ExperimentConfig> configs;
  if (hard_sweep) {
    for (const auto& [n, g] : kHardSweepRows) {
      ipboost::ExperimentConfig c = base;
      c.hard = ipboost::HardSource{n, g, 21};
      c.name = HardName(n, g);
      configs.push_back(c);
    }
  } else if (!hard.empty()) {
    ipboost::ExperimentConfig c = base;
    c.hard = ipboost::HardSource{static_cast<int>(hard[0]), hard[1], 21};
    c.name = HardName(c.hard->n_points, c.hard->noise_rate);
    configs.push_back(c);
  } else {
    ipboost::ExperimentConfig c = base;
    c.data_path = data;
    if (!test.empty()) c.test_path = test;
    c.name = std::filesystem::path(data).filename().string();
    configs.push_back(c);
  }

  std::vector<ipboost::ExperimentReport> reports;
  bool model_written = false;
  try {
    for (const auto& c0 : configs) {
      for (auto a : algos) {
        ipboost::ExperimentConfig c = c0;
        c.algorithm = a;
        reports.push_back(ipboost::RunExperiment(c));
        const auto& r = reports.back();
        if (out.empty()) std::cerr << ipboost::CsvRow(r) << '\n';
        if (!model_written && !model_out.empty()) {
          for (const auto& s : r.seeds) {
            if (s.ok && s.model) {
              ipboost::SaveModel(*s.model, model_out);
              model_written = true;
              break;
            }
          }
        }
      }
    }
    if (out.empty()) {
      std::cout << ipboost::CsvHeader() << '\n';
      for (const auto& r : reports) std::cout << ipboost::CsvRow(r) << '\n';
    } else {
      ipboost::WriteCsv(out, reports);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  for (const auto& r : reports) {
    if (r.failures == static_cast<int>(r.seeds.size())) return 1;
  }
  return 0;
}
