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

#include "ipboost/hard_instances.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ipboost {

HardInstance GenerateHard(const HardInstanceConfig& cfg) {
  if (cfg.n_points < 1) throw std::invalid_argument("n_points must be >= 1");
  if (!(cfg.noise_rate >= 0.0 && cfg.noise_rate < 0.5)) {
    throw std::invalid_argument("noise_rate must be in [0, 0.5)");
  }
  if (cfg.dimension < 5 || cfg.dimension % 2 == 0) {
    throw std::invalid_argument("dimension must be odd and >= 5");
  }
  const double wsum =
      cfg.large_margin_weight + cfg.puller_weight + cfg.penalizer_weight;
  if (cfg.large_margin_weight < 0 || cfg.puller_weight < 0 ||
      cfg.penalizer_weight < 0 || wsum <= 0) {
    throw std::invalid_argument("mixture weights must be >= 0, not all 0");
  }

  const int d = cfg.dimension;
  const int a = (d + 1) / 2;
  const int b = d - a;
  const int k1 = (a - 1) / 2;
  const int k2 = (1 + a + b - 2 * k1 + 1) / 2;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  std::vector<double> features(static_cast<size_t>(cfg.n_points) * d);
  std::vector<int> labels(cfg.n_points);
  std::vector<int> clean(cfg.n_points);
  std::vector<bool> flipped(cfg.n_points);
  std::vector<int> first(a), second(b);

  for (int i = 0; i < cfg.n_points; ++i) {
    const int y = unif(rng) < 0.5 ? -1 : 1;
    double* x = features.data() + static_cast<size_t>(i) * d;
    const double type = unif(rng) * wsum;
    if (type < cfg.large_margin_weight) {
      std::fill(x, x + d, y);
    } else if (type < cfg.large_margin_weight + cfg.puller_weight) {
      std::fill(x, x + a, y);
      std::fill(x + a, x + d, -y);
    } else {
      std::fill(x, x + d, -y);
      std::iota(first.begin(), first.end(), 0);
      std::iota(second.begin(), second.end(), a);
      std::shuffle(first.begin(), first.end(), rng);
      std::shuffle(second.begin(), second.end(), rng);
      for (int t = 0; t < k1; ++t) x[first[t]] = y;
      for (int t = 0; t < k2; ++t) x[second[t]] = y;
    }
    clean[i] = y;
    flipped[i] = unif(rng) < cfg.noise_rate;
    labels[i] = flipped[i] ? -y : y;
  }
  return {Dataset(std::move(features), std::move(labels), d),
          std::move(flipped), std::move(clean)};
}

}  // namespace ipboost
