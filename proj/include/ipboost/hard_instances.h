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

#ifndef IPBOOST_HARD_INSTANCES_H_
#define IPBOOST_HARD_INSTANCES_H_

#include <cstdint>
#include <vector>

#include "ipboost/dataset.h"

namespace ipboost {

// Noisy binary-feature instances in the style of Long and Servedio, built to
// defeat convex potential boosters. Every clean label equals the sign of the
// feature sum; labels are then flipped independently with `noise_rate`.
struct HardInstanceConfig {
  int n_points = 2000;
  double noise_rate = 0.1;
  // Odd and >= 5, so the feature sum never vanishes.
  int dimension = 21;
  uint64_t seed = 0;
  // Mixture over example types, normalized internally. With a = (d+1)/2 and
  // b = d - a: large-margin sets every coordinate to y; puller sets the
  // first a coordinates to y and the last b to -y; penalizer sets
  // (a-1)/2 random coordinates of the first block and just enough of the
  // second block to y that the feature sum is y (5 and 6 for d = 21).
  double large_margin_weight = 0.25;
  double puller_weight = 0.25;
  double penalizer_weight = 0.5;
};

struct HardInstance {
  Dataset data;
  // flipped[i] is true when label i was flipped by the noise process.
  std::vector<bool> flipped;
  std::vector<int> clean_labels;
};

// Throws std::invalid_argument on an invalid config.
HardInstance GenerateHard(const HardInstanceConfig& cfg);

}  // namespace ipboost

#endif  // IPBOOST_HARD_INSTANCES_H_
