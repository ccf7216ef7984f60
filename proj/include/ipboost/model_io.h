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

#ifndef IPBOOST_MODEL_IO_H_
#define IPBOOST_MODEL_IO_H_

#include <filesystem>
#include <string>

#include "ipboost/learners.h"

namespace ipboost {

inline constexpr int kModelFormatVersion = 1;

// JSON document:
//   {"format": "ipboost-ensemble", "version": 1, "eta_kind": "i",
//    "margin": 0.05, "learners": [{"feature": 0, "threshold": 0.5,
//    "polarity": 1, "class_prob_pos": 0.9, "class_prob_neg": 0.2,
//    "weight": 1.0}, ...]}
// Infinite thresholds are written as the strings "inf" / "-inf". Doubles use
// shortest round-trip formatting, so predictions survive a round trip
// bit for bit.
//
// Serialization validates the ensemble first (std::invalid_argument).
std::string ModelToJson(const BoostedEnsemble& ens);
// Throws ModelFormatError on malformed input, an unknown eta kind, or a
// version other than kModelFormatVersion.
BoostedEnsemble ModelFromJson(const std::string& text);

void SaveModel(const BoostedEnsemble& ens, const std::filesystem::path& path);
BoostedEnsemble LoadModel(const std::filesystem::path& path);

}  // namespace ipboost

#endif  // IPBOOST_MODEL_IO_H_
