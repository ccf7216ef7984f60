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

#include "ipboost/model_io.h"

#include <cmath>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "ipboost/error.h"

namespace ipboost {

using nlohmann::json;

namespace {

json ThresholdToJson(double t) {
  if (std::isinf(t)) return t > 0 ? "inf" : "-inf";
  return t;
}

double ThresholdFromJson(const json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    throw ModelFormatError("bad threshold '" + s + "'");
  }
  if (!j.is_number()) throw ModelFormatError("threshold is not a number");
  return j.get<double>();
}

}  // namespace

std::string ModelToJson(const BoostedEnsemble& ens) {
  ens.Validate();
  json doc;
  doc["format"] = "ipboost-ensemble";
  doc["version"] = kModelFormatVersion;
  doc["eta_kind"] = std::string(EtaKindTag(ens.eta_kind));
  doc["margin"] = std::isfinite(ens.margin) ? json(ens.margin) : json(nullptr);
  json learners = json::array();
  for (int j = 0; j < ens.size(); ++j) {
    const DecisionStump& s = ens.stumps[j];
    learners.push_back({{"feature", s.feature},
                        {"threshold", ThresholdToJson(s.threshold)},
                        {"polarity", s.polarity},
                        {"class_prob_pos", s.class_prob_pos},
                        {"class_prob_neg", s.class_prob_neg},
                        {"weight", ens.weights[j]}});
  }
  doc["learners"] = std::move(learners);
  return doc.dump(2);
}

BoostedEnsemble ModelFromJson(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ModelFormatError(std::string("malformed model: ") + e.what());
  }
  try {
    if (doc.value("format", "") != "ipboost-ensemble") {
      throw ModelFormatError("not an ipboost ensemble");
    }
    const int version = doc.at("version").get<int>();
    if (version != kModelFormatVersion) {
      throw ModelFormatError("unsupported model version " +
                             std::to_string(version));
    }
    BoostedEnsemble ens;
    try {
      ens.eta_kind = ParseEtaKind(doc.at("eta_kind").get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ModelFormatError(e.what());
    }
    const json& margin = doc.at("margin");
    ens.margin = margin.is_null() ? std::numeric_limits<double>::infinity()
                                  : margin.get<double>();
    for (const json& l : doc.at("learners")) {
      DecisionStump s;
      s.feature = l.at("feature").get<int>();
      s.threshold = ThresholdFromJson(l.at("threshold"));
      s.polarity = l.at("polarity").get<int>();
      s.class_prob_pos = l.at("class_prob_pos").get<double>();
      s.class_prob_neg = l.at("class_prob_neg").get<double>();
      if (s.feature < 0 || (s.polarity != 1 && s.polarity != -1)) {
        throw ModelFormatError("invalid stump");
      }
      ens.stumps.push_back(s);
      ens.weights.push_back(l.at("weight").get<double>());
    }
    try {
      ens.Validate();
    } catch (const std::invalid_argument& e) {
      throw ModelFormatError(e.what());
    }
    return ens;
  } catch (const json::exception& e) {
    throw ModelFormatError(std::string("malformed model: ") + e.what());
  }
}

void SaveModel(const BoostedEnsemble& ens, const std::filesystem::path& path) {
  const std::string text = ModelToJson(ens);
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << text << '\n';
  if (!out) throw Error("failed writing " + path.string());
}

BoostedEnsemble LoadModel(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ModelFromJson(buf.str());
}

}  // namespace ipboost
