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

#include "ipboost/learners.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ipboost {

std::string_view EtaKindTag(EtaKind kind) {
  switch (kind) {
    case EtaKind::kPlusMinus:
      return "i";
    case EtaKind::kClassProb:
      return "ii";
    case EtaKind::kSammeR:
      return "iii";
  }
  return "?";
}

EtaKind ParseEtaKind(std::string_view tag) {
  if (tag == "i") return EtaKind::kPlusMinus;
  if (tag == "ii") return EtaKind::kClassProb;
  if (tag == "iii") return EtaKind::kSammeR;
  throw std::invalid_argument("unknown eta kind '" + std::string(tag) + "'");
}

namespace {

double HalfLogOdds(double p) {
  p = std::clamp(p, kProbabilityFloor, 1.0 - kProbabilityFloor);
  return 0.5 * std::log(p / (1.0 - p));
}

}  // namespace

double VoteScore(const DecisionStump& stump, std::span<const double> x,
                 EtaKind kind) {
  switch (kind) {
    case EtaKind::kPlusMinus:
      return stump.Predict(x);
    case EtaKind::kClassProb:
      return 2.0 * stump.PositiveProbability(x) - 1.0;
    case EtaKind::kSammeR:
      return HalfLogOdds(stump.PositiveProbability(x));
  }
  return 0.0;
}

double EtaValue(const DecisionStump& stump, std::span<const double> x, int y,
                EtaKind kind) {
  return y * VoteScore(stump, x, kind);
}

std::vector<double> EtaColumn(const DecisionStump& stump, const Dataset& ds,
                              EtaKind kind) {
  std::vector<double> col(ds.example_count());
  for (int i = 0; i < ds.example_count(); ++i) {
    col[i] = EtaValue(stump, ds.row(i), ds.label(i), kind);
  }
  return col;
}

SplitCriterion PricingCriterion(EtaKind kind) {
  switch (kind) {
    case EtaKind::kPlusMinus:
      return SplitCriterion::kWeightedCorrectness;
    case EtaKind::kClassProb:
      return SplitCriterion::kClassProb;
    case EtaKind::kSammeR:
      return SplitCriterion::kSammeR;
  }
  return SplitCriterion::kWeightedCorrectness;
}

size_t SplitSet::Hash::operator()(const std::tuple<int, double, int>& k) const {
  size_t h = std::hash<int>()(std::get<0>(k));
  h = h * 1000003u ^ std::hash<double>()(std::get<1>(k));
  return h * 31u ^ std::hash<int>()(std::get<2>(k));
}

void SplitSet::Insert(const DecisionStump& s) {
  keys_.emplace(s.feature, s.threshold, s.polarity);
}

bool SplitSet::Contains(const DecisionStump& s) const {
  return keys_.count({s.feature, s.threshold, s.polarity}) > 0;
}

StumpTrainer::StumpTrainer(const Dataset& ds) : ds_(ds) {
  const int n = ds.example_count();
  order_.resize(ds.feature_count());
  for (int k = 0; k < ds.feature_count(); ++k) {
    auto& o = order_[k];
    o.resize(n);
    std::iota(o.begin(), o.end(), 0);
    std::stable_sort(o.begin(), o.end(), [&](int a, int b) {
      return ds.feature(a, k) < ds.feature(b, k);
    });
  }
}

namespace {

// Weighted class mass on the "x <= threshold" side and the other side.
struct SideMass {
  double left_pos, left_neg, right_pos, right_neg;
};

struct Evaluation {
  double value;
  int polarity;
};

class CandidateScorer {
 public:
  CandidateScorer(SplitCriterion criterion, double scale)
      : criterion_(criterion), scale_(scale) {}

  double Smoothed(double pos, double neg) const {
    return (pos * scale_ + 1.0) / ((pos + neg) * scale_ + 2.0);
  }

  Evaluation operator()(const SideMass& m) const {
    switch (criterion_) {
      case SplitCriterion::kWeightedCorrectness: {
        double s = (m.left_pos - m.left_neg) - (m.right_pos - m.right_neg);
        return s >= 0 ? Evaluation{s, 1} : Evaluation{-s, -1};
      }
      case SplitCriterion::kClassProb:
      case SplitCriterion::kSammeR: {
        double pl = Smoothed(m.left_pos, m.left_neg);
        double pr = Smoothed(m.right_pos, m.right_neg);
        auto g = [&](double p) {
          return criterion_ == SplitCriterion::kClassProb ? 2.0 * p - 1.0
                                                          : HalfLogOdds(p);
        };
        double v = (m.left_pos - m.left_neg) * g(pl) +
                   (m.right_pos - m.right_neg) * g(pr);
        return {v, pl >= pr ? 1 : -1};
      }
      case SplitCriterion::kGini: {
        double wl = m.left_pos + m.left_neg;
        double wr = m.right_pos + m.right_neg;
        double impurity = 0.0;
        if (wl > 0) impurity += 2.0 * m.left_pos * m.left_neg / wl;
        if (wr > 0) impurity += 2.0 * m.right_pos * m.right_neg / wr;
        double pl = wl > 0 ? m.left_pos / wl : 0.5;
        double pr = wr > 0 ? m.right_pos / wr : 0.5;
        return {-impurity, pl >= pr ? 1 : -1};
      }
    }
    return {0.0, 1};
  }

 private:
  SplitCriterion criterion_;
  double scale_;
};

}  // namespace

StumpFit StumpTrainer::Fit(std::span<const double> weights,
                           SplitCriterion criterion,
                           const SplitSet* exclude) const {
  const int n = ds_.example_count();
  if (static_cast<int>(weights.size()) != n) {
    throw std::invalid_argument("weight vector length != example count");
  }
  double total_pos = 0.0, total_neg = 0.0;
  int active = 0;
  for (int i = 0; i < n; ++i) {
    if (!(weights[i] >= 0.0)) throw std::invalid_argument("negative weight");
    if (weights[i] > 0.0) ++active;
    (ds_.label(i) > 0 ? total_pos : total_neg) += weights[i];
  }
  const double total = total_pos + total_neg;
  if (!(total > 0.0)) throw std::invalid_argument("all weights are zero");

  const CandidateScorer score(criterion, active / total);
  const double eps = 1e-12 * total;

  StumpFit best;
  best.objective = -std::numeric_limits<double>::infinity();
  SideMass best_mass{};
  bool have_best = false;

  auto consider = [&](int feature, double threshold, const SideMass& m) {
    Evaluation e = score(m);
    if (have_best && !(e.value > best.objective + eps)) return;
    DecisionStump s;
    s.feature = feature;
    s.threshold = threshold;
    s.polarity = e.polarity;
    if (exclude != nullptr && exclude->Contains(s)) {
      // For kinds (ii)/(iii) the column does not depend on polarity.
      if (criterion != SplitCriterion::kWeightedCorrectness) return;
      s.polarity = -s.polarity;
      e.value = -e.value;
      if (exclude->Contains(s)) return;
      if (have_best && !(e.value > best.objective + eps)) return;
    }
    best.stump = s;
    best.objective = e.value;
    best_mass = m;
    have_best = true;
  };

  for (int k = 0; k < ds_.feature_count(); ++k) {
    const auto& o = order_[k];
    SideMass m{0.0, 0.0, total_pos, total_neg};
    for (int t = 0; t < n; ++t) {
      const int i = o[t];
      const double w = weights[i];
      if (ds_.label(i) > 0) {
        m.left_pos += w;
        m.right_pos -= w;
      } else {
        m.left_neg += w;
        m.right_neg -= w;
      }
      if (t + 1 == n) break;
      const double v = ds_.feature(i, k);
      const double next = ds_.feature(o[t + 1], k);
      if (next == v) continue;
      double thr = 0.5 * (v + next);
      if (!(thr < next)) thr = v;
      consider(k, thr, m);
    }
    if (k == 0) {
      SideMass all{total_pos, total_neg, 0.0, 0.0};
      consider(0, std::numeric_limits<double>::infinity(), all);
    }
  }

  if (!have_best) return best;
  const CandidateScorer probs(SplitCriterion::kClassProb, active / total);
  const double pl = probs.Smoothed(best_mass.left_pos, best_mass.left_neg);
  const double pr = probs.Smoothed(best_mass.right_pos, best_mass.right_neg);
  if (best.stump.polarity > 0) {
    best.stump.class_prob_pos = pl;
    best.stump.class_prob_neg = pr;
  } else {
    best.stump.class_prob_pos = pr;
    best.stump.class_prob_neg = pl;
  }
  return best;
}

std::vector<DecisionStump> StumpTrainer::EnumerateCandidates() const {
  std::vector<DecisionStump> out;
  const int n = ds_.example_count();
  for (int k = 0; k < ds_.feature_count(); ++k) {
    const auto& o = order_[k];
    for (int t = 0; t + 1 < n; ++t) {
      const double v = ds_.feature(o[t], k);
      const double next = ds_.feature(o[t + 1], k);
      if (next == v) continue;
      double thr = 0.5 * (v + next);
      if (!(thr < next)) thr = v;
      for (int pol : {1, -1}) {
        DecisionStump s;
        s.feature = k;
        s.threshold = thr;
        s.polarity = pol;
        out.push_back(s);
      }
    }
  }
  for (int pol : {1, -1}) {
    DecisionStump s;
    s.polarity = pol;
    out.push_back(s);
  }
  return out;
}

StumpFit FitStumpWeighted(const Dataset& ds, std::span<const double> weights) {
  return StumpTrainer(ds).Fit(weights, SplitCriterion::kWeightedCorrectness);
}

void BoostedEnsemble::Validate() const {
  if (stumps.empty()) throw std::invalid_argument("ensemble has no learners");
  if (stumps.size() != weights.size()) {
    throw std::invalid_argument("stump and weight counts differ");
  }
  double sum = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("negative ensemble weight");
    sum += w;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    throw std::invalid_argument("ensemble weights do not sum to 1");
  }
}

double BoostedEnsemble::Decision(std::span<const double> x) const {
  double s = 0.0;
  for (size_t j = 0; j < stumps.size(); ++j) {
    s += weights[j] * VoteScore(stumps[j], x, eta_kind);
  }
  return s;
}

int BoostedEnsemble::Predict(std::span<const double> x) const {
  return Decision(x) >= 0.0 ? 1 : -1;
}

double Accuracy(const BoostedEnsemble& ens, const Dataset& ds) {
  int correct = 0;
  for (int i = 0; i < ds.example_count(); ++i) {
    if (ens.Predict(ds.row(i)) == ds.label(i)) ++correct;
  }
  return static_cast<double>(correct) / ds.example_count();
}

int DistinctLearnerCount(const std::vector<DecisionStump>& stumps) {
  SplitSet set;
  for (const auto& s : stumps) set.Insert(s);
  return static_cast<int>(set.size());
}

}  // namespace ipboost
