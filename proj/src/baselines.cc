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

#include "ipboost/baselines.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ipboost {

LpBoostResult TrainLpBoost(const Dataset& ds, const MasterConfig& cfg,
                           EtaKind kind) {
  RestrictedMaster master(ds, kind, cfg);
  const ColgenResult res = master.Solve(ZBounds::Free(ds.example_count()));
  if (res.lp.status != LpStatus::kOptimal) {
    throw SolverError(std::string("LPBoost master: ") +
                      LpStatusName(res.lp.status));
  }
  const int n = ds.example_count();
  const ErrorMatrix& em = master.errors();
  LpBoostResult out;
  out.lp_objective = res.lp.objective;
  out.columns_generated = em.learner_count();
  double sum = 0.0;
  for (int j = 0; j < em.learner_count(); ++j) {
    const double w = res.lp.primal[LambdaColumn(n, j)];
    if (w <= 1e-9) continue;
    out.ensemble.stumps.push_back(em.learner(j));
    out.ensemble.weights.push_back(w);
    sum += w;
  }
  for (double& w : out.ensemble.weights) w /= sum;
  out.ensemble.eta_kind = kind;
  out.ensemble.margin = cfg.rho;
  return out;
}

namespace {

struct LeafMass {
  // Weighted class mass on the side predicted positive and the other side.
  double pos_side_pos = 0.0, pos_side_neg = 0.0;
  double neg_side_pos = 0.0, neg_side_neg = 0.0;
};

LeafMass MeasureLeaves(const DecisionStump& s, const Dataset& ds,
                       std::span<const double> w) {
  LeafMass m;
  for (int i = 0; i < ds.example_count(); ++i) {
    const bool pos_side = s.Predict(ds.row(i)) > 0;
    const bool pos = ds.label(i) > 0;
    (pos_side ? (pos ? m.pos_side_pos : m.pos_side_neg)
              : (pos ? m.neg_side_pos : m.neg_side_neg)) += w[i];
  }
  return m;
}

// Majority leaf labels of a Gini stump; equal labels collapse to a constant.
// Ties go to -1.
DecisionStump MajorityStump(const DecisionStump& split, const Dataset& ds,
                            std::span<const double> w) {
  const LeafMass m = MeasureLeaves(split, ds, w);
  const int pos_side_label = m.pos_side_pos > m.pos_side_neg ? 1 : -1;
  const int neg_side_label = m.neg_side_pos > m.neg_side_neg ? 1 : -1;
  DecisionStump out = split;
  if (pos_side_label == neg_side_label) {
    out = DecisionStump{};
    out.polarity = pos_side_label;
  } else {
    // x <= threshold is the polarity side of `split`.
    out.polarity = split.polarity * pos_side_label;
  }
  return out;
}

double Frequency(double pos, double neg) {
  return pos + neg > 0.0 ? pos / (pos + neg) : 0.5;
}

void Normalize(std::vector<double>& d) {
  double s = 0.0;
  for (double x : d) s += x;
  for (double& x : d) x /= s;
}

}  // namespace

AdaBoostResult TrainAdaBoost(const Dataset& ds, const AdaBoostConfig& cfg) {
  if (cfg.iterations < 1) throw std::invalid_argument("iterations < 1");
  const int n = ds.example_count();
  const StumpTrainer trainer(ds);
  std::vector<double> d(n, 1.0 / n);
  AdaBoostResult out;
  const bool real = cfg.variant == AdaBoostVariant::kSammeR;
  out.ensemble.eta_kind = real ? EtaKind::kSammeR : EtaKind::kPlusMinus;
  std::vector<double> alphas;

  for (int t = 0; t < cfg.iterations; ++t) {
    if (cfg.record_distributions) out.distributions.push_back(d);
    const StumpFit fit = trainer.Fit(d, SplitCriterion::kGini);
    DecisionStump stump = MajorityStump(fit.stump, ds, d);
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      if (stump.Predict(ds.row(i)) != ds.label(i)) err += d[i];
    }
    ++out.rounds;

    if (real) {
      const LeafMass m = MeasureLeaves(stump, ds, d);
      stump.class_prob_pos = Frequency(m.pos_side_pos, m.pos_side_neg);
      stump.class_prob_neg = Frequency(m.neg_side_pos, m.neg_side_neg);
      out.ensemble.stumps.push_back(stump);
      alphas.push_back(1.0);
      if (err <= 0.0) break;
      for (int i = 0; i < n; ++i) {
        d[i] *= std::exp(-ds.label(i) *
                         VoteScore(stump, ds.row(i), EtaKind::kSammeR));
      }
      Normalize(d);
      continue;
    }

    if (err <= 0.0) {
      out.ensemble.stumps.push_back(stump);
      alphas.push_back(1.0);
      break;
    }
    if (err >= 0.5) {
      if (t == 0) {
        out.ensemble.stumps.push_back(stump);
        alphas.push_back(1.0);
      }
      break;
    }
    const double e = std::clamp(err, 1e-10, 1.0 - 1e-10);
    const double alpha = 0.5 * std::log((1.0 - e) / e);
    out.ensemble.stumps.push_back(stump);
    alphas.push_back(alpha);
    for (int i = 0; i < n; ++i) {
      d[i] *= std::exp(-alpha * ds.label(i) * stump.Predict(ds.row(i)));
    }
    Normalize(d);
  }
  out.ensemble.weights = alphas;
  Normalize(out.ensemble.weights);
  out.ensemble.margin = 0.0;
  return out;
}

}  // namespace ipboost
