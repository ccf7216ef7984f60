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

// Python bindings: data sets, the three boosting algorithms, model JSON, and
// sparsification over a given error matrix.

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <stdexcept>
#include <string>
#include <vector>

#include "ipboost/baselines.h"
#include "ipboost/dataset.h"
#include "ipboost/error.h"
#include "ipboost/hard_instances.h"
#include "ipboost/ipboost.h"
#include "ipboost/learners.h"
#include "ipboost/model_io.h"
#include "ipboost/sparsify.h"

namespace py = pybind11;

namespace ipboost {
namespace {

using DoubleArray =
    py::array_t<double, py::array::c_style | py::array::forcecast>;
using IntArray = py::array_t<int, py::array::c_style | py::array::forcecast>;

Dataset DatasetFromArrays(const DoubleArray& x, const IntArray& y) {
  if (x.ndim() != 2 || y.ndim() != 1 || x.shape(0) != y.shape(0)) {
    throw std::invalid_argument(
        "expected X of shape (n, d) and y of shape (n,)");
  }
  std::vector<double> features(x.data(), x.data() + x.size());
  std::vector<int> labels(y.data(), y.data() + y.size());
  return Dataset(std::move(features), std::move(labels),
                 static_cast<int>(x.shape(1)));
}

DoubleArray FeatureMatrix(const Dataset& ds) {
  DoubleArray out({ds.example_count(), ds.feature_count()});
  std::copy(ds.features().begin(), ds.features().end(), out.mutable_data());
  return out;
}

// Applies `f` to every row of a (n, d) array.
template <typename T, typename F>
py::array_t<T> MapRows(const DoubleArray& x, F f) {
  if (x.ndim() != 2) throw std::invalid_argument("expected X of shape (n, d)");
  const auto n = x.shape(0), d = x.shape(1);
  py::array_t<T> out(n);
  T* o = out.mutable_data();
  for (py::ssize_t i = 0; i < n; ++i) {
    o[i] = f(std::span<const double>(x.data() + i * d, d));
  }
  return out;
}

ErrorMatrix MatrixFromArray(const DoubleArray& eta, EtaKind kind) {
  if (eta.ndim() != 2 || eta.shape(0) < 1 || eta.shape(1) < 1) {
    throw std::invalid_argument("expected a non-empty (n, L) error matrix");
  }
  const auto n = eta.shape(0), l = eta.shape(1);
  ErrorMatrix em(static_cast<int>(n), kind);
  for (py::ssize_t j = 0; j < l; ++j) {
    std::vector<double> column(n);
    for (py::ssize_t i = 0; i < n; ++i) column[i] = eta.at(i, j);
    DecisionStump s;
    s.feature = static_cast<int>(j);
    em.AddColumn(s, std::move(column));
  }
  return em;
}

}  // namespace
}  // namespace ipboost

PYBIND11_MODULE(_core, m) {
  using namespace ipboost;
  m.doc() = "Boosting by branch-and-price, with LPBoost and AdaBoost baselines";

  auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  py::register_exception<ParseError>(m, "ParseError", error.ptr());
  py::register_exception<ModelFormatError>(m, "ModelFormatError", error.ptr());
  auto solver =
      py::register_exception<SolverError>(m, "SolverError", error.ptr());
  py::register_exception<NoSolutionError>(m, "NoSolutionError", solver.ptr());

  py::enum_<EtaKind>(m, "EtaKind")
      .value("PLUS_MINUS", EtaKind::kPlusMinus)
      .value("CLASS_PROB", EtaKind::kClassProb)
      .value("SAMME_R", EtaKind::kSammeR)
      .def_property_readonly(
          "tag", [](EtaKind k) { return std::string(EtaKindTag(k)); })
      .def_static("parse",
                  [](const std::string& tag) { return ParseEtaKind(tag); });

  py::enum_<AdaBoostVariant>(m, "AdaBoostVariant")
      .value("DISCRETE", AdaBoostVariant::kDiscrete)
      .value("SAMME_R", AdaBoostVariant::kSammeR);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&DatasetFromArrays), py::arg("X"), py::arg("y"))
      .def_property_readonly("n", &Dataset::example_count)
      .def_property_readonly("d", &Dataset::feature_count)
      .def_property_readonly("X", &FeatureMatrix)
      .def_property_readonly("y",
                             [](const Dataset& ds) {
                               return py::array_t<int>(ds.example_count(),
                                                       ds.labels().data());
                             })
      .def_property_readonly("positive_count", &Dataset::positive_count)
      .def("subset",
           [](const Dataset& ds, std::vector<int> indices) {
             for (int i : indices) {
               if (i < 0 || i >= ds.example_count()) {
                 throw py::index_error("row index out of range");
               }
             }
             return ds.Subset(indices);
           })
      .def("to_libsvm", &ToLibsvm)
      .def(
          "split",
          [](const Dataset& ds, double test_fraction, uint64_t seed) {
            SplitResult r = Split(ds, SplitSpec{test_fraction, seed});
            return py::make_tuple(r.train, r.test);
          },
          py::arg("test_fraction") = 0.2, py::arg("seed") = 0)
      .def("__len__", &Dataset::example_count)
      .def("__repr__", [](const Dataset& ds) {
        return "Dataset(n=" + std::to_string(ds.example_count()) +
               ", d=" + std::to_string(ds.feature_count()) + ")";
      });

  m.def("parse_libsvm",
        [](const std::string& text) { return ParseLibsvm(text); });
  m.def("read_libsvm", &ReadLibsvmFile, py::arg("path"));
  m.def(
      "generate_hard",
      [](int n_points, double noise_rate, int dimension, uint64_t seed) {
        HardInstanceConfig cfg;
        cfg.n_points = n_points;
        cfg.noise_rate = noise_rate;
        cfg.dimension = dimension;
        cfg.seed = seed;
        HardInstance h = GenerateHard(cfg);
        return py::make_tuple(std::move(h.data), h.flipped);
      },
      py::arg("n_points") = 2000, py::arg("noise_rate") = 0.1,
      py::arg("dimension") = 21, py::arg("seed") = 0,
      "Returns (dataset, flipped).");

  py::class_<DecisionStump>(m, "DecisionStump")
      .def_readonly("feature", &DecisionStump::feature)
      .def_readonly("threshold", &DecisionStump::threshold)
      .def_readonly("polarity", &DecisionStump::polarity)
      .def_readonly("class_prob_pos", &DecisionStump::class_prob_pos)
      .def_readonly("class_prob_neg", &DecisionStump::class_prob_neg)
      .def("predict", [](const DecisionStump& s, std::vector<double> x) {
        return s.Predict(x);
      });

  py::class_<BoostedEnsemble>(m, "Ensemble")
      .def_readonly("stumps", &BoostedEnsemble::stumps)
      .def_readonly("weights", &BoostedEnsemble::weights)
      .def_readonly("eta_kind", &BoostedEnsemble::eta_kind)
      .def_readonly("margin", &BoostedEnsemble::margin)
      .def("decision",
           [](const BoostedEnsemble& e, const DoubleArray& x) {
             return MapRows<double>(
                 x, [&](std::span<const double> r) { return e.Decision(r); });
           })
      .def("predict",
           [](const BoostedEnsemble& e, const DoubleArray& x) {
             return MapRows<int>(
                 x, [&](std::span<const double> r) { return e.Predict(r); });
           })
      .def("accuracy", &Accuracy)
      .def("to_json", &ModelToJson)
      .def_static("from_json", &ModelFromJson)
      .def("save", &SaveModel)
      .def_static("load", &LoadModel)
      .def("__len__", &BoostedEnsemble::size);

  py::class_<SolverStats>(m, "SolverStats")
      .def_readonly("nodes_processed", &SolverStats::nodes_processed)
      .def_readonly("columns_generated", &SolverStats::columns_generated)
      .def_readonly("lp_solves", &SolverStats::lp_solves)
      .def_readonly("incumbent_value", &SolverStats::incumbent_value)
      .def_readonly("lower_bound", &SolverStats::lower_bound)
      .def_readonly("best_solution_time", &SolverStats::best_solution_time)
      .def_readonly("total_time", &SolverStats::total_time)
      .def_readonly("optimal", &SolverStats::optimal)
      .def_readonly("time_limit_hit", &SolverStats::time_limit_hit)
      .def_readonly("stall_limit_hit", &SolverStats::stall_limit_hit)
      .def_readonly("node_limit_hit", &SolverStats::node_limit_hit);

  py::class_<IpBoostResult>(m, "IpBoostResult")
      .def_readonly("ensemble", &IpBoostResult::ensemble)
      .def_readonly("stats", &IpBoostResult::stats)
      .def_readonly("z", &IpBoostResult::z)
      .def_readonly("support", &IpBoostResult::support)
      .def_readonly("support_weights", &IpBoostResult::support_weights)
      .def_readonly("achieved_margin", &IpBoostResult::achieved_margin);

  m.def(
      "train_ipboost",
      [](const Dataset& ds, double rho, EtaKind eta_kind, int stall_limit,
         double time_limit, int64_t max_nodes, int max_columns,
         bool postprocess) {
        IpBoostConfig cfg;
        cfg.master.rho = rho;
        cfg.master.max_columns = max_columns;
        cfg.eta_kind = eta_kind;
        cfg.stall_limit = stall_limit;
        cfg.time_limit_seconds = time_limit;
        cfg.max_nodes = max_nodes;
        cfg.postprocess = postprocess;
        py::gil_scoped_release release;
        return TrainIpBoost(ds, cfg);
      },
      py::arg("data"), py::arg("rho") = 0.05,
      py::arg("eta_kind") = EtaKind::kPlusMinus, py::arg("stall_limit") = 5000,
      py::arg("time_limit") = 300.0, py::arg("max_nodes") = 0,
      py::arg("max_columns") = 500, py::arg("postprocess") = true);

  m.def(
      "train_lpboost",
      [](const Dataset& ds, double rho, EtaKind eta_kind, int max_columns) {
        MasterConfig cfg;
        cfg.rho = rho;
        cfg.max_columns = max_columns;
        py::gil_scoped_release release;
        LpBoostResult r = TrainLpBoost(ds, cfg, eta_kind);
        return std::make_pair(std::move(r.ensemble), r.lp_objective);
      },
      py::arg("data"), py::arg("rho") = 0.05,
      py::arg("eta_kind") = EtaKind::kPlusMinus, py::arg("max_columns") = 500,
      "Returns (ensemble, relaxation objective).");

  m.def(
      "train_adaboost",
      [](const Dataset& ds, int iterations, AdaBoostVariant variant) {
        AdaBoostConfig cfg;
        cfg.iterations = iterations;
        cfg.variant = variant;
        py::gil_scoped_release release;
        return TrainAdaBoost(ds, cfg).ensemble;
      },
      py::arg("data"), py::arg("iterations") = 100,
      py::arg("variant") = AdaBoostVariant::kDiscrete);

  py::class_<SparsifyResult>(m, "SparsifyResult")
      .def_readonly("y", &SparsifyResult::y)
      .def_readonly("weights", &SparsifyResult::lambda)
      .def_readonly("z", &SparsifyResult::z)
      .def_readonly("objective", &SparsifyResult::objective)
      .def_readonly("optimal", &SparsifyResult::optimal)
      .def_readonly("nodes", &SparsifyResult::nodes)
      .def_readonly("cuts", &SparsifyResult::cuts)
      .def_readonly("root_bound", &SparsifyResult::root_bound)
      .def_readonly("root_bound_with_cuts",
                    &SparsifyResult::root_bound_with_cuts);

  m.def(
      "sparsify",
      [](const DoubleArray& eta, std::vector<double> alphas, double rho,
         EtaKind eta_kind, int64_t max_nodes, bool use_iis_cuts) {
        ErrorMatrix em = MatrixFromArray(eta, eta_kind);
        SparsifyConfig cfg;
        cfg.alphas = std::move(alphas);
        cfg.rho = rho;
        cfg.max_nodes = max_nodes;
        cfg.use_iis_cuts = use_iis_cuts;
        py::gil_scoped_release release;
        return Sparsify(em, cfg);
      },
      py::arg("eta"), py::arg("alphas"), py::arg("rho") = 0.05,
      py::arg("eta_kind") = EtaKind::kPlusMinus, py::arg("max_nodes") = 100000,
      py::arg("use_iis_cuts") = true,
      "Trades misclassified examples against learner costs over the columns "
      "of an (n, L) error matrix.");
}
