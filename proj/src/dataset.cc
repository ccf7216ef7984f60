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

#include "ipboost/dataset.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ipboost/error.h"

namespace ipboost {

Dataset::Dataset(std::vector<double> features, std::vector<int> labels,
                 int feature_count)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      feature_count_(feature_count) {
  if (labels_.empty()) throw std::invalid_argument("empty dataset");
  if (feature_count_ < 1) throw std::invalid_argument("feature count < 1");
  if (features_.size() != labels_.size() * feature_count_) {
    throw std::invalid_argument("feature matrix does not match N x d");
  }
  for (int y : labels_) {
    if (y != 1 && y != -1) throw std::invalid_argument("label not +-1");
  }
}

int Dataset::positive_count() const {
  return static_cast<int>(std::count(labels_.begin(), labels_.end(), 1));
}

Dataset Dataset::Subset(std::span<const int> indices) const {
  std::vector<double> f;
  std::vector<int> y;
  f.reserve(indices.size() * feature_count_);
  y.reserve(indices.size());
  for (int i : indices) {
    if (i < 0 || i >= example_count()) {
      throw std::out_of_range("subset index out of range");
    }
    auto r = row(i);
    f.insert(f.end(), r.begin(), r.end());
    y.push_back(labels_[i]);
  }
  return Dataset(std::move(f), std::move(y), feature_count_);
}

Dataset Dataset::PaddedTo(int d) const {
  if (d < feature_count_) throw std::invalid_argument("cannot shrink dataset");
  if (d == feature_count_) return *this;
  std::vector<double> f(static_cast<size_t>(example_count()) * d, 0.0);
  for (int i = 0; i < example_count(); ++i) {
    auto r = row(i);
    std::copy(r.begin(), r.end(), f.begin() + static_cast<size_t>(i) * d);
  }
  return Dataset(std::move(f), labels_, d);
}

namespace {

bool IsSpace(char c) { return c == ' ' || c == '\t' || c == '\r'; }

double ParseDouble(std::string_view tok, int line, const char* what) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) {
    throw ParseError(
        line, std::string("malformed ") + what + " '" + std::string(tok) + "'");
  }
  return v;
}

struct SparseRow {
  double raw_label;
  std::vector<std::pair<int, double>> entries;
};

}  // namespace

Dataset ParseLibsvm(std::string_view text) {
  std::vector<SparseRow> rows;
  int max_index = 0;
  int line_no = 0;
  size_t pos = 0;
  while (pos <= text.size()) {
    size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;

    std::vector<std::string_view> tokens;
    size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && IsSpace(line[i])) ++i;
      size_t j = i;
      while (j < line.size() && !IsSpace(line[j])) ++j;
      if (j > i) tokens.push_back(line.substr(i, j - i));
      i = j;
    }
    if (tokens.empty()) {
      if (end == text.size()) break;
      continue;
    }

    SparseRow row;
    row.raw_label = ParseDouble(tokens[0], line_no, "label");
    int prev = 0;
    for (size_t t = 1; t < tokens.size(); ++t) {
      std::string_view tok = tokens[t];
      size_t colon = tok.find(':');
      if (colon == std::string_view::npos || colon == 0) {
        throw ParseError(line_no,
                         "expected idx:val, got '" + std::string(tok) + "'");
      }
      int idx = 0;
      auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + colon, idx);
      if (ec != std::errc() || ptr != tok.data() + colon || idx < 1) {
        throw ParseError(line_no,
                         "malformed index in '" + std::string(tok) + "'");
      }
      if (idx <= prev) {
        throw ParseError(line_no, "indices not strictly increasing");
      }
      prev = idx;
      double v = ParseDouble(tok.substr(colon + 1), line_no, "value");
      row.entries.emplace_back(idx, v);
      max_index = std::max(max_index, idx);
    }
    rows.push_back(std::move(row));
    if (end == text.size()) break;
  }
  if (rows.empty()) throw ParseError(0, "empty file");

  std::set<double> distinct;
  for (const auto& r : rows) distinct.insert(r.raw_label);
  bool any_pos = false, any_neg = false;
  for (double v : distinct) (v > 0 ? any_pos : any_neg) = true;
  const bool two_valued_same_sign =
      distinct.size() == 2 && !(any_pos && any_neg);
  const double low = *distinct.begin();

  const int d = std::max(max_index, 1);
  std::vector<double> features(rows.size() * static_cast<size_t>(d), 0.0);
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (size_t i = 0; i < rows.size(); ++i) {
    const double raw = rows[i].raw_label;
    if (two_valued_same_sign) {
      labels.push_back(raw == low ? -1 : 1);
    } else {
      labels.push_back(raw > 0 ? 1 : -1);
    }
    for (auto [idx, v] : rows[i].entries) features[i * d + idx - 1] = v;
  }
  return Dataset(std::move(features), std::move(labels), d);
}

Dataset ReadLibsvmFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return ParseLibsvm(buf.str());
}

std::string ToLibsvm(const Dataset& ds) {
  std::string out;
  char buf[64];
  for (int i = 0; i < ds.example_count(); ++i) {
    out += ds.label(i) > 0 ? "+1" : "-1";
    for (int k = 0; k < ds.feature_count(); ++k) {
      double v = ds.feature(i, k);
      if (v == 0.0) continue;
      auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
      out += ' ';
      out += std::to_string(k + 1);
      out += ':';
      out.append(buf, ptr);
    }
    out += '\n';
  }
  return out;
}

SplitResult Split(const Dataset& ds, const SplitSpec& spec) {
  if (!(spec.test_fraction >= 0.0 && spec.test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must be in [0,1)");
  }
  const int n = ds.example_count();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::mt19937_64 rng(spec.seed);
  std::shuffle(perm.begin(), perm.end(), rng);
  int n_train =
      static_cast<int>(std::ceil(n * (1.0 - spec.test_fraction) - 1e-9));
  n_train = std::clamp(n_train, 1, n);

  std::vector<int> train_idx(perm.begin(), perm.begin() + n_train);
  std::vector<int> test_idx(perm.begin() + n_train, perm.end());
  std::sort(train_idx.begin(), train_idx.end());
  std::sort(test_idx.begin(), test_idx.end());
  std::optional<Dataset> test;
  if (!test_idx.empty()) test = ds.Subset(test_idx);
  return {ds.Subset(train_idx), std::move(test), std::move(train_idx),
          std::move(test_idx)};
}

std::vector<int> SubsampleIndices(int n, int cap, uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("subsample cap must be >= 1");
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  if (n <= cap) return idx;
  std::mt19937_64 rng(seed);
  std::shuffle(idx.begin(), idx.end(), rng);
  idx.resize(cap);
  std::sort(idx.begin(), idx.end());
  return idx;
}

Dataset Subsample(const Dataset& ds, int cap, uint64_t seed) {
  if (cap < 1) throw std::invalid_argument("subsample cap must be >= 1");
  if (ds.example_count() <= cap) return ds;
  return ds.Subset(SubsampleIndices(ds.example_count(), cap, seed));
}

void AlignFeatureCounts(Dataset& a, Dataset& b) {
  const int d = std::max(a.feature_count(), b.feature_count());
  a = a.PaddedTo(d);
  b = b.PaddedTo(d);
}

}  // namespace ipboost
