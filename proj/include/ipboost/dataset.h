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

#ifndef IPBOOST_DATASET_H_
#define IPBOOST_DATASET_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ipboost {

// Labelled binary classification examples stored as a dense row-major matrix.
// Labels are exactly -1 or +1. Immutable after construction.
class Dataset {
 public:
  // `features` is row-major with `feature_count` columns. Throws
  // std::invalid_argument when the shape is inconsistent, a label is not +-1,
  // or the data set is empty.
  Dataset(std::vector<double> features, std::vector<int> labels,
          int feature_count);

  int example_count() const { return static_cast<int>(labels_.size()); }
  int feature_count() const { return feature_count_; }

  std::span<const double> row(int i) const {
    return {features_.data() + static_cast<size_t>(i) * feature_count_,
            static_cast<size_t>(feature_count_)};
  }
  double feature(int i, int k) const {
    return features_[static_cast<size_t>(i) * feature_count_ + k];
  }
  int label(int i) const { return labels_[i]; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<double>& features() const { return features_; }

  int positive_count() const;

  // Rows in the given order. Indices may repeat; must be in range.
  Dataset Subset(std::span<const int> indices) const;

  // Zero-pads (or keeps) columns so the result has `d` features; d must be
  // at least feature_count().
  Dataset PaddedTo(int d) const;

 private:
  std::vector<double> features_;
  std::vector<int> labels_;
  int feature_count_;
};

// Parses LIBSVM sparse text: `<label> <idx>:<val> ...` per non-empty line with
// strictly increasing 1-based indices. Labels <= 0 map to -1 and > 0 to +1;
// when that leaves a single class although the file carries exactly two
// distinct label values (e.g. {2, 4}), the smaller value maps to -1. The
// feature count is the largest index seen. Throws ParseError.
Dataset ParseLibsvm(std::string_view text);
Dataset ReadLibsvmFile(const std::filesystem::path& path);

// Inverse of ParseLibsvm for +-1 labels; zeros are omitted and values are
// printed with round-trip precision.
std::string ToLibsvm(const Dataset& ds);

struct SplitSpec {
  double test_fraction = 0.2;
  uint64_t seed = 0;
};

// Uniform (unstratified) random partition. The train part holds
// ceil(N * (1 - test_fraction)) examples; the test part is absent when it
// would be empty. Index lists refer to rows of the input, sorted.
struct SplitResult {
  Dataset train;
  std::optional<Dataset> test;
  std::vector<int> train_indices;
  std::vector<int> test_indices;
};
SplitResult Split(const Dataset& ds, const SplitSpec& spec);

// Returns `ds` unchanged when N <= cap, otherwise `cap` examples drawn
// uniformly without replacement (kept in original order).
Dataset Subsample(const Dataset& ds, int cap, uint64_t seed);
std::vector<int> SubsampleIndices(int n, int cap, uint64_t seed);

// Pads the narrower of a train/test pair with zero columns.
void AlignFeatureCounts(Dataset& a, Dataset& b);

}  // namespace ipboost

#endif  // IPBOOST_DATASET_H_
