/*
 * Copyright 2026 The simpor Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "simpor/common.hpp"

namespace simpor {

// Labeled tabular samples. Labels are dense class ids indexing class_names;
// the original label text is kept in class_names for output. Immutable after
// construction.
class Dataset {
 public:
  Dataset() = default;
  // Throws DataError on non-finite features, out-of-range labels, or
  // mismatched sizes.
  Dataset(Matrix features, std::vector<int> labels,
          std::vector<std::string> class_names,
          std::vector<std::string> feature_names = {});

  const Matrix& features() const { return features_; }
  const std::vector<int>& labels() const { return labels_; }
  const std::vector<std::string>& class_names() const { return class_names_; }
  const std::vector<std::string>& feature_names() const { return feature_names_; }

  std::size_t size() const { return labels_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }
  std::size_t num_classes() const { return class_names_.size(); }
  int label(std::size_t i) const { return labels_[i]; }
  auto row(std::size_t i) const { return features_.row(static_cast<Eigen::Index>(i)); }

  // Indices of the samples of class c, ascending.
  const std::vector<std::size_t>& class_indices(int c) const {
    return class_index_[static_cast<std::size_t>(c)];
  }
  std::size_t count(int c) const { return class_indices(c).size(); }
  // Number of classes with at least one sample.
  std::size_t present_classes() const;

  // Rows `indices` in the given order, same class table.
  Dataset subset(std::span<const std::size_t> indices) const;
  // Same classes and feature names, new rows.
  Dataset with_rows(Matrix features, std::vector<int> labels) const;

 private:
  Matrix features_;
  std::vector<int> labels_;
  std::vector<std::string> class_names_;
  std::vector<std::string> feature_names_;
  std::vector<std::vector<std::size_t>> class_index_;
};

// Class 0 is the majority and class 1 the minority. Original names are kept.
// Ties keep the first declared class as majority.
constexpr int kMajority = 0;
constexpr int kMinority = 1;

// Relabels a two-class dataset so that class 0 is the majority. Throws
// DataError unless exactly two classes are present.
Dataset canonicalize_binary(const Dataset& ds);

// N_majority / N_minority for a two-class dataset.
double imbalance_ratio(const Dataset& ds);

struct CsvOptions {
  // Header name or zero-based column index. Empty selects the last column.
  std::string label_column;
  // Header names of columns to skip entirely (e.g. "synthetic").
  std::vector<std::string> ignore_columns;
};

struct LoadResult {
  Dataset dataset;
  std::size_t rows_read = 0;
  std::size_t rows_dropped = 0;
};

// Reads a header-first comma-separated file. Rows with a missing or
// unparseable feature cell, or a missing label, are dropped and counted.
LoadResult load_csv(const std::filesystem::path& path, const CsvOptions& options = {});

// Writes features then a "label" column holding the original class names.
// Extra columns (same length as the dataset) are appended after the label.
struct ExtraColumn {
  std::string name;
  std::vector<std::string> values;
};
void save_csv(const std::filesystem::path& path, const Dataset& ds,
              std::span<const ExtraColumn> extra = {});
std::string to_csv(const Dataset& ds, std::span<const ExtraColumn> extra = {});

// Shortest round-trip decimal representation.
std::string format_double(double v);

// Originals (in input order) followed by synthetic rows.
struct BalancedDataset {
  Dataset data;
  std::size_t n_original = 0;
  // Per synthetic row: index of the original sample it was generated from.
  std::vector<std::size_t> parents;

  std::size_t n_synthetic() const { return data.size() - n_original; }
  // Dataset CSV plus a trailing 0/1 "synthetic" column.
  std::string to_csv() const;
  void save_csv(const std::filesystem::path& path) const;
};

// Appends synthetic rows of class `label` to `original`.
BalancedDataset append_synthetic(const Dataset& original, const Matrix& synthetic, int label,
                                 std::vector<std::size_t> parents);

// Per-feature affine map onto [0,1] fit on one dataset and reusable on others.
struct MinMaxTransform {
  std::vector<double> min;
  std::vector<double> max;

  // Constant features map to 0. No clamping: unseen values may leave [0,1].
  Dataset apply(const Dataset& ds) const;
  Vector apply(const Vector& x) const;
  std::string to_json() const;
  static MinMaxTransform from_json(const std::string& text);
};

struct Normalized {
  Dataset dataset;
  MinMaxTransform transform;
};
Normalized min_max_normalize(const Dataset& ds);

struct SplitPair {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_indices;
  std::vector<std::size_t> test_indices;
  std::uint64_t seed = 0;
};

// Per-class proportional split. Each class contributes round(n_c * fraction)
// test samples, kept within [1, n_c - 1]. Rows keep their original order.
SplitPair stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed);

// Two interleaving half circles (class 0 outer, class 1 inner) with Gaussian
// coordinate noise, made imbalanced by randomly removing class-1 samples
// until ceil((n/2) / ratio) remain, then min-max scaled to [0,1].
Dataset make_moon(std::size_t n_samples, double imbalance_ratio, double noise,
                  std::uint64_t seed);

}  // namespace simpor
