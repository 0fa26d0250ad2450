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

#include "simpor/data.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <numeric>
#include <sstream>

#include <fmt/format.h>
#include "json.hpp"

namespace simpor {

Dataset::Dataset(Matrix features, std::vector<int> labels,
                 std::vector<std::string> class_names,
                 std::vector<std::string> feature_names)
    : features_(std::move(features)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)),
      feature_names_(std::move(feature_names)) {
  if (static_cast<std::size_t>(features_.rows()) != labels_.size()) {
    throw DataError(fmt::format("dataset has {} feature rows but {} labels",
                                features_.rows(), labels_.size()));
  }
  if (!features_.allFinite()) throw DataError("dataset contains non-finite features");
  if (feature_names_.empty()) {
    for (Eigen::Index j = 0; j < features_.cols(); ++j)
      feature_names_.push_back(fmt::format("x{}", j));
  } else if (feature_names_.size() != dim()) {
    throw DataError("feature name count does not match dimension");
  }
  class_index_.assign(class_names_.size(), {});
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    const int c = labels_[i];
    if (c < 0 || static_cast<std::size_t>(c) >= class_names_.size())
      throw DataError(fmt::format("label {} of sample {} is not a declared class", c, i));
    class_index_[static_cast<std::size_t>(c)].push_back(i);
  }
}

std::size_t Dataset::present_classes() const {
  return static_cast<std::size_t>(std::count_if(
      class_index_.begin(), class_index_.end(), [](const auto& v) { return !v.empty(); }));
}

Dataset Dataset::subset(std::span<const std::size_t> indices) const {
  Matrix x(static_cast<Eigen::Index>(indices.size()), features_.cols());
  std::vector<int> y(indices.size());
  for (std::size_t k = 0; k < indices.size(); ++k) {
    x.row(static_cast<Eigen::Index>(k)) = row(indices[k]);
    y[k] = labels_[indices[k]];
  }
  return with_rows(std::move(x), std::move(y));
}

Dataset Dataset::with_rows(Matrix features, std::vector<int> labels) const {
  return Dataset(std::move(features), std::move(labels), class_names_, feature_names_);
}

Dataset canonicalize_binary(const Dataset& ds) {
  if (ds.present_classes() != 2 || ds.num_classes() != 2) {
    throw DataError(fmt::format("expected exactly two classes, found {}", ds.present_classes()));
  }
  if (ds.count(0) >= ds.count(1)) return ds;
  std::vector<int> y(ds.labels());
  for (int& v : y) v = 1 - v;
  return Dataset(ds.features(), std::move(y), {ds.class_names()[1], ds.class_names()[0]},
                 ds.feature_names());
}

double imbalance_ratio(const Dataset& ds) {
  if (ds.present_classes() != 2 || ds.num_classes() != 2)
    throw DataError("imbalance ratio needs exactly two classes");
  const auto a = static_cast<double>(ds.count(0));
  const auto b = static_cast<double>(ds.count(1));
  return std::max(a, b) / std::min(a, b);
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::string trim(std::string_view s) {
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  if (s.size() >= 2 && s.front() == '"' && s.back() == '"') s = s.substr(1, s.size() - 2);
  return std::string(s);
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(std::string_view(line).substr(
        start, comma == std::string::npos ? std::string::npos : comma - start)));
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_number(const std::string& cell) {
  if (cell.empty()) return std::nullopt;
  double v = 0.0;
  const char* first = cell.data();
  if (*first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, cell.data() + cell.size(), v);
  if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

bool is_index(const std::string& s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

LoadResult load_csv(const std::filesystem::path& path, const CsvOptions& options) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path.string()));
  std::string line;
  if (!std::getline(in, line)) throw DataError(fmt::format("{} is empty", path.string()));
  if (line.size() >= 3 && line.compare(0, 3, "\xEF\xBB\xBF") == 0) line.erase(0, 3);
  const auto header = split_line(line);
  const std::size_t ncols = header.size();

  std::size_t label_col = ncols - 1;
  if (!options.label_column.empty()) {
    const auto it = std::find(header.begin(), header.end(), options.label_column);
    if (it != header.end()) {
      label_col = static_cast<std::size_t>(it - header.begin());
    } else if (is_index(options.label_column) && std::stoul(options.label_column) < ncols) {
      label_col = std::stoul(options.label_column);
    } else {
      throw DataError(fmt::format("label column '{}' not found in {}", options.label_column,
                                  path.string()));
    }
  }
  std::vector<std::size_t> feature_cols;
  std::vector<std::string> feature_names;
  for (std::size_t j = 0; j < ncols; ++j) {
    if (j == label_col) continue;
    if (std::find(options.ignore_columns.begin(), options.ignore_columns.end(), header[j]) !=
        options.ignore_columns.end())
      continue;
    feature_cols.push_back(j);
    feature_names.push_back(header[j]);
  }
  if (feature_cols.empty()) throw DataError(fmt::format("{} has no feature columns", path.string()));

  LoadResult result;
  std::vector<double> values;
  std::vector<std::string> raw_labels;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++result.rows_read;
    const auto cells = split_line(line);
    if (cells.size() != ncols) {
      throw DataError(fmt::format("{}:{}: expected {} columns, found {}", path.string(), line_no,
                                  ncols, cells.size()));
    }
    bool ok = !cells[label_col].empty();
    std::vector<double> row;
    row.reserve(feature_cols.size());
    for (std::size_t j : feature_cols) {
      if (!ok) break;
      const auto v = parse_number(cells[j]);
      if (!v) ok = false;
      else row.push_back(*v);
    }
    if (!ok) {
      ++result.rows_dropped;
      continue;
    }
    values.insert(values.end(), row.begin(), row.end());
    raw_labels.push_back(cells[label_col]);
  }
  if (raw_labels.empty()) throw DataError(fmt::format("{} has no usable rows", path.string()));

  // Class order: numeric ascending when every label is a number, else lexical.
  std::vector<std::string> names(raw_labels);
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  if (std::all_of(names.begin(), names.end(), [](const auto& s) { return parse_number(s).has_value(); })) {
    std::stable_sort(names.begin(), names.end(),
                     [](const auto& a, const auto& b) { return *parse_number(a) < *parse_number(b); });
  }
  std::map<std::string, int> class_of;
  for (std::size_t c = 0; c < names.size(); ++c) class_of[names[c]] = static_cast<int>(c);
  std::vector<int> labels;
  labels.reserve(raw_labels.size());
  for (const auto& l : raw_labels) labels.push_back(class_of[l]);

  const auto n = static_cast<Eigen::Index>(raw_labels.size());
  const auto d = static_cast<Eigen::Index>(feature_cols.size());
  Matrix x = Eigen::Map<Matrix>(values.data(), n, d);
  result.dataset = Dataset(std::move(x), std::move(labels), std::move(names), std::move(feature_names));
  return result;
}

std::string format_double(double v) { return fmt::format("{}", v); }

std::string to_csv(const Dataset& ds, std::span<const ExtraColumn> extra) {
  for (const auto& col : extra) {
    if (col.values.size() != ds.size())
      throw DataError(fmt::format("extra column '{}' has wrong length", col.name));
  }
  std::string out;
  for (const auto& name : ds.feature_names()) out += name + ",";
  out += "label";
  for (const auto& col : extra) out += "," + col.name;
  out += "\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    for (std::size_t j = 0; j < ds.dim(); ++j) {
      out += format_double(ds.features()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
      out += ',';
    }
    out += ds.class_names()[static_cast<std::size_t>(ds.label(i))];
    for (const auto& col : extra) out += "," + col.values[i];
    out += '\n';
  }
  return out;
}

void save_csv(const std::filesystem::path& path, const Dataset& ds,
              std::span<const ExtraColumn> extra) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << to_csv(ds, extra);
  if (!out) throw DataError(fmt::format("write to {} failed", path.string()));
}

// ---------------------------------------------------------------------------
// Normalization

Vector MinMaxTransform::apply(const Vector& x) const {
  Vector y(x.size());
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    const auto k = static_cast<std::size_t>(j);
    const double range = max[k] - min[k];
    y[j] = range > 0.0 ? (x[j] - min[k]) / range : 0.0;
  }
  return y;
}

Dataset MinMaxTransform::apply(const Dataset& ds) const {
  if (ds.dim() != min.size()) throw DataError("transform dimension does not match dataset");
  Matrix x(ds.features().rows(), ds.features().cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) x.row(i) = apply(Vector(ds.features().row(i).transpose())).transpose();
  return ds.with_rows(std::move(x), ds.labels());
}

std::string MinMaxTransform::to_json() const {
  return nlohmann::json{{"min", min}, {"max", max}}.dump(2);
}

MinMaxTransform MinMaxTransform::from_json(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    MinMaxTransform t{j.at("min").get<std::vector<double>>(), j.at("max").get<std::vector<double>>()};
    if (t.min.size() != t.max.size()) throw DataError("transform min/max length mismatch");
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw DataError(fmt::format("bad transform record: {}", e.what()));
  }
}

Normalized min_max_normalize(const Dataset& ds) {
  MinMaxTransform t;
  for (Eigen::Index j = 0; j < ds.features().cols(); ++j) {
    t.min.push_back(ds.size() ? ds.features().col(j).minCoeff() : 0.0);
    t.max.push_back(ds.size() ? ds.features().col(j).maxCoeff() : 0.0);
  }
  auto out = t.apply(ds);
  return {std::move(out), std::move(t)};
}

// ---------------------------------------------------------------------------
// Splitting

SplitPair stratified_split(const Dataset& ds, double test_fraction, std::uint64_t seed) {
  if (!(test_fraction > 0.0 && test_fraction < 1.0))
    throw ConfigError(fmt::format("test fraction {} outside (0,1)", test_fraction));
  Rng rng(seed);
  SplitPair split;
  split.seed = seed;
  for (std::size_t c = 0; c < ds.num_classes(); ++c) {
    auto idx = ds.class_indices(static_cast<int>(c));
    if (idx.empty()) continue;
    if (idx.size() < 2)
      throw DataError(fmt::format("class '{}' has fewer than 2 samples", ds.class_names()[c]));
    std::shuffle(idx.begin(), idx.end(), rng);
    auto n_test = static_cast<std::size_t>(std::lround(static_cast<double>(idx.size()) * test_fraction));
    n_test = std::clamp<std::size_t>(n_test, 1, idx.size() - 1);
    split.test_indices.insert(split.test_indices.end(), idx.begin(), idx.begin() + static_cast<std::ptrdiff_t>(n_test));
    split.train_indices.insert(split.train_indices.end(), idx.begin() + static_cast<std::ptrdiff_t>(n_test), idx.end());
  }
  std::sort(split.train_indices.begin(), split.train_indices.end());
  std::sort(split.test_indices.begin(), split.test_indices.end());
  split.train = ds.subset(split.train_indices);
  split.test = ds.subset(split.test_indices);
  return split;
}

// ---------------------------------------------------------------------------
// Moon

Dataset make_moon(std::size_t n_samples, double ratio, double noise, std::uint64_t seed) {
  if (n_samples < 2 || n_samples % 2 != 0) throw ConfigError("moon sample count must be even and >= 2");
  if (!(ratio >= 1.0)) throw ConfigError("imbalance ratio must be >= 1");
  if (noise < 0.0) throw ConfigError("noise must be non-negative");
  const std::size_t half = n_samples / 2;
  const auto keep = static_cast<std::size_t>(std::ceil(static_cast<double>(half) / ratio - 1e-9));
  if (keep < 1) throw ConfigError("imbalance ratio leaves no minority samples");

  Rng rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix all(static_cast<Eigen::Index>(n_samples), 2);
  for (std::size_t i = 0; i < half; ++i) {
    const double t = half > 1 ? std::numbers::pi * static_cast<double>(i) / static_cast<double>(half - 1) : 0.0;
    all(static_cast<Eigen::Index>(i), 0) = std::cos(t);
    all(static_cast<Eigen::Index>(i), 1) = std::sin(t);
    all(static_cast<Eigen::Index>(half + i), 0) = 1.0 - std::cos(t);
    all(static_cast<Eigen::Index>(half + i), 1) = 0.5 - std::sin(t);
  }
  for (Eigen::Index i = 0; i < all.rows(); ++i) {
    all(i, 0) += noise * gauss(rng);
    all(i, 1) += noise * gauss(rng);
  }

  std::vector<std::size_t> minority(half);
  std::iota(minority.begin(), minority.end(), half);
  std::shuffle(minority.begin(), minority.end(), rng);
  minority.resize(keep);
  std::sort(minority.begin(), minority.end());

  std::vector<std::size_t> rows(half);
  std::iota(rows.begin(), rows.end(), 0);
  rows.insert(rows.end(), minority.begin(), minority.end());
  Matrix x(static_cast<Eigen::Index>(rows.size()), 2);
  std::vector<int> y(rows.size());
  for (std::size_t k = 0; k < rows.size(); ++k) {
    x.row(static_cast<Eigen::Index>(k)) = all.row(static_cast<Eigen::Index>(rows[k]));
    y[k] = rows[k] < half ? 0 : 1;
  }
  Dataset raw(std::move(x), std::move(y), {"0", "1"});
  return min_max_normalize(raw).dataset;
}

}  // namespace simpor

namespace simpor {

BalancedDataset append_synthetic(const Dataset& original, const Matrix& synthetic, int label,
                                 std::vector<std::size_t> parents) {
  if (static_cast<std::size_t>(synthetic.rows()) != parents.size())
    throw DataError("one parent index is needed per synthetic row");
  if (synthetic.rows() > 0 && static_cast<std::size_t>(synthetic.cols()) != original.dim())
    throw DataError("synthetic rows have the wrong dimension");
  Matrix x(original.features().rows() + synthetic.rows(), original.features().cols());
  x.topRows(original.features().rows()) = original.features();
  if (synthetic.rows() > 0) x.bottomRows(synthetic.rows()) = synthetic;
  std::vector<int> y(original.labels());
  y.insert(y.end(), static_cast<std::size_t>(synthetic.rows()), label);
  return {original.with_rows(std::move(x), std::move(y)), original.size(), std::move(parents)};
}

std::string BalancedDataset::to_csv() const {
  ExtraColumn flag{"synthetic", std::vector<std::string>(data.size(), "0")};
  for (std::size_t i = n_original; i < data.size(); ++i) flag.values[i] = "1";
  return simpor::to_csv(data, std::span<const ExtraColumn>(&flag, 1));
}

void BalancedDataset::save_csv(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError(fmt::format("cannot write {}", path.string()));
  out << to_csv();
  if (!out) throw DataError(fmt::format("write to {} failed", path.string()));
}

}  // namespace simpor
