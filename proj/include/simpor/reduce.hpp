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
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "simpor/common.hpp"
#include "simpor/data.hpp"

namespace simpor::reduce {

struct EigenPair {
  std::vector<double> values;  // descending
  Matrix vectors;              // column j pairs with values[j]
};

// Symmetric eigendecomposition by cyclic Jacobi rotations, sweeping until the
// off-diagonal mass falls below tol (relative) or max_sweeps is hit.
EigenPair symmetric_eigen(const Matrix& a, double tol = 1e-12, std::size_t max_sweeps = 100000);

struct ProjectionReport {
  // Unit principal axes as rows, each with its first non-zero coordinate positive.
  Matrix axes;
  std::vector<double> explained_variance;
  double total_variance = 0.0;
  Vector mean;
  // One row per sample.
  Matrix projected;
};

// Centers the data and projects it onto the leading n_components (1 or 2)
// eigenvectors of the sample covariance. Throws DataError for zero-variance
// data, N < 2, or d < n_components.
ProjectionReport pca_project(const Dataset& ds, std::size_t n_components);

struct HdrResult {
  std::vector<double> edges;  // bins + 1 edges
  std::vector<std::size_t> majority_counts;
  std::vector<std::size_t> minority_counts;
  std::size_t intersection = 0;
  std::size_t minority_total = 0;
  double hdr_percent = 0.0;

  nlohmann::json to_json() const;
};

// Hard-to-differentiate ratio of a 1-d projection: equal-width bins over the
// combined range, min(count_A, count_B) summed over bins, divided by the
// minority count. `minority` names the minority label.
HdrResult hdr(std::span<const double> projected, std::span<const int> labels, int minority,
              std::size_t bins = 20);

}  // namespace simpor::reduce
