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
#include <string>
#include <vector>

#include "simpor/data.hpp"

namespace simpor::baselines {

enum class Method {
  Ros,
  Smote,
  BorderlineSmote,
  Adasyn,
};

std::string to_string(Method m);
// Accepts ros, smote, borderline_smote (bl-smote), adasyn. Throws ConfigError.
Method parse_method(const std::string& name);

struct BaselineConfig {
  Method method = Method::Smote;
  std::size_t k_neighbors = 5;
  std::uint64_t seed = 0;
};

struct BaselineResult {
  BalancedDataset balanced;
  // Borderline-SMOTE found no danger samples, or ADASYN found no boundary
  // exposure, and plain SMOTE was used instead.
  bool fell_back_to_smote = false;
};

// Duplicates uniformly chosen minority samples until the classes are equal.
BaselineResult ros(const Dataset& train, std::uint64_t seed);

// x + u (x_nn - x) with u ~ U(0,1) and x_nn one of x's k nearest minority
// neighbors. Needs at least two minority samples.
BaselineResult smote(const Dataset& train, std::size_t k, std::uint64_t seed);

// SMOTE restricted to DANGER parents: k/2 <= (majority neighbors) < k.
BaselineResult borderline_smote(const Dataset& train, std::size_t k, std::uint64_t seed);

// Allocates synthetics in proportion to each minority sample's share of
// majority neighbors, then interpolates as SMOTE does.
BaselineResult adasyn(const Dataset& train, std::size_t k, std::uint64_t seed);

BaselineResult run(const Dataset& train, const BaselineConfig& cfg);

// ADASYN allocation: floor(w_i / sum(w) * total) each, with the remainder
// handed one by one to the largest weights (ties to the lower index).
// Zero-weight entries receive nothing.
std::vector<std::size_t> allocate_by_weight(const std::vector<double>& weights, std::size_t total);

}  // namespace simpor::baselines
