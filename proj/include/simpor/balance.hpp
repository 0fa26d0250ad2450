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

#include "simpor/active.hpp"
#include "simpor/data.hpp"
#include "simpor/density.hpp"
#include "simpor/sphere_opt.hpp"

namespace simpor {

enum class NeighborScope {
  AllClasses,
  MinorityOnly,
};

struct SimporConfig {
  std::size_t k_neighbors = 5;
  // Radius spread: r = |N(0, (alpha R)^2)|.
  double alpha = 0.6;
  active::ActiveConfig active;
  sphere::SphereAscentConfig ascent;
  std::size_t rejection_limit = 50;
  density::BandwidthMode bandwidth = density::BandwidthMode::PerClass;
  // Neighborhood used for the range R. Rejection always looks at all classes.
  NeighborScope range_scope = NeighborScope::AllClasses;
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

// Mean Euclidean distance from sample `index` to its k nearest other samples.
// Throws ConfigError when k exceeds the number of candidates.
double knn_range(const Dataset& ds, std::size_t index, std::size_t k,
                 NeighborScope scope = NeighborScope::AllClasses);

struct RadiusDraw {
  double r = 0.0;
  // R was 0; r is the 1e-9 fallback.
  bool degenerate = false;
};

// |g| with g ~ N(0, (alpha R)^2), redrawn when exactly 0 or above 4 alpha R.
RadiusDraw sample_radius(double range, double alpha, Rng& rng);

struct RejectDecision {
  bool accept = true;
  // Label counts among the k nearest neighbors, indexed by class id.
  std::vector<std::size_t> histogram;
  // Largest other-class count minus own-class count.
  long excess = 0;
};

// Rejects the candidate when another class outnumbers its own class among its
// k nearest neighbors (all classes).
RejectDecision reject_candidate(const Dataset& ds, std::size_t index, std::size_t k);

enum class Region {
  Informative,
  Remaining,
};

struct SyntheticSample {
  Vector features;
  int label = kMinority;
  std::size_t parent_index = 0;
  double radius = 0.0;
  double f_log = 0.0;
  double f_init = 0.0;
  Region region = Region::Informative;
  bool converged = false;
};

struct BalanceReport {
  std::size_t n_majority = 0;
  std::size_t n_minority = 0;
  std::size_t informative_size = 0;
  std::size_t informative_majority = 0;
  std::size_t informative_minority = 0;
  bool informative_degenerate = false;
  std::size_t phase1_synthetics = 0;
  std::size_t phase2_synthetics = 0;
  // Phase 2 had no minority parent outside the informative set and drew from
  // all minority samples instead.
  bool phase2_used_all_minority = false;
  std::size_t rejections = 0;
  std::size_t rejection_fallbacks = 0;
  std::size_t zero_range_parents = 0;
  std::size_t unconverged = 0;
  double active_seconds = 0.0;
  double synthesis_seconds = 0.0;
  double total_seconds = 0.0;

  std::string to_json() const;
};

struct SimporResult {
  BalancedDataset balanced;
  std::vector<SyntheticSample> synthetics;
  std::vector<std::size_t> informative;
  BalanceReport report;
};

// Balances a two-class training set: first the informative region selected
// by entropy-based active learning, then the rest, each synthetic sample
// maximizing the posterior ratio on a sphere around a minority parent.
// Output class counts are exactly equal. Deterministic in cfg.seed for any
// worker count.
SimporResult balance(const Dataset& train, const SimporConfig& cfg);

}  // namespace simpor
