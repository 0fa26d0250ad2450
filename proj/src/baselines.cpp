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

#include "simpor/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

#include "simpor/neighbors.hpp"

namespace simpor::baselines {

std::string to_string(Method m) {
  switch (m) {
    case Method::Ros: return "ros";
    case Method::Smote: return "smote";
    case Method::BorderlineSmote: return "borderline_smote";
    case Method::Adasyn: return "adasyn";
  }
  return "?";
}

Method parse_method(const std::string& name) {
  if (name == "ros") return Method::Ros;
  if (name == "smote") return Method::Smote;
  if (name == "borderline_smote" || name == "bl-smote" || name == "bl_smote") return Method::BorderlineSmote;
  if (name == "adasyn") return Method::Adasyn;
  throw ConfigError(fmt::format("unknown baseline method '{}'", name));
}

namespace {

BaselineResult unchanged(const Dataset& ds) {
  return {append_synthetic(ds, Matrix(0, static_cast<Eigen::Index>(ds.dim())), kMinority, {}), false};
}

// Interpolates `count_per_parent[m]` synthetics from minority[m] toward its
// minority neighbors.
BaselineResult interpolate(const Dataset& ds, std::size_t k, const std::vector<std::size_t>& parents,
                           Rng& rng) {
  const auto& minority = ds.class_indices(kMinority);
  const std::size_t kk = std::min(k, minority.size() - 1);
  std::vector<std::vector<Neighbor>> cache(ds.size());
  Matrix synth(static_cast<Eigen::Index>(parents.size()), static_cast<Eigen::Index>(ds.dim()));
  for (std::size_t t = 0; t < parents.size(); ++t) {
    const std::size_t p = parents[t];
    if (cache[p].empty()) cache[p] = nearest_neighbors(ds.features(), p, kk, minority);
    const std::size_t nn = cache[p][uniform_index(rng, cache[p].size())].index;
    const double u = uniform01(rng);
    synth.row(static_cast<Eigen::Index>(t)) = ds.row(p) + u * (ds.row(nn) - ds.row(p));
  }
  return {append_synthetic(ds, synth, kMinority, parents), false};
}

void require_minority(const Dataset& ds, std::size_t n) {
  if (ds.count(kMinority) < n)
    throw DataError(fmt::format("method needs at least {} minority samples", n));
}

// Majority-class count among the k nearest neighbors (all classes).
std::size_t majority_neighbors(const Dataset& ds, std::size_t i, std::size_t k) {
  std::size_t m = 0;
  for (const auto& n : nearest_neighbors(ds.features(), i, k))
    if (ds.label(n.index) != kMinority) ++m;
  return m;
}

}  // namespace

BaselineResult ros(const Dataset& train, std::uint64_t seed) {
  const Dataset ds = canonicalize_binary(train);
  const std::size_t deficit = ds.count(kMajority) - ds.count(kMinority);
  if (deficit == 0) return unchanged(ds);
  Rng rng(seed);
  const auto& minority = ds.class_indices(kMinority);
  std::vector<std::size_t> parents(deficit);
  Matrix synth(static_cast<Eigen::Index>(deficit), static_cast<Eigen::Index>(ds.dim()));
  for (std::size_t t = 0; t < deficit; ++t) {
    parents[t] = minority[uniform_index(rng, minority.size())];
    synth.row(static_cast<Eigen::Index>(t)) = ds.row(parents[t]);
  }
  return {append_synthetic(ds, synth, kMinority, std::move(parents)), false};
}

BaselineResult smote(const Dataset& train, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("k_neighbors must be >= 1");
  const Dataset ds = canonicalize_binary(train);
  const std::size_t deficit = ds.count(kMajority) - ds.count(kMinority);
  if (deficit == 0) return unchanged(ds);
  require_minority(ds, 2);
  Rng rng(seed);
  const auto& minority = ds.class_indices(kMinority);
  std::vector<std::size_t> parents(deficit);
  for (auto& p : parents) p = minority[uniform_index(rng, minority.size())];
  return interpolate(ds, k, parents, rng);
}

BaselineResult borderline_smote(const Dataset& train, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("k_neighbors must be >= 1");
  const Dataset ds = canonicalize_binary(train);
  const std::size_t deficit = ds.count(kMajority) - ds.count(kMinority);
  if (deficit == 0) return unchanged(ds);
  require_minority(ds, 2);
  if (k > ds.size() - 1) throw ConfigError("k exceeds N-1");
  std::vector<std::size_t> danger;
  for (std::size_t i : ds.class_indices(kMinority)) {
    const std::size_t m = majority_neighbors(ds, i, k);
    if (2 * m >= k && m < k) danger.push_back(i);
  }
  if (danger.empty()) {
    auto res = smote(ds, k, seed);
    res.fell_back_to_smote = true;
    return res;
  }
  Rng rng(seed);
  std::vector<std::size_t> parents(deficit);
  for (auto& p : parents) p = danger[uniform_index(rng, danger.size())];
  return interpolate(ds, k, parents, rng);
}

std::vector<std::size_t> allocate_by_weight(const std::vector<double>& weights, std::size_t total) {
  const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::vector<std::size_t> g(weights.size(), 0);
  if (!(sum > 0.0)) return g;
  std::size_t assigned = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    g[i] = static_cast<std::size_t>(std::floor(weights[i] / sum * static_cast<double>(total)));
    assigned += g[i];
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < weights.size(); ++i)
    if (weights[i] > 0.0) order.push_back(i);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return weights[a] > weights[b]; });
  for (std::size_t j = 0; assigned < total; j = (j + 1) % order.size(), ++assigned) ++g[order[j]];
  return g;
}

BaselineResult adasyn(const Dataset& train, std::size_t k, std::uint64_t seed) {
  if (k < 1) throw ConfigError("k_neighbors must be >= 1");
  const Dataset ds = canonicalize_binary(train);
  const std::size_t deficit = ds.count(kMajority) - ds.count(kMinority);
  if (deficit == 0) return unchanged(ds);
  require_minority(ds, 2);
  if (k > ds.size() - 1) throw ConfigError("k exceeds N-1");
  const auto& minority = ds.class_indices(kMinority);
  std::vector<double> ratio(minority.size());
  for (std::size_t m = 0; m < minority.size(); ++m)
    ratio[m] = static_cast<double>(majority_neighbors(ds, minority[m], k)) / static_cast<double>(k);
  if (std::all_of(ratio.begin(), ratio.end(), [](double r) { return r == 0.0; })) {
    auto res = smote(ds, k, seed);
    res.fell_back_to_smote = true;
    return res;
  }
  const auto g = allocate_by_weight(ratio, deficit);
  std::vector<std::size_t> parents;
  parents.reserve(deficit);
  for (std::size_t m = 0; m < minority.size(); ++m) parents.insert(parents.end(), g[m], minority[m]);
  Rng rng(seed);
  return interpolate(ds, k, parents, rng);
}

BaselineResult run(const Dataset& train, const BaselineConfig& cfg) {
  switch (cfg.method) {
    case Method::Ros: return ros(train, cfg.seed);
    case Method::Smote: return smote(train, cfg.k_neighbors, cfg.seed);
    case Method::BorderlineSmote: return borderline_smote(train, cfg.k_neighbors, cfg.seed);
    case Method::Adasyn: return adasyn(train, cfg.k_neighbors, cfg.seed);
  }
  throw ConfigError("unknown baseline method");
}

}  // namespace simpor::baselines
