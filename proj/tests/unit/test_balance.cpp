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

#include <gtest/gtest.h>

#include "simpor/balance.hpp"
#include "oracles.hpp"

namespace simpor {
namespace {

Dataset blobs(std::size_t n_major, std::size_t n_minor, std::uint64_t seed) {
  Rng rng(seed);
  Matrix x = testing_oracle::random_matrix(n_major + n_minor, 2, rng);
  std::vector<int> y(n_major + n_minor, 0);
  for (std::size_t i = n_major; i < y.size(); ++i) {
    y[i] = 1;
    x(static_cast<Eigen::Index>(i), 0) += 1.5;
  }
  return Dataset(x, y, {"maj", "min"});
}

SimporConfig fast_config(std::uint64_t seed) {
  SimporConfig cfg;
  cfg.seed = seed;
  cfg.active.probe.max_epochs = 30;
  return cfg;
}

TEST(Range, MeanDistance) {
  Matrix x(4, 1);
  x << 0, 1, 3, 10;
  Dataset ds(x, {0, 0, 1, 1}, {"a", "b"});
  EXPECT_DOUBLE_EQ(knn_range(ds, 0, 2), 2.0);
  EXPECT_DOUBLE_EQ(knn_range(ds, 2, 1, NeighborScope::MinorityOnly), 7.0);
  EXPECT_THROW(knn_range(ds, 0, 4), ConfigError);
}

TEST(Radius, Bounds) {
  Rng rng(1);
  for (int i = 0; i < 1000; ++i) {
    const auto d = sample_radius(0.5, 0.6, rng);
    EXPECT_GT(d.r, 0.0);
    EXPECT_LE(d.r, 4 * 0.6 * 0.5);
  }
  const auto z = sample_radius(0.0, 0.6, rng);
  EXPECT_TRUE(z.degenerate);
  EXPECT_DOUBLE_EQ(z.r, 1e-9);
}

TEST(Reject, DominatedNeighborhood) {
  Matrix x(6, 1);
  x << 0, 0.1, 0.2, 0.3, 5, 5.1;
  Dataset ds(x, {1, 0, 0, 0, 1, 1}, {"a", "b"});
  EXPECT_FALSE(reject_candidate(ds, 0, 3).accept);
  EXPECT_TRUE(reject_candidate(ds, 4, 1).accept);
}

TEST(Balance, PostconditionsAndSphere) {
  const auto ds = blobs(80, 15, 2);
  const auto res = balance(ds, fast_config(5));
  const auto& out = res.balanced.data;
  EXPECT_EQ(out.count(kMajority), out.count(kMinority));
  EXPECT_EQ(res.synthetics.size(), 65u);
  EXPECT_EQ(res.report.phase1_synthetics + res.report.phase2_synthetics, 65u);
  for (std::size_t s = 0; s < res.synthetics.size(); ++s) {
    const auto& syn = res.synthetics[s];
    EXPECT_EQ(out.label(res.balanced.n_original + s), kMinority);
    const double dist = (syn.features - ds.row(syn.parent_index).transpose()).norm();
    EXPECT_LE(std::abs(dist - syn.radius), 1e-9 * std::max(syn.radius, 1.0));
    EXPECT_GE(syn.f_log, syn.f_init);
  }
}

TEST(Balance, WorkerCountDoesNotMatter) {
  const auto ds = blobs(60, 12, 3);
  auto cfg = fast_config(9);
  const auto one = balance(ds, cfg).balanced.to_csv();
  cfg.workers = 4;
  cfg.active.workers = 4;
  EXPECT_EQ(balance(ds, cfg).balanced.to_csv(), one);
}

TEST(Balance, MinorityLabelAsClassZero) {
  const auto base = blobs(50, 10, 4);
  std::vector<int> flipped(base.labels());
  for (auto& v : flipped) v = 1 - v;
  Dataset ds(base.features(), flipped, {"min", "maj"});
  const auto res = balance(ds, fast_config(1));
  EXPECT_EQ(res.balanced.data.count(0), res.balanced.data.count(1));
}

TEST(Balance, AlreadyBalancedIsNoOp) {
  const auto ds = blobs(20, 20, 5);
  const auto res = balance(ds, fast_config(1));
  EXPECT_EQ(res.synthetics.size(), 0u);
}

TEST(Config, Validation) {
  SimporConfig cfg;
  cfg.alpha = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
  cfg = SimporConfig{};
  cfg.k_neighbors = 0;
  EXPECT_THROW(cfg.validate(), ConfigError);
}

}  // namespace
}  // namespace simpor
