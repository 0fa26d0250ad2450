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

#include "simpor/common.hpp"
#include "simpor/data.hpp"

namespace simpor::density {

// Scott's rule of thumb, h = n^(-1/(d+4)).
double scott_bandwidth(std::size_t n, std::size_t d);

// Gaussian-kernel density estimate over one class's samples.
class KdeModel {
 public:
  // Throws ConfigError for empty points or h <= 0.
  KdeModel(Matrix points, double bandwidth);

  std::size_t size() const { return static_cast<std::size_t>(points_.rows()); }
  std::size_t dim() const { return static_cast<std::size_t>(points_.cols()); }
  double bandwidth() const { return h_; }
  const Matrix& points() const { return points_; }

  // log[(1/(n h^d (2pi)^(d/2))) sum_i exp(-|x - x_i|^2 / (2 h^2))], evaluated
  // with log-sum-exp so distant queries stay finite.
  double log_density(const Vector& x) const;
  // Gradient of log_density at x: the kernel-weighted mean of (x_i - x)/h^2.
  Vector log_density_gradient(const Vector& x) const;
  // Both at once; shares the kernel weights.
  double log_density_and_gradient(const Vector& x, Vector& grad) const;

 private:
  void check_dim(const Vector& x) const;

  Matrix points_;
  double h_;
  double log_norm_;  // -log(n) - d log h - (d/2) log(2 pi)
};

enum class BandwidthMode {
  // Each class uses Scott's rule on its own sample count.
  PerClass,
  // Both classes share Scott's rule on N_A + N_B.
  Shared,
};

struct Priors {
  double majority = 0.5;
  double minority = 0.5;
};

// Class frequencies of a two-class dataset (after canonicalization: class 0
// majority). Throws DataError on an empty class.
Priors empirical_priors(const Dataset& ds);

// log f(x) = [log p(x|B) + log p(B)] - [log p(x|A) + log p(A)], where B is the
// minority class and A the majority class. Immutable; safe to share across
// threads.
class PosteriorRatioObjective {
 public:
  PosteriorRatioObjective(KdeModel minority, KdeModel majority, Priors priors);

  // Builds both KDEs and the priors from a two-class dataset. The class with
  // fewer samples is the minority.
  static PosteriorRatioObjective from_dataset(const Dataset& ds,
                                              BandwidthMode mode = BandwidthMode::PerClass);

  std::size_t dim() const { return minority_.dim(); }
  const KdeModel& minority() const { return minority_; }
  const KdeModel& majority() const { return majority_; }
  const Priors& priors() const { return priors_; }

  double log_ratio(const Vector& x) const;
  Vector log_ratio_gradient(const Vector& x) const;
  double log_ratio_and_gradient(const Vector& x, Vector& grad) const;

 private:
  KdeModel minority_;
  KdeModel majority_;
  Priors priors_;
};

}  // namespace simpor::density
