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

#include "simpor/density.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

namespace simpor::density {

double scott_bandwidth(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw ConfigError("Scott bandwidth needs n >= 1 and d >= 1");
  return std::pow(static_cast<double>(n), -1.0 / (static_cast<double>(d) + 4.0));
}

KdeModel::KdeModel(Matrix points, double bandwidth) : points_(std::move(points)), h_(bandwidth) {
  if (points_.rows() == 0 || points_.cols() == 0) throw ConfigError("KDE needs at least one point");
  if (!(h_ > 0.0) || !std::isfinite(h_)) throw ConfigError("KDE bandwidth must be positive");
  const auto d = static_cast<double>(points_.cols());
  log_norm_ = -std::log(static_cast<double>(points_.rows())) - d * std::log(h_) -
              0.5 * d * std::log(2.0 * std::numbers::pi);
}

void KdeModel::check_dim(const Vector& x) const {
  if (x.size() != points_.cols())
    throw DataError(fmt::format("KDE has dimension {}, query has {}", points_.cols(), x.size()));
}

double KdeModel::log_density(const Vector& x) const {
  check_dim(x);
  const Eigen::ArrayXd m =
      -0.5 * (points_.rowwise() - x.transpose()).rowwise().squaredNorm().array() / (h_ * h_);
  const double top = m.maxCoeff();
  return log_norm_ + top + std::log((m - top).exp().sum());
}

double KdeModel::log_density_and_gradient(const Vector& x, Vector& grad) const {
  check_dim(x);
  const Matrix diff = points_.rowwise() - x.transpose();
  const Eigen::ArrayXd m = -0.5 * diff.rowwise().squaredNorm().array() / (h_ * h_);
  const double top = m.maxCoeff();
  const Eigen::ArrayXd w = (m - top).exp();
  const double total = w.sum();
  grad = (diff.transpose() * w.matrix()) / (total * h_ * h_);
  return log_norm_ + top + std::log(total);
}

Vector KdeModel::log_density_gradient(const Vector& x) const {
  Vector g;
  log_density_and_gradient(x, g);
  return g;
}

Priors empirical_priors(const Dataset& ds) {
  if (ds.num_classes() != 2) throw DataError("priors need a two-class dataset");
  const auto a = static_cast<double>(ds.count(0));
  const auto b = static_cast<double>(ds.count(1));
  if (a == 0.0 || b == 0.0) throw DataError("priors need both classes non-empty");
  const double n = a + b;
  return a >= b ? Priors{a / n, b / n} : Priors{b / n, a / n};
}

PosteriorRatioObjective::PosteriorRatioObjective(KdeModel minority, KdeModel majority, Priors priors)
    : minority_(std::move(minority)), majority_(std::move(majority)), priors_(priors) {
  if (minority_.dim() != majority_.dim()) throw ConfigError("class KDEs differ in dimension");
  if (!(priors_.majority > 0.0 && priors_.minority > 0.0) ||
      std::abs(priors_.majority + priors_.minority - 1.0) > 1e-12)
    throw ConfigError("priors must be positive and sum to 1");
}

PosteriorRatioObjective PosteriorRatioObjective::from_dataset(const Dataset& ds, BandwidthMode mode) {
  const Priors priors = empirical_priors(ds);
  const int minority = ds.count(0) >= ds.count(1) ? 1 : 0;
  const Dataset b = ds.subset(ds.class_indices(minority));
  const Dataset a = ds.subset(ds.class_indices(1 - minority));
  const std::size_t d = ds.dim();
  const double h_b = mode == BandwidthMode::Shared ? scott_bandwidth(ds.size(), d) : scott_bandwidth(b.size(), d);
  const double h_a = mode == BandwidthMode::Shared ? scott_bandwidth(ds.size(), d) : scott_bandwidth(a.size(), d);
  return {KdeModel(b.features(), h_b), KdeModel(a.features(), h_a), priors};
}

double PosteriorRatioObjective::log_ratio(const Vector& x) const {
  return (minority_.log_density(x) + std::log(priors_.minority)) -
         (majority_.log_density(x) + std::log(priors_.majority));
}

double PosteriorRatioObjective::log_ratio_and_gradient(const Vector& x, Vector& grad) const {
  Vector gb, ga;
  const double lb = minority_.log_density_and_gradient(x, gb);
  const double la = majority_.log_density_and_gradient(x, ga);
  grad = gb - ga;
  return (lb + std::log(priors_.minority)) - (la + std::log(priors_.majority));
}

Vector PosteriorRatioObjective::log_ratio_gradient(const Vector& x) const {
  Vector g;
  log_ratio_and_gradient(x, g);
  return g;
}

}  // namespace simpor::density
