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

#include "simpor/reduce.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <fmt/format.h>

namespace simpor::reduce {

EigenPair symmetric_eigen(const Matrix& input, double tol, std::size_t max_sweeps) {
  const Eigen::Index n = input.rows();
  if (n != input.cols()) throw DataError("eigendecomposition needs a square matrix");
  Matrix a = input;
  Matrix v = Matrix::Identity(n, n);
  const double scale = std::max(a.norm(), 1e-300);
  for (std::size_t sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (Eigen::Index p = 0; p < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) off += a(p, q) * a(p, q);
    if (std::sqrt(off) <= tol * scale) break;
    for (Eigen::Index p = 0; p < n; ++p) {
      for (Eigen::Index q = p + 1; q < n; ++q) {
        if (a(p, q) == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (Eigen::Index k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (Eigen::Index k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) { return a(i, i) > a(j, j); });
  EigenPair out;
  out.vectors.resize(n, n);
  for (Eigen::Index j = 0; j < n; ++j) {
    out.values.push_back(a(order[static_cast<std::size_t>(j)], order[static_cast<std::size_t>(j)]));
    out.vectors.col(j) = v.col(order[static_cast<std::size_t>(j)]);
  }
  return out;
}

ProjectionReport pca_project(const Dataset& ds, std::size_t n_components) {
  if (n_components < 1 || n_components > 2) throw ConfigError("PCA supports 1 or 2 components");
  if (ds.size() < 2) throw DataError("PCA needs at least two samples");
  if (ds.dim() < n_components) throw DataError("PCA components exceed the data dimension");

  ProjectionReport rep;
  rep.mean = ds.features().colwise().mean().transpose();
  const Matrix centered = ds.features().rowwise() - rep.mean.transpose();
  const Matrix cov = (centered.transpose() * centered) / static_cast<double>(ds.size() - 1);
  rep.total_variance = cov.trace();
  if (!(rep.total_variance > 0.0)) throw DataError("PCA of zero-variance data");

  const auto eig = symmetric_eigen(cov);
  const auto k = static_cast<Eigen::Index>(n_components);
  rep.axes.resize(k, cov.cols());
  for (Eigen::Index j = 0; j < k; ++j) {
    Vector axis = eig.vectors.col(j).normalized();
    for (Eigen::Index t = 0; t < axis.size(); ++t) {
      if (std::abs(axis[t]) > 1e-12) {
        if (axis[t] < 0.0) axis = -axis;
        break;
      }
    }
    rep.axes.row(j) = axis.transpose();
    rep.explained_variance.push_back(eig.values[static_cast<std::size_t>(j)]);
  }
  rep.projected = centered * rep.axes.transpose();
  return rep;
}

nlohmann::json HdrResult::to_json() const {
  return {{"edges", edges},
          {"majority_counts", majority_counts},
          {"minority_counts", minority_counts},
          {"intersection", intersection},
          {"minority_total", minority_total},
          {"hdr_percent", hdr_percent}};
}

HdrResult hdr(std::span<const double> projected, std::span<const int> labels, int minority,
              std::size_t bins) {
  if (projected.size() != labels.size()) throw DataError("projection and labels differ in length");
  if (bins < 1) throw ConfigError("need at least one bin");
  HdrResult r;
  r.minority_total = static_cast<std::size_t>(std::count(labels.begin(), labels.end(), minority));
  if (r.minority_total == 0) throw DataError("HDR needs at least one minority sample");

  const auto [lo_it, hi_it] = std::minmax_element(projected.begin(), projected.end());
  const double lo = *lo_it, hi = *hi_it;
  if (!(hi > lo)) bins = 1;
  const double width = bins > 1 ? (hi - lo) / static_cast<double>(bins) : 0.0;
  for (std::size_t b = 0; b <= bins; ++b)
    r.edges.push_back(b == bins ? (bins > 1 ? hi : lo) : lo + width * static_cast<double>(b));
  r.majority_counts.assign(bins, 0);
  r.minority_counts.assign(bins, 0);
  for (std::size_t i = 0; i < projected.size(); ++i) {
    std::size_t b = 0;
    if (bins > 1) b = std::min(bins - 1, static_cast<std::size_t>(std::floor((projected[i] - lo) / width)));
    ++(labels[i] == minority ? r.minority_counts : r.majority_counts)[b];
  }
  for (std::size_t b = 0; b < bins; ++b) r.intersection += std::min(r.majority_counts[b], r.minority_counts[b]);
  r.hdr_percent = 100.0 * static_cast<double>(r.intersection) / static_cast<double>(r.minority_total);
  return r;
}

}  // namespace simpor::reduce
