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

#include "simpor/neighbors.hpp"

#include <algorithm>
#include <cmath>

namespace simpor {

std::vector<Neighbor> nearest_neighbors(const Matrix& points, std::size_t query, std::size_t k,
                                        std::span<const std::size_t> candidates) {
  const auto q = points.row(static_cast<Eigen::Index>(query));
  std::vector<Neighbor> all;
  auto consider = [&](std::size_t i) {
    if (i == query) return;
    all.push_back({i, (points.row(static_cast<Eigen::Index>(i)) - q).squaredNorm()});
  };
  if (candidates.empty()) {
    all.reserve(static_cast<std::size_t>(points.rows()));
    for (std::size_t i = 0; i < static_cast<std::size_t>(points.rows()); ++i) consider(i);
  } else {
    all.reserve(candidates.size());
    for (std::size_t i : candidates) consider(i);
  }
  k = std::min(k, all.size());
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(k), all.end(),
                    [](const Neighbor& a, const Neighbor& b) {
                      return a.distance != b.distance ? a.distance < b.distance : a.index < b.index;
                    });
  all.resize(k);
  for (auto& n : all) n.distance = std::sqrt(n.distance);
  return all;
}

}  // namespace simpor
