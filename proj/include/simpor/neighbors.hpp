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
#include <vector>

#include "simpor/common.hpp"

namespace simpor {

struct Neighbor {
  std::size_t index;
  double distance;
};

// The k nearest rows of `points` to row `query` (excluding the query itself),
// by exhaustive Euclidean scan. Ties go to the lower index. If `candidates`
// is non-empty only those rows are considered.
std::vector<Neighbor> nearest_neighbors(const Matrix& points, std::size_t query, std::size_t k,
                                        std::span<const std::size_t> candidates = {});

}  // namespace simpor
