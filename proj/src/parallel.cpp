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

#include "simpor/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <cstring>

namespace simpor {

std::size_t default_workers() {
  const char* env = std::getenv("SIMPOR_WORKERS");
  if (env == nullptr) return 1;
  std::size_t n = 0;
  const auto [ptr, ec] = std::from_chars(env, env + std::strlen(env), n);
  if (ec != std::errc{} || *ptr != '\0' || n == 0) return 1;
  return n;
}

}  // namespace simpor
