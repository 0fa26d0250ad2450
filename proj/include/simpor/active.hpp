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
#include <span>
#include <string>
#include <vector>

#include "simpor/data.hpp"
#include "simpor/nnet.hpp"

namespace simpor::active {

struct ActiveConfig {
  double informative_portion = 0.3;
  std::size_t batch_size = 20;
  std::size_t initial_per_class = 3;
  nnet::MlpSpec probe = nnet::MlpSpec::probe_default();
  std::uint64_t seed = 0;
  std::size_t workers = 1;

  void validate() const;
};

// Base-n entropy of a probability vector over n >= 2 classes, in [0,1].
// Zero entries contribute nothing. Throws DataError if probs is not a
// simplex point (tolerance 1e-6).
double entropy(std::span<const double> probs);

struct InformativeSet {
  // Train-set indices in selection order.
  std::vector<std::size_t> indices;
  // indices[round_ends[r-1] .. round_ends[r]) was added in round r. Round 0 is
  // the random seed batch.
  std::vector<std::size_t> round_ends;
  // Entropy of each selected sample at the time it was chosen (seed batch: NaN).
  std::vector<double> entropies;
  // The target size was below the seed batch; only the seed batch is returned.
  bool degenerate = false;

  std::string to_json() const;
};

// The k highest-entropy candidates, ties broken by ascending index.
std::vector<std::size_t> top_k_by_entropy(std::span<const std::size_t> candidates,
                                          std::span<const double> entropies, std::size_t k);

// Scores every candidate with `model` and returns its top-k batch along with
// the entropies of the returned samples.
struct Batch {
  std::vector<std::size_t> indices;
  std::vector<double> entropies;
};
Batch next_batch(const nnet::TrainedModel& model, const Dataset& train,
                 std::span<const std::size_t> candidates, std::size_t k, std::size_t workers = 1);

// Accumulates high-entropy samples batch by batch until round(IP * N) are
// selected. The probe is trained on the seed batch and fine-tuned on the
// growing selection each round.
InformativeSet select_informative(const Dataset& train, const ActiveConfig& cfg);

}  // namespace simpor::active
