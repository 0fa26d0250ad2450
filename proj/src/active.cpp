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

#include "simpor/active.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include <fmt/format.h>
#include "json.hpp"

#include "simpor/parallel.hpp"

namespace simpor::active {

void ActiveConfig::validate() const {
  if (!(informative_portion > 0.0 && informative_portion <= 1.0))
    throw ConfigError(fmt::format("informative portion {} outside (0,1]", informative_portion));
  if (batch_size < 1) throw ConfigError("active-learning batch size must be >= 1");
  if (initial_per_class < 1) throw ConfigError("initial_per_class must be >= 1");
  probe.validate();
}

double entropy(std::span<const double> probs) {
  if (probs.size() < 2) throw DataError("entropy needs at least two classes");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= -1e-6 && p <= 1.0 + 1e-6)) throw DataError("probability outside [0,1]");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-6) throw DataError("probabilities do not sum to 1");
  const double log_n = std::log(static_cast<double>(probs.size()));
  double e = 0.0;
  for (double p : probs)
    if (p > 0.0) e -= p * std::log(p);
  return std::clamp(e / log_n, 0.0, 1.0);
}

std::string InformativeSet::to_json() const {
  nlohmann::json j;
  j["indices"] = indices;
  j["round_ends"] = round_ends;
  j["degenerate"] = degenerate;
  auto& e = j["entropies"];
  e = nlohmann::json::array();
  for (double v : entropies) e.push_back(std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(v));
  return j.dump();
}

std::vector<std::size_t> top_k_by_entropy(std::span<const std::size_t> candidates,
                                          std::span<const double> entropies, std::size_t k) {
  std::vector<std::size_t> order(candidates.size());
  std::iota(order.begin(), order.end(), 0);
  k = std::min(k, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                    [&](std::size_t a, std::size_t b) {
                      if (entropies[a] != entropies[b]) return entropies[a] > entropies[b];
                      return candidates[a] < candidates[b];
                    });
  std::vector<std::size_t> out;
  out.reserve(k);
  for (std::size_t i = 0; i < k; ++i) out.push_back(order[i]);
  return out;
}

Batch next_batch(const nnet::TrainedModel& model, const Dataset& train,
                 std::span<const std::size_t> candidates, std::size_t k, std::size_t workers) {
  std::vector<double> scores(candidates.size());
  constexpr std::size_t kChunk = 256;
  const std::size_t chunks = (candidates.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, workers, [&](std::size_t c) {
    const std::size_t begin = c * kChunk;
    const std::size_t end = std::min(candidates.size(), begin + kChunk);
    Eigen::MatrixXd x(static_cast<Eigen::Index>(end - begin), static_cast<Eigen::Index>(train.dim()));
    for (std::size_t i = begin; i < end; ++i) x.row(static_cast<Eigen::Index>(i - begin)) = train.row(candidates[i]);
    const Eigen::MatrixXd p = model.network.predict_proba(x);
    for (Eigen::Index r = 0; r < p.rows(); ++r) {
      const Eigen::RowVectorXd row = p.row(r);
      scores[begin + static_cast<std::size_t>(r)] = entropy(std::span<const double>(row.data(), static_cast<std::size_t>(row.size())));
    }
  });
  Batch batch;
  for (std::size_t pos : top_k_by_entropy(candidates, scores, k)) {
    batch.indices.push_back(candidates[pos]);
    batch.entropies.push_back(scores[pos]);
  }
  return batch;
}

InformativeSet select_informative(const Dataset& train, const ActiveConfig& cfg) {
  cfg.validate();
  if (train.present_classes() < 2) throw DataError("active learning needs at least two classes");
  const std::size_t n = train.size();
  const auto target = static_cast<std::size_t>(std::lround(cfg.informative_portion * static_cast<double>(n)));

  InformativeSet s;
  std::vector<char> taken(n, 0);
  auto add = [&](std::size_t i, double e) {
    s.indices.push_back(i);
    s.entropies.push_back(e);
    taken[i] = 1;
  };

  if (target >= n) {
    for (std::size_t i = 0; i < n; ++i) add(i, std::numeric_limits<double>::quiet_NaN());
    s.round_ends.push_back(n);
    return s;
  }

  Rng rng(cfg.seed);
  for (std::size_t c = 0; c < train.num_classes(); ++c) {
    auto idx = train.class_indices(static_cast<int>(c));
    if (idx.empty()) continue;
    if (idx.size() < cfg.initial_per_class)
      throw DataError(fmt::format("class '{}' has fewer than {} samples for the seed batch",
                                  train.class_names()[c], cfg.initial_per_class));
    std::shuffle(idx.begin(), idx.end(), rng);
    for (std::size_t k = 0; k < cfg.initial_per_class; ++k) add(idx[k], std::numeric_limits<double>::quiet_NaN());
  }
  s.round_ends.push_back(s.indices.size());
  if (target < s.indices.size()) {
    s.degenerate = true;
    return s;
  }

  nnet::MlpSpec spec = cfg.probe;
  spec.seed = derive_seed(cfg.seed, 0xac71);
  std::optional<nnet::TrainedModel> probe;
  std::size_t round = 1;
  while (s.indices.size() < target) {
    const Dataset labeled = train.subset(s.indices);
    probe = probe ? nnet::fine_tune(*probe, labeled, derive_seed(cfg.seed, 0xf1e, round))
                  : nnet::train(spec, labeled);
    std::vector<std::size_t> remaining;
    for (std::size_t i = 0; i < n; ++i)
      if (!taken[i]) remaining.push_back(i);
    if (remaining.empty()) break;
    const Batch batch = next_batch(*probe, train, remaining, cfg.batch_size, cfg.workers);
    for (std::size_t k = 0; k < batch.indices.size(); ++k) add(batch.indices[k], batch.entropies[k]);
    s.round_ends.push_back(s.indices.size());
    ++round;
  }
  return s;
}

}  // namespace simpor::active
