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

#include "simpor/common.hpp"
#include "simpor/data.hpp"

namespace simpor::nnet {

// Multiply the learning rate by `factor` after `patience` epochs whose loss
// did not improve on the best seen by more than `floor_delta`.
struct LrDecay {
  double factor = 0.9;
  std::size_t patience = 5;
  double floor_delta = 1e-4;
};

struct EarlyStop {
  bool enabled = false;
  std::size_t patience = 10;
  double min_delta = 1e-4;
};

// Adaptive moment estimation constants.
struct AdamConstants {
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-7;
};

struct MlpSpec {
  std::vector<std::size_t> hidden{100, 100, 100};
  std::size_t max_epochs = 200;
  std::size_t batch_size = 32;
  double learning_rate = 0.1;
  LrDecay lr_decay;
  EarlyStop early_stop;
  AdamConstants adam;
  std::uint64_t seed = 0;

  // Three hidden layers of 100, 200 epochs, batch 32, lr 0.1, decay 0.9/5.
  static MlpSpec evaluation_default();
  // Two hidden layers of 10, up to 300 epochs with early stopping.
  static MlpSpec probe_default();
  // Throws ConfigError.
  void validate() const;
};

// weights are (inputs x outputs) so a batch forward pass is A * W + b.
struct DenseLayer {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

// ReLU hidden layers, softmax output.
struct Network {
  std::vector<DenseLayer> layers;

  static Network initialize(std::size_t inputs, std::span<const std::size_t> hidden,
                            std::size_t outputs, Rng& rng);
  std::size_t input_dim() const { return static_cast<std::size_t>(layers.front().weights.rows()); }
  std::size_t output_dim() const { return static_cast<std::size_t>(layers.back().weights.cols()); }

  // One row per sample; every row is a probability vector.
  Eigen::MatrixXd predict_proba(const Eigen::MatrixXd& x) const;
};

// Mean categorical cross-entropy over the batch. When `grads` is non-null it
// receives d(loss)/d(param) with the same shapes as net.layers.
double loss_and_gradients(const Network& net, const Eigen::MatrixXd& x, std::span<const int> y,
                          std::vector<DenseLayer>* grads);

struct TrainedModel {
  MlpSpec spec;
  Network network;
  std::vector<double> loss_history;
  double final_learning_rate = 0.0;

  Eigen::MatrixXd predict_proba(const Matrix& x) const;
  std::string to_json() const;
};

// Throws DataError for fewer than two present classes and NumericalError
// (with the epoch index) for a non-finite loss.
TrainedModel train(const MlpSpec& spec, const Dataset& data);

// Warm start: continues training `model` on `data` with a fresh optimizer
// state. `seed` drives the shuffle order.
TrainedModel fine_tune(const TrainedModel& model, const Dataset& data, std::uint64_t seed);

}  // namespace simpor::nnet
