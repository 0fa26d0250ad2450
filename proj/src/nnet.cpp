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

#include "simpor/nnet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <fmt/format.h>
#include "json.hpp"

namespace simpor::nnet {

MlpSpec MlpSpec::evaluation_default() { return MlpSpec{}; }

MlpSpec MlpSpec::probe_default() {
  MlpSpec s;
  s.hidden = {10, 10};
  s.max_epochs = 300;
  s.batch_size = 32;
  s.learning_rate = 0.01;
  s.lr_decay = {0.9, 5, 1e-4};
  s.early_stop = {true, 10, 1e-4};
  return s;
}

void MlpSpec::validate() const {
  if (std::any_of(hidden.begin(), hidden.end(), [](std::size_t w) { return w < 1; }))
    throw ConfigError("hidden layer widths must be >= 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning rate must be positive");
  if (!(lr_decay.factor > 0.0 && lr_decay.factor < 1.0))
    throw ConfigError("learning-rate decay factor must lie in (0,1)");
  if (max_epochs < 1) throw ConfigError("max_epochs must be >= 1");
  if (batch_size < 1) throw ConfigError("batch_size must be >= 1");
}

Network Network::initialize(std::size_t inputs, std::span<const std::size_t> hidden,
                            std::size_t outputs, Rng& rng) {
  Network net;
  std::size_t fan_in = inputs;
  // Glorot-uniform weights, zero biases.
  auto add = [&](std::size_t width) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in + width));
    DenseLayer layer{Eigen::MatrixXd(fan_in, width), Eigen::VectorXd::Zero(static_cast<Eigen::Index>(width))};
    // Column-major fill order is fixed so the draw sequence is deterministic.
    for (Eigen::Index j = 0; j < layer.weights.cols(); ++j)
      for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
        layer.weights(i, j) = (2.0 * uniform01(rng) - 1.0) * limit;
    net.layers.push_back(std::move(layer));
    fan_in = width;
  };
  for (std::size_t w : hidden) add(w);
  add(outputs);
  return net;
}

namespace {

void softmax_rows(Eigen::MatrixXd& z) {
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    const double m = z.row(i).maxCoeff();
    z.row(i) = (z.row(i).array() - m).exp();
    z.row(i) /= z.row(i).sum();
  }
}

// Activations after each layer; the last holds raw logits.
std::vector<Eigen::MatrixXd> forward(const Network& net, const Eigen::MatrixXd& x) {
  std::vector<Eigen::MatrixXd> acts;
  acts.reserve(net.layers.size());
  const Eigen::MatrixXd* input = &x;
  for (std::size_t l = 0; l < net.layers.size(); ++l) {
    const auto& layer = net.layers[l];
    Eigen::MatrixXd z = (*input) * layer.weights;
    z.rowwise() += layer.bias.transpose();
    if (l + 1 < net.layers.size()) z = z.cwiseMax(0.0);
    acts.push_back(std::move(z));
    input = &acts.back();
  }
  return acts;
}

}  // namespace

Eigen::MatrixXd Network::predict_proba(const Eigen::MatrixXd& x) const {
  if (static_cast<std::size_t>(x.cols()) != input_dim())
    throw DataError(fmt::format("model expects {} features, got {}", input_dim(), x.cols()));
  auto acts = forward(*this, x);
  Eigen::MatrixXd p = std::move(acts.back());
  softmax_rows(p);
  return p;
}

double loss_and_gradients(const Network& net, const Eigen::MatrixXd& x, std::span<const int> y,
                          std::vector<DenseLayer>* grads) {
  const auto acts = forward(net, x);
  const Eigen::MatrixXd& logits = acts.back();
  const auto n = static_cast<double>(x.rows());
  Eigen::MatrixXd delta(logits.rows(), logits.cols());
  double loss = 0.0;
  for (Eigen::Index i = 0; i < logits.rows(); ++i) {
    const double m = logits.row(i).maxCoeff();
    const Eigen::RowVectorXd e = (logits.row(i).array() - m).exp();
    const double s = e.sum();
    const auto yi = static_cast<Eigen::Index>(y[static_cast<std::size_t>(i)]);
    loss += std::log(s) + m - logits(i, yi);
    delta.row(i) = e / s;
    delta(i, yi) -= 1.0;
  }
  loss /= n;
  if (!grads) return loss;

  delta /= n;
  grads->resize(net.layers.size());
  for (std::size_t l = net.layers.size(); l-- > 0;) {
    const Eigen::MatrixXd& input = l == 0 ? x : acts[l - 1];
    (*grads)[l].weights.noalias() = input.transpose() * delta;
    (*grads)[l].bias = delta.colwise().sum().transpose();
    if (l > 0) {
      Eigen::MatrixXd back = delta * net.layers[l].weights.transpose();
      delta = (acts[l - 1].array() > 0.0).select(back, 0.0);
    }
  }
  return loss;
}

Eigen::MatrixXd TrainedModel::predict_proba(const Matrix& x) const {
  return network.predict_proba(Eigen::MatrixXd(x));
}

std::string TrainedModel::to_json() const {
  nlohmann::json j;
  j["hidden"] = spec.hidden;
  j["loss_history"] = loss_history;
  j["final_learning_rate"] = final_learning_rate;
  for (const auto& layer : network.layers) {
    std::vector<std::vector<double>> w(static_cast<std::size_t>(layer.weights.rows()));
    for (Eigen::Index i = 0; i < layer.weights.rows(); ++i)
      for (Eigen::Index k = 0; k < layer.weights.cols(); ++k) w[static_cast<std::size_t>(i)].push_back(layer.weights(i, k));
    j["layers"].push_back({{"weights", w},
                           {"bias", std::vector<double>(layer.bias.data(), layer.bias.data() + layer.bias.size())}});
  }
  return j.dump();
}

namespace {

struct AdamState {
  std::vector<DenseLayer> m, v;
  std::size_t t = 0;

  explicit AdamState(const Network& net) {
    for (const auto& l : net.layers) {
      m.push_back({Eigen::MatrixXd::Zero(l.weights.rows(), l.weights.cols()),
                   Eigen::VectorXd::Zero(l.bias.size())});
    }
    v = m;
  }

  void step(Network& net, const std::vector<DenseLayer>& g, double lr, const AdamConstants& c) {
    ++t;
    const double ti = static_cast<double>(t);
    const double lr_t = lr * std::sqrt(1.0 - std::pow(c.beta2, ti)) / (1.0 - std::pow(c.beta1, ti));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
      m[l].weights = c.beta1 * m[l].weights + (1.0 - c.beta1) * g[l].weights;
      v[l].weights = c.beta2 * v[l].weights + (1.0 - c.beta2) * g[l].weights.cwiseAbs2();
      net.layers[l].weights.array() -= lr_t * m[l].weights.array() / (v[l].weights.array().sqrt() + c.epsilon);
      m[l].bias = c.beta1 * m[l].bias + (1.0 - c.beta1) * g[l].bias;
      v[l].bias = c.beta2 * v[l].bias + (1.0 - c.beta2) * g[l].bias.cwiseAbs2();
      net.layers[l].bias.array() -= lr_t * m[l].bias.array() / (v[l].bias.array().sqrt() + c.epsilon);
    }
  }
};

void fit(TrainedModel& model, const Dataset& data, std::uint64_t seed) {
  const MlpSpec& spec = model.spec;
  if (data.present_classes() < 2) throw DataError("training set needs at least two classes");
  if (data.dim() != model.network.input_dim())
    throw DataError(fmt::format("model expects {} features, got {}", model.network.input_dim(), data.dim()));

  Rng rng(seed);
  AdamState adam(model.network);
  std::vector<DenseLayer> grads;
  std::vector<std::size_t> order(data.size());
  std::iota(order.begin(), order.end(), 0);
  const Eigen::MatrixXd x_all = data.features();

  double lr = spec.learning_rate;
  double best_for_lr = std::numeric_limits<double>::infinity();
  double best_for_stop = std::numeric_limits<double>::infinity();
  std::size_t lr_wait = 0;
  std::size_t stop_wait = 0;
  Eigen::MatrixXd xb;
  std::vector<int> yb;

  for (std::size_t epoch = 0; epoch < spec.max_epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double epoch_loss = 0.0;
    for (std::size_t start = 0; start < order.size(); start += spec.batch_size) {
      const std::size_t end = std::min(order.size(), start + spec.batch_size);
      xb.resize(static_cast<Eigen::Index>(end - start), x_all.cols());
      yb.resize(end - start);
      for (std::size_t k = start; k < end; ++k) {
        xb.row(static_cast<Eigen::Index>(k - start)) = x_all.row(static_cast<Eigen::Index>(order[k]));
        yb[k - start] = data.label(order[k]);
      }
      const double loss = loss_and_gradients(model.network, xb, yb, &grads);
      if (!std::isfinite(loss))
        throw NumericalError(fmt::format("non-finite training loss at epoch {}", epoch));
      epoch_loss += loss * static_cast<double>(end - start);
      adam.step(model.network, grads, lr, spec.adam);
    }
    epoch_loss /= static_cast<double>(order.size());
    model.loss_history.push_back(epoch_loss);

    if (epoch_loss < best_for_lr - spec.lr_decay.floor_delta) {
      best_for_lr = epoch_loss;
      lr_wait = 0;
    } else if (++lr_wait >= spec.lr_decay.patience) {
      lr *= spec.lr_decay.factor;
      lr_wait = 0;
    }
    if (spec.early_stop.enabled) {
      if (epoch_loss < best_for_stop - spec.early_stop.min_delta) {
        best_for_stop = epoch_loss;
        stop_wait = 0;
      } else if (++stop_wait >= spec.early_stop.patience) {
        break;
      }
    }
  }
  model.final_learning_rate = lr;
}

}  // namespace

TrainedModel train(const MlpSpec& spec, const Dataset& data) {
  spec.validate();
  if (data.size() == 0) throw DataError("empty training set");
  if (data.present_classes() < 2) throw DataError("training set needs at least two classes");
  Rng init_rng(derive_seed(spec.seed, 0x1417));
  TrainedModel model{spec, Network::initialize(data.dim(), spec.hidden, data.num_classes(), init_rng), {}, 0.0};
  fit(model, data, derive_seed(spec.seed, 0x5eed));
  return model;
}

TrainedModel fine_tune(const TrainedModel& model, const Dataset& data, std::uint64_t seed) {
  TrainedModel next = model;
  next.loss_history.clear();
  fit(next, data, seed);
  return next;
}

}  // namespace simpor::nnet
