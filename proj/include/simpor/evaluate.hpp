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
#include <string>
#include <vector>

#include "json.hpp"

#include "simpor/balance.hpp"
#include "simpor/baselines.hpp"
#include "simpor/data.hpp"
#include "simpor/metrics.hpp"
#include "simpor/nnet.hpp"

namespace simpor::eval {

enum class MethodKind {
  None,
  Ros,
  Smote,
  BorderlineSmote,
  Adasyn,
  Simpor,
};

struct MethodSpec {
  MethodKind kind = MethodKind::Simpor;
  std::size_t k_neighbors = 5;
  SimporConfig simpor;

  std::string name() const;
};

// none, ros, smote, borderline_smote, adasyn, simpor. Throws ConfigError.
MethodKind parse_method(const std::string& name);

struct BalanceOutcome {
  BalancedDataset balanced;
  double seconds = 0.0;
  nlohmann::json report;
};

// Balances `train` with the given method. `seed` overrides the method seed.
BalanceOutcome apply_method(const MethodSpec& method, const Dataset& train, std::uint64_t seed,
                            std::size_t workers);

struct EvalConfig {
  std::size_t trials = 5;
  double test_fraction = 0.2;
  // Min-max scale with the train split's range before balancing.
  bool normalize = true;
  nnet::MlpSpec classifier = nnet::MlpSpec::evaluation_default();
  std::uint64_t seed = 0;
  std::size_t workers = 1;
};

struct TrialResult {
  std::uint64_t seed = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  double auc = 0.0;
  // Wall-clock seconds spent balancing the training split.
  double balance_seconds = 0.0;
  std::size_t synthetics = 0;
};

struct MetricsReport {
  std::string method;
  std::vector<TrialResult> trials;
  metrics::Summary precision, recall, f1, auc, balance_seconds;

  nlohmann::json to_json() const;
};

// Repeated holdout: per trial a fresh stratified split, balance the training
// part, train the classifier, and score the untouched test part. Macro
// precision/recall/F1 from argmax predictions; AUC from the minority-class
// probability.
MetricsReport evaluate(const MethodSpec& method, const Dataset& dataset, const EvalConfig& cfg);

struct NamedDataset {
  std::string name;
  Dataset data;
};

struct BenchmarkReport {
  std::vector<std::string> datasets;
  std::vector<std::string> methods;
  // [dataset][method]
  std::vector<std::vector<MetricsReport>> results;
  std::vector<std::size_t> f1_wins;
  std::vector<std::size_t> auc_wins;
  // [method a][method b], paired over datasets on mean scores.
  std::vector<std::vector<metrics::WilcoxonResult>> f1_wilcoxon;
  std::vector<std::vector<metrics::WilcoxonResult>> auc_wilcoxon;

  nlohmann::json to_json() const;
};

// Builds winning times and pairwise Wilcoxon tests from mean-score tables
// ([dataset][method]).
void summarize_tables(BenchmarkReport& report, const std::vector<std::vector<double>>& f1,
                      const std::vector<std::vector<double>>& auc);

BenchmarkReport benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<MethodSpec>& methods, const EvalConfig& cfg);

enum class SweepParam {
  Alpha,
  InformativePortion,
};

SweepParam parse_sweep_param(const std::string& name);

// "a:b:step" (inclusive) or a comma-separated list. Throws ConfigError.
std::vector<double> parse_values(const std::string& text);

struct SweepRow {
  std::string dataset;
  double value = 0.0;
  metrics::Summary f1, auc;
};

// Evaluates SIMPOR on `dataset` once per value of the swept parameter.
std::vector<SweepRow> sweep(const NamedDataset& dataset, SweepParam param,
                            const std::vector<double>& values, const MethodSpec& base,
                            const EvalConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepParam param);

}  // namespace simpor::eval
