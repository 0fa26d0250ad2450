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
#include <map>
#include <span>
#include <string>
#include <vector>

namespace simpor::metrics {

struct ConfusionCounts {
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t tn = 0;

  std::size_t total() const { return tp + fp + fn + tn; }
};

// One-vs-rest counts with `positive` as the positive class.
ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred, int positive);

struct ClassScores {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
  // Class absent from both y_true and y_pred; scores set to 0.
  bool degenerate = false;
};

struct F1Report {
  std::vector<ClassScores> per_class;
  double precision_macro = 0.0;
  double recall_macro = 0.0;
  double f1_macro = 0.0;
};

// Per-class precision/recall/F1 and their unweighted means over
// `num_classes` classes. Undefined precision or recall counts as 0. Throws
// std::invalid_argument on empty or mismatched input.
F1Report f1_macro(std::span<const int> y_true, std::span<const int> y_pred, std::size_t num_classes);

// Area under the ROC curve as the Mann-Whitney statistic with average ranks
// for ties. `positive` marks which label counts as positive. Throws
// std::invalid_argument unless both classes are present.
double roc_auc(std::span<const int> y_true, std::span<const double> scores, int positive = 1);

struct WilcoxonResult {
  double statistic = 0.0;  // min(W+, W-)
  double w_plus = 0.0;
  double w_minus = 0.0;
  std::size_t n_effective = 0;
  double p_value = 1.0;
  bool significant_at_0_05 = false;
  // Fewer than 5 non-zero differences.
  bool unreliable = false;
  // p from the exact null distribution rather than the normal approximation.
  bool exact = false;
};

// Two-sided signed-rank test of a - b. Zero differences are dropped and tied
// magnitudes get average ranks. Up to `exact_limit` non-zero pairs the p-value
// comes from the exact permutation distribution; above it, from the normal
// approximation with tie-corrected variance and continuity correction.
WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    std::size_t exact_limit = 50);

// Rows are datasets, columns are methods. A method scores a win on every row
// where it attains the row maximum; ties all score.
std::vector<std::size_t> winning_times(const std::vector<std::vector<double>>& table);

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation; 0 for one value
};
Summary summarize(std::span<const double> values);

}  // namespace simpor::metrics
