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

#include "simpor/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace simpor::metrics {

ConfusionCounts confusion(std::span<const int> y_true, std::span<const int> y_pred, int positive) {
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("label sequences differ in length");
  ConfusionCounts c;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const bool t = y_true[i] == positive;
    const bool p = y_pred[i] == positive;
    if (t && p) ++c.tp;
    else if (!t && p) ++c.fp;
    else if (t && !p) ++c.fn;
    else ++c.tn;
  }
  return c;
}

F1Report f1_macro(std::span<const int> y_true, std::span<const int> y_pred, std::size_t num_classes) {
  if (y_true.empty()) throw std::invalid_argument("f1 of an empty sample");
  if (y_true.size() != y_pred.size()) throw std::invalid_argument("label sequences differ in length");
  F1Report r;
  for (std::size_t c = 0; c < num_classes; ++c) {
    const auto cc = confusion(y_true, y_pred, static_cast<int>(c));
    ClassScores s;
    s.degenerate = cc.tp + cc.fn == 0 && cc.tp + cc.fp == 0;
    if (cc.tp + cc.fp > 0) s.precision = static_cast<double>(cc.tp) / static_cast<double>(cc.tp + cc.fp);
    if (cc.tp + cc.fn > 0) s.recall = static_cast<double>(cc.tp) / static_cast<double>(cc.tp + cc.fn);
    if (s.precision + s.recall > 0.0) s.f1 = 2.0 * s.precision * s.recall / (s.precision + s.recall);
    r.precision_macro += s.precision;
    r.recall_macro += s.recall;
    r.f1_macro += s.f1;
    r.per_class.push_back(s);
  }
  const auto n = static_cast<double>(num_classes);
  r.precision_macro /= n;
  r.recall_macro /= n;
  r.f1_macro /= n;
  return r;
}

namespace {

// 1-based ranks of `values`, tied values sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values) {
  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
  std::vector<double> ranks(values.size());
  for (std::size_t i = 0; i < order.size();) {
    std::size_t j = i;
    while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) ++j;
    const double avg = 0.5 * static_cast<double>(i + j) + 1.0;
    for (std::size_t t = i; t <= j; ++t) ranks[order[t]] = avg;
    i = j + 1;
  }
  return ranks;
}

}  // namespace

double roc_auc(std::span<const int> y_true, std::span<const double> scores, int positive) {
  if (y_true.size() != scores.size()) throw std::invalid_argument("labels and scores differ in length");
  const auto ranks = average_ranks(scores);
  double rank_sum = 0.0;
  std::size_t n_pos = 0;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    if (y_true[i] == positive) {
      rank_sum += ranks[i];
      ++n_pos;
    }
  }
  const std::size_t n_neg = y_true.size() - n_pos;
  if (n_pos == 0 || n_neg == 0) throw std::invalid_argument("AUC needs both classes present");
  const auto p = static_cast<double>(n_pos);
  return (rank_sum - p * (p + 1.0) / 2.0) / (p * static_cast<double>(n_neg));
}

WilcoxonResult wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b,
                                    std::size_t exact_limit) {
  if (a.size() != b.size()) throw std::invalid_argument("paired samples differ in length");
  std::vector<double> diff;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] - b[i] != 0.0) diff.push_back(a[i] - b[i]);

  WilcoxonResult r;
  r.n_effective = diff.size();
  r.unreliable = diff.size() < 5;
  if (diff.empty()) return r;

  std::vector<double> magnitude(diff.size());
  std::transform(diff.begin(), diff.end(), magnitude.begin(), [](double d) { return std::abs(d); });
  const auto ranks = average_ranks(magnitude);
  for (std::size_t i = 0; i < diff.size(); ++i) (diff[i] > 0 ? r.w_plus : r.w_minus) += ranks[i];
  r.statistic = std::min(r.w_plus, r.w_minus);
  const auto n = static_cast<double>(diff.size());

  if (diff.size() <= exact_limit) {
    // Average ranks are multiples of 1/2, so doubled ranks are integers and
    // the null distribution of doubled W+ is a subset-sum count.
    std::vector<std::size_t> doubled(ranks.size());
    std::transform(ranks.begin(), ranks.end(), doubled.begin(),
                   [](double v) { return static_cast<std::size_t>(std::lround(2.0 * v)); });
    const std::size_t total = std::accumulate(doubled.begin(), doubled.end(), std::size_t{0});
    std::vector<double> ways(total + 1, 0.0);
    ways[0] = 1.0;
    for (std::size_t v : doubled)
      for (std::size_t s = total; s >= v; --s) ways[s] += ways[s - v];
    const auto limit = static_cast<std::size_t>(std::lround(2.0 * r.statistic));
    double tail = 0.0;
    for (std::size_t s = 0; s <= limit; ++s) tail += ways[s];
    r.p_value = std::min(1.0, 2.0 * tail / std::ldexp(1.0, static_cast<int>(diff.size())));
    r.exact = true;
  } else {
    std::vector<double> sorted(magnitude);
    std::sort(sorted.begin(), sorted.end());
    double tie_term = 0.0;
    for (std::size_t i = 0; i < sorted.size();) {
      std::size_t j = i;
      while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
      const auto t = static_cast<double>(j - i);
      tie_term += t * t * t - t;
      i = j;
    }
    const double mean = n * (n + 1.0) / 4.0;
    const double var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    const double z = var > 0.0 ? std::max(0.0, std::abs(r.statistic - mean) - 0.5) / std::sqrt(var) : 0.0;
    r.p_value = std::clamp(std::erfc(z / std::sqrt(2.0)), 0.0, 1.0);
  }
  r.significant_at_0_05 = r.p_value < 0.05;
  return r;
}

std::vector<std::size_t> winning_times(const std::vector<std::vector<double>>& table) {
  std::size_t methods = 0;
  for (const auto& row : table) methods = std::max(methods, row.size());
  std::vector<std::size_t> wins(methods, 0);
  for (const auto& row : table) {
    if (row.empty()) continue;
    const double best = *std::max_element(row.begin(), row.end());
    for (std::size_t m = 0; m < row.size(); ++m)
      if (row[m] == best) ++wins[m];
  }
  return wins;
}

Summary summarize(std::span<const double> values) {
  Summary s;
  if (values.empty()) return s;
  s.mean = std::accumulate(values.begin(), values.end(), 0.0) / static_cast<double>(values.size());
  if (values.size() > 1) {
    double ss = 0.0;
    for (double v : values) ss += (v - s.mean) * (v - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(values.size() - 1));
  }
  return s;
}

}  // namespace simpor::metrics
