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

#include "simpor/evaluate.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <fmt/format.h>

namespace simpor::eval {

std::string MethodSpec::name() const {
  switch (kind) {
    case MethodKind::None: return "none";
    case MethodKind::Ros: return "ros";
    case MethodKind::Smote: return "smote";
    case MethodKind::BorderlineSmote: return "borderline_smote";
    case MethodKind::Adasyn: return "adasyn";
    case MethodKind::Simpor: return "simpor";
  }
  return "?";
}

MethodKind parse_method(const std::string& name) {
  if (name == "none") return MethodKind::None;
  if (name == "simpor") return MethodKind::Simpor;
  switch (baselines::parse_method(name)) {
    case baselines::Method::Ros: return MethodKind::Ros;
    case baselines::Method::Smote: return MethodKind::Smote;
    case baselines::Method::BorderlineSmote: return MethodKind::BorderlineSmote;
    case baselines::Method::Adasyn: return MethodKind::Adasyn;
  }
  throw ConfigError(fmt::format("unknown method '{}'", name));
}

BalanceOutcome apply_method(const MethodSpec& method, const Dataset& train, std::uint64_t seed,
                            std::size_t workers) {
  const auto t0 = std::chrono::steady_clock::now();
  BalanceOutcome out;
  auto baseline = [&](baselines::Method m) {
    auto res = baselines::run(train, {m, method.k_neighbors, seed});
    out.report = {{"fell_back_to_smote", res.fell_back_to_smote}};
    return std::move(res.balanced);
  };
  switch (method.kind) {
    case MethodKind::None:
      out.balanced = append_synthetic(train, Matrix(0, static_cast<Eigen::Index>(train.dim())), 0, {});
      out.report = nlohmann::json::object();
      break;
    case MethodKind::Ros: out.balanced = baseline(baselines::Method::Ros); break;
    case MethodKind::Smote: out.balanced = baseline(baselines::Method::Smote); break;
    case MethodKind::BorderlineSmote: out.balanced = baseline(baselines::Method::BorderlineSmote); break;
    case MethodKind::Adasyn: out.balanced = baseline(baselines::Method::Adasyn); break;
    case MethodKind::Simpor: {
      SimporConfig cfg = method.simpor;
      cfg.seed = seed;
      cfg.workers = workers;
      auto res = balance(train, cfg);
      out.report = nlohmann::json::parse(res.report.to_json());
      out.balanced = std::move(res.balanced);
      break;
    }
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

nlohmann::json MetricsReport::to_json() const {
  nlohmann::json j;
  j["method"] = method;
  auto summary = [](const metrics::Summary& s) { return nlohmann::json{{"mean", s.mean}, {"std", s.stddev}}; };
  j["precision"] = summary(precision);
  j["recall"] = summary(recall);
  j["f1"] = summary(f1);
  j["auc"] = summary(auc);
  j["balance_seconds"] = summary(balance_seconds);
  j["trials"] = nlohmann::json::array();
  for (const auto& t : trials) {
    j["trials"].push_back({{"seed", t.seed},
                           {"precision", t.precision},
                           {"recall", t.recall},
                           {"f1", t.f1},
                           {"auc", t.auc},
                           {"balance_seconds", t.balance_seconds},
                           {"synthetics", t.synthetics}});
  }
  return j;
}

MetricsReport evaluate(const MethodSpec& method, const Dataset& dataset, const EvalConfig& cfg) {
  if (cfg.trials < 1) throw ConfigError("trials must be >= 1");
  const Dataset ds = canonicalize_binary(dataset);
  MetricsReport report;
  report.method = method.name();
  for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
    TrialResult t;
    t.seed = derive_seed(cfg.seed, trial);
    auto split = stratified_split(ds, cfg.test_fraction, derive_seed(t.seed, 1));
    Dataset train = split.train;
    Dataset test = split.test;
    if (cfg.normalize) {
      auto norm = min_max_normalize(train);
      train = std::move(norm.dataset);
      test = norm.transform.apply(test);
    }
    const auto balanced = apply_method(method, train, derive_seed(t.seed, 2), cfg.workers);
    t.balance_seconds = balanced.seconds;
    t.synthetics = balanced.balanced.n_synthetic();

    nnet::MlpSpec spec = cfg.classifier;
    spec.seed = derive_seed(t.seed, 3);
    const auto model = nnet::train(spec, balanced.balanced.data);
    const Eigen::MatrixXd proba = model.predict_proba(test.features());
    std::vector<int> pred(test.size());
    std::vector<double> score(test.size());
    for (std::size_t i = 0; i < test.size(); ++i) {
      Eigen::Index best = 0;
      proba.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
      pred[i] = static_cast<int>(best);
      score[i] = proba(static_cast<Eigen::Index>(i), kMinority);
    }
    const auto f1 = metrics::f1_macro(test.labels(), pred, ds.num_classes());
    t.precision = f1.precision_macro;
    t.recall = f1.recall_macro;
    t.f1 = f1.f1_macro;
    t.auc = metrics::roc_auc(test.labels(), score, kMinority);
    report.trials.push_back(t);
  }
  auto column = [&](auto field) {
    std::vector<double> v;
    for (const auto& t : report.trials) v.push_back(t.*field);
    return metrics::summarize(v);
  };
  report.precision = column(&TrialResult::precision);
  report.recall = column(&TrialResult::recall);
  report.f1 = column(&TrialResult::f1);
  report.auc = column(&TrialResult::auc);
  report.balance_seconds = column(&TrialResult::balance_seconds);
  return report;
}

namespace {

nlohmann::json wilcoxon_json(const metrics::WilcoxonResult& w) {
  return {{"statistic", w.statistic},     {"n_effective", w.n_effective},
          {"p_value", w.p_value},         {"significant_at_0_05", w.significant_at_0_05},
          {"unreliable", w.unreliable},   {"exact", w.exact}};
}

std::vector<std::vector<metrics::WilcoxonResult>> pairwise(const std::vector<std::vector<double>>& table,
                                                           std::size_t methods) {
  std::vector<std::vector<metrics::WilcoxonResult>> out(methods, std::vector<metrics::WilcoxonResult>(methods));
  for (std::size_t a = 0; a < methods; ++a)
    for (std::size_t b = 0; b < methods; ++b) {
      if (a == b) continue;
      std::vector<double> xa, xb;
      for (const auto& row : table) {
        xa.push_back(row[a]);
        xb.push_back(row[b]);
      }
      out[a][b] = metrics::wilcoxon_signed_rank(xa, xb);
    }
  return out;
}

}  // namespace

void summarize_tables(BenchmarkReport& report, const std::vector<std::vector<double>>& f1,
                      const std::vector<std::vector<double>>& auc) {
  const std::size_t methods = report.methods.size();
  report.f1_wins = metrics::winning_times(f1);
  report.auc_wins = metrics::winning_times(auc);
  report.f1_wins.resize(methods, 0);
  report.auc_wins.resize(methods, 0);
  report.f1_wilcoxon = pairwise(f1, methods);
  report.auc_wilcoxon = pairwise(auc, methods);
}

nlohmann::json BenchmarkReport::to_json() const {
  nlohmann::json j;
  j["datasets"] = datasets;
  j["methods"] = methods;
  j["results"] = nlohmann::json::object();
  nlohmann::json f1_table = nlohmann::json::object(), auc_table = nlohmann::json::object(),
                 time_table = nlohmann::json::object();
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    for (std::size_t m = 0; m < methods.size() && d < results.size(); ++m) {
      const auto& r = results[d][m];
      j["results"][datasets[d]][methods[m]] = r.to_json();
      f1_table[datasets[d]][methods[m]] = r.f1.mean;
      auc_table[datasets[d]][methods[m]] = r.auc.mean;
      time_table[datasets[d]][methods[m]] = r.balance_seconds.mean;
    }
  }
  j["f1_table"] = f1_table;
  j["auc_table"] = auc_table;
  j["processing_time_seconds"] = time_table;
  for (std::size_t m = 0; m < methods.size(); ++m) {
    j["winning_times"]["f1"][methods[m]] = f1_wins[m];
    j["winning_times"]["auc"][methods[m]] = auc_wins[m];
  }
  for (std::size_t a = 0; a < methods.size(); ++a)
    for (std::size_t b = 0; b < methods.size(); ++b) {
      if (a == b) continue;
      j["wilcoxon"]["f1"][methods[a]][methods[b]] = wilcoxon_json(f1_wilcoxon[a][b]);
      j["wilcoxon"]["auc"][methods[a]][methods[b]] = wilcoxon_json(auc_wilcoxon[a][b]);
    }
  return j;
}

BenchmarkReport benchmark(const std::vector<NamedDataset>& datasets,
                          const std::vector<MethodSpec>& methods, const EvalConfig& cfg) {
  if (datasets.empty() || methods.empty()) throw ConfigError("benchmark needs datasets and methods");
  BenchmarkReport report;
  for (const auto& m : methods) report.methods.push_back(m.name());
  std::vector<std::vector<double>> f1, auc;
  for (std::size_t d = 0; d < datasets.size(); ++d) {
    report.datasets.push_back(datasets[d].name);
    EvalConfig dcfg = cfg;
    dcfg.seed = derive_seed(cfg.seed, d);
    std::vector<MetricsReport> row;
    std::vector<double> f1_row, auc_row;
    for (const auto& m : methods) {
      row.push_back(evaluate(m, datasets[d].data, dcfg));
      f1_row.push_back(row.back().f1.mean);
      auc_row.push_back(row.back().auc.mean);
    }
    report.results.push_back(std::move(row));
    f1.push_back(std::move(f1_row));
    auc.push_back(std::move(auc_row));
  }
  summarize_tables(report, f1, auc);
  return report;
}

SweepParam parse_sweep_param(const std::string& name) {
  if (name == "alpha") return SweepParam::Alpha;
  if (name == "ip" || name == "IP" || name == "informative_portion") return SweepParam::InformativePortion;
  throw ConfigError(fmt::format("unknown sweep parameter '{}'", name));
}

std::vector<double> parse_values(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError(fmt::format("bad number '{}' in '{}'", s, text));
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw ConfigError(fmt::format("range '{}' must be start:stop:step", text));
    const double a = number(parts[0]), b = number(parts[1]), step = number(parts[2]);
    if (!(step > 0.0) || b < a) throw ConfigError(fmt::format("empty range '{}'", text));
    const auto n = static_cast<std::size_t>(std::floor((b - a) / step + 1e-9));
    // Snap to 12 decimals so 0.2:1.0:0.2 ends at exactly 1.
    for (std::size_t i = 0; i <= n; ++i)
      out.push_back(std::round((a + static_cast<double>(i) * step) * 1e12) / 1e12);
  } else {
    std::stringstream ss(text);
    for (std::string p; std::getline(ss, p, ',');) out.push_back(number(p));
  }
  if (out.empty()) throw ConfigError("no sweep values");
  return out;
}

std::vector<SweepRow> sweep(const NamedDataset& dataset, SweepParam param,
                            const std::vector<double>& values, const MethodSpec& base,
                            const EvalConfig& cfg) {
  std::vector<SweepRow> rows;
  for (double v : values) {
    MethodSpec m = base;
    m.kind = MethodKind::Simpor;
    if (param == SweepParam::Alpha) m.simpor.alpha = v;
    else m.simpor.active.informative_portion = v;
    const auto r = evaluate(m, dataset.data, cfg);
    rows.push_back({dataset.name, v, r.f1, r.auc});
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows, SweepParam param) {
  std::string out = fmt::format("dataset,{},f1_mean,f1_std,auc_mean,auc_std\n",
                                param == SweepParam::Alpha ? "alpha" : "ip");
  for (const auto& r : rows) {
    out += fmt::format("{},{},{},{},{},{}\n", r.dataset, format_double(r.value), format_double(r.f1.mean),
                       format_double(r.f1.stddev), format_double(r.auc.mean), format_double(r.auc.stddev));
  }
  return out;
}

}  // namespace simpor::eval
