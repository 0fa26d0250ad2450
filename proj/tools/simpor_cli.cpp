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

// simpor command-line front end. Every command is a pure function of its
// inputs, flags and seed; outputs are never overwritten without --overwrite.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"

#include "simpor/evaluate.hpp"
#include "simpor/parallel.hpp"
#include "simpor/reduce.hpp"

namespace fs = std::filesystem;
using namespace simpor;

namespace {

enum ExitCode { kOk = 0, kUsage = 2, kData = 3, kNumerical = 4 };

struct Common {
  std::uint64_t seed = 0;
  std::size_t workers = default_workers();
  bool overwrite = false;
};

struct InputOptions {
  std::vector<std::string> paths;
  std::string label_column;
  std::vector<std::string> ignore{"synthetic"};
};

struct SimporOptions {
  std::size_t k = 5;
  double alpha = 0.6;
  double ip = 0.3;
  std::size_t batch = 20;
  std::size_t initial = 3;
  double step_angle = 0.05;
  std::size_t max_iters = 300;
  double tol = 1e-8;
  std::size_t rejection_limit = 50;
  std::string bandwidth = "per_class";
  std::string range_scope = "all";
};

struct ClassifierOptions {
  std::size_t trials = 5;
  double test_fraction = 0.2;
  bool no_normalize = false;
  std::vector<std::size_t> hidden{100, 100, 100};
  std::size_t epochs = 200;
  std::size_t batch = 32;
  double lr = 0.1;
};

void add_common(CLI::App* app, Common& c) {
  app->add_option("--seed", c.seed, "Master seed")->capture_default_str();
  app->add_option("--workers", c.workers, "Worker threads (default from SIMPOR_WORKERS)")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app->add_flag("--overwrite", c.overwrite, "Replace existing output files");
}

void add_input(CLI::App* app, InputOptions& in, bool many) {
  auto* opt = app->add_option("-i,--input", in.paths, "Input CSV")->required()->check(CLI::ExistingFile);
  if (!many) opt->expected(1);
  app->add_option("--label-column", in.label_column, "Label column name or index (default: last)");
  app->add_option("--ignore-column", in.ignore, "Columns to skip")->capture_default_str();
}

void add_simpor(CLI::App* app, SimporOptions& s) {
  app->add_option("--k", s.k, "Neighbors for range, rejection and baselines")->capture_default_str();
  app->add_option("--alpha", s.alpha, "Radius spread")->capture_default_str();
  app->add_option("--ip", s.ip, "Informative portion")->capture_default_str();
  app->add_option("--al-batch", s.batch, "Active-learning batch size")->capture_default_str();
  app->add_option("--al-initial", s.initial, "Seed samples per class")->capture_default_str();
  app->add_option("--step-angle", s.step_angle, "Initial geodesic step (radians)")->capture_default_str();
  app->add_option("--max-iters", s.max_iters, "Ascent iteration cap")->capture_default_str();
  app->add_option("--tol", s.tol, "Ascent improvement tolerance")->capture_default_str();
  app->add_option("--rejection-limit", s.rejection_limit, "Consecutive rejections before fallback")
      ->capture_default_str();
  app->add_option("--bandwidth", s.bandwidth, "per_class or shared")
      ->capture_default_str()
      ->check(CLI::IsMember({"per_class", "shared"}));
  app->add_option("--range-scope", s.range_scope, "all or minority")
      ->capture_default_str()
      ->check(CLI::IsMember({"all", "minority"}));
}

void add_classifier(CLI::App* app, ClassifierOptions& c) {
  app->add_option("--trials", c.trials, "Repeated holdout trials")->capture_default_str();
  app->add_option("--test-fraction", c.test_fraction, "Holdout fraction")->capture_default_str();
  app->add_flag("--no-normalize", c.no_normalize, "Skip min-max scaling");
  app->add_option("--hidden", c.hidden, "Hidden layer widths")->capture_default_str()->delimiter(',');
  app->add_option("--epochs", c.epochs, "Training epochs")->capture_default_str();
  app->add_option("--batch-size", c.batch, "Minibatch size")->capture_default_str();
  app->add_option("--lr", c.lr, "Adam learning rate")->capture_default_str();
}

eval::MethodSpec method_spec(const std::string& name, const SimporOptions& s) {
  eval::MethodSpec m;
  m.kind = eval::parse_method(name);
  m.k_neighbors = s.k;
  auto& c = m.simpor;
  c.k_neighbors = s.k;
  c.alpha = s.alpha;
  c.active.informative_portion = s.ip;
  c.active.batch_size = s.batch;
  c.active.initial_per_class = s.initial;
  c.ascent.step_angle = s.step_angle;
  c.ascent.max_iters = s.max_iters;
  c.ascent.improvement_tol = s.tol;
  c.rejection_limit = s.rejection_limit;
  c.bandwidth = s.bandwidth == "shared" ? density::BandwidthMode::Shared : density::BandwidthMode::PerClass;
  c.range_scope = s.range_scope == "minority" ? NeighborScope::MinorityOnly : NeighborScope::AllClasses;
  c.validate();
  return m;
}

eval::EvalConfig eval_config(const ClassifierOptions& o, const Common& c) {
  eval::EvalConfig e;
  e.trials = o.trials;
  e.test_fraction = o.test_fraction;
  e.normalize = !o.no_normalize;
  e.classifier.hidden = o.hidden;
  e.classifier.max_epochs = o.epochs;
  e.classifier.batch_size = o.batch;
  e.classifier.learning_rate = o.lr;
  e.classifier.validate();
  e.seed = c.seed;
  e.workers = c.workers;
  return e;
}

Dataset load(const std::string& path, const InputOptions& in) {
  const auto r = load_csv(path, {in.label_column, in.ignore});
  if (r.rows_dropped > 0)
    std::cerr << fmt::format("{}: dropped {} of {} rows\n", path, r.rows_dropped, r.rows_read);
  return r.dataset;
}

std::string stem(const std::string& path) { return fs::path(path).stem().string(); }

void check_writable(const std::string& path, bool overwrite) {
  if (path.empty() || path == "-") return;
  if (fs::exists(path) && !overwrite)
    throw ConfigError(fmt::format("{} exists; pass --overwrite to replace it", path));
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  if (path == "-") {
    std::cout << text;
    return;
  }
  if (const auto dir = fs::path(path).parent_path(); !dir.empty()) fs::create_directories(dir);
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw DataError(fmt::format("write to {} failed", path));
}

// Effective settings of a subcommand as key -> value text.
nlohmann::json effective_config(const CLI::App* app) {
  nlohmann::json j = nlohmann::json::object();
  std::istringstream lines(app->config_to_str(true, false));
  for (std::string line; std::getline(lines, line);) {
    const auto eq = line.find('=');
    if (eq == std::string::npos || line.starts_with('[') || line.starts_with('#')) continue;
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t"));
      s.erase(s.find_last_not_of(" \t") + 1);
      return s;
    };
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    j[trim(line.substr(0, eq))] = value;
  }
  return j;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string p; std::getline(ss, p, ',');)
    if (!p.empty()) out.push_back(p);
  return out;
}

// "dataset,method_a,method_b" header, one dataset per row.
struct ScoreTable {
  std::vector<std::string> methods;
  std::vector<std::string> datasets;
  std::vector<std::vector<double>> values;
};

ScoreTable read_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError(fmt::format("cannot open {}", path));
  ScoreTable t;
  std::string line;
  if (!std::getline(in, line)) throw DataError(fmt::format("{} is empty", path));
  auto header = split_list(line);
  if (header.size() < 2) throw DataError(fmt::format("{} needs a dataset column and methods", path));
  t.methods.assign(header.begin() + 1, header.end());
  for (std::size_t row = 2; std::getline(in, line); ++row) {
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ss(line);
    for (std::string c; std::getline(ss, c, ',');) cells.push_back(c);
    if (cells.size() != header.size())
      throw DataError(fmt::format("{}:{}: expected {} cells", path, row, header.size()));
    t.datasets.push_back(cells[0]);
    std::vector<double> v;
    for (std::size_t i = 1; i < cells.size(); ++i) {
      try {
        v.push_back(std::stod(cells[i]));
      } catch (const std::exception&) {
        throw DataError(fmt::format("{}:{}: bad score '{}'", path, row, cells[i]));
      }
    }
    t.values.push_back(std::move(v));
  }
  return t;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SIMPOR oversampling and evaluation"};
  app.set_config("--config", "", "key=value file; [command] sections or command.key=value");
  app.require_subcommand(1);

  Common common;
  InputOptions input;
  SimporOptions simpor_opts;
  ClassifierOptions clf;
  std::string method = "simpor";
  std::string output, report;

  // moon
  auto* moon = app.add_subcommand("moon", "Generate the imbalanced two-moons dataset");
  std::size_t moon_samples = 3000;
  double moon_ir = 7.0, moon_noise = 0.3;
  moon->add_option("--samples", moon_samples, "Samples before removal")->capture_default_str();
  moon->add_option("--ir", moon_ir, "Imbalance ratio")->capture_default_str();
  moon->add_option("--noise", moon_noise, "Gaussian noise std before scaling")->capture_default_str();
  moon->add_option("-o,--output", output, "Output CSV ('-' for stdout)")->required();
  add_common(moon, common);

  // balance
  auto* bal = app.add_subcommand("balance", "Oversample a training CSV");
  add_input(bal, input, false);
  bal->add_option("-m,--method", method, "simpor, ros, smote, borderline_smote, adasyn, none")
      ->capture_default_str();
  bal->add_option("-o,--output", output, "Balanced CSV")->required();
  bal->add_option("-r,--report", report, "Run report JSON");
  add_simpor(bal, simpor_opts);
  add_common(bal, common);

  // eval
  auto* ev = app.add_subcommand("eval", "Repeated-holdout evaluation of one method");
  add_input(ev, input, false);
  ev->add_option("-m,--method", method, "Balancing method")->capture_default_str();
  ev->add_option("-r,--report", report, "Metrics JSON ('-' for stdout)")->capture_default_str();
  add_simpor(ev, simpor_opts);
  add_classifier(ev, clf);
  add_common(ev, common);

  // benchmark
  auto* bench = app.add_subcommand("benchmark", "Methods x datasets with winning times and Wilcoxon tests");
  std::string methods_list = "simpor,smote,borderline_smote,adasyn,ros";
  std::string f1_table, auc_table;
  bench->add_option("-i,--input", input.paths, "Input CSVs")->check(CLI::ExistingFile);
  bench->add_option("--label-column", input.label_column, "Label column name or index");
  bench->add_option("--ignore-column", input.ignore, "Columns to skip")->capture_default_str();
  bench->add_option("--methods", methods_list, "Comma-separated methods")->capture_default_str();
  bench->add_option("--f1-table", f1_table, "Precomputed F1 table CSV instead of running")
      ->check(CLI::ExistingFile);
  bench->add_option("--auc-table", auc_table, "Precomputed AUC table CSV")->check(CLI::ExistingFile);
  bench->add_option("-r,--report", report, "Benchmark JSON ('-' for stdout)")->capture_default_str();
  add_simpor(bench, simpor_opts);
  add_classifier(bench, clf);
  add_common(bench, common);

  // project
  auto* proj = app.add_subcommand("project", "PCA projection and hard-to-differentiate ratio");
  std::size_t components = 1, bins = 20;
  add_input(proj, input, false);
  std::string proj_method = "none";
  proj->add_option("-m,--method", proj_method, "Balance first with this method")->capture_default_str();
  proj->add_option("--components", components, "1 or 2")->capture_default_str()->check(CLI::Range(1, 2));
  proj->add_option("--bins", bins, "Histogram bins")->capture_default_str();
  proj->add_option("-o,--output", output, "Projection CSV");
  proj->add_option("-r,--report", report, "HDR JSON ('-' for stdout)")->capture_default_str();
  add_simpor(proj, simpor_opts);
  add_common(proj, common);

  // sweep
  auto* sw = app.add_subcommand("sweep", "SIMPOR F1/AUC over alpha or informative portion");
  std::string param = "alpha", values = "0.2:1.0:0.2";
  add_input(sw, input, true);
  sw->add_option("--param", param, "alpha or ip")->capture_default_str();
  sw->add_option("--values", values, "start:stop:step or a,b,c")->capture_default_str();
  sw->add_option("-o,--output", output, "Series CSV ('-' for stdout)")->capture_default_str();
  add_simpor(sw, simpor_opts);
  add_classifier(sw, clf);
  add_common(sw, common);

  report = "-";
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (moon->parsed()) {
      check_writable(output, common.overwrite);
      write_text(output, to_csv(make_moon(moon_samples, moon_ir, moon_noise, common.seed)));
    } else if (bal->parsed()) {
      check_writable(output, common.overwrite);
      if (report == "-") report.clear();
      check_writable(report, common.overwrite);
      const auto spec = method_spec(method, simpor_opts);
      const Dataset ds = load(input.paths.front(), input);
      const auto out = eval::apply_method(spec, ds, common.seed, common.workers);
      write_text(output, out.balanced.to_csv());
      nlohmann::json j;
      j["config"] = effective_config(bal);
      j["method"] = spec.name();
      j["input"] = input.paths.front();
      j["n_original"] = out.balanced.n_original;
      j["n_synthetic"] = out.balanced.n_synthetic();
      j["balance_seconds"] = out.seconds;
      j["details"] = out.report;
      write_text(report, j.dump(2) + "\n");
    } else if (ev->parsed()) {
      check_writable(report, common.overwrite);
      const auto spec = method_spec(method, simpor_opts);
      const auto cfg = eval_config(clf, common);
      const Dataset ds = load(input.paths.front(), input);
      auto j = eval::evaluate(spec, ds, cfg).to_json();
      j["config"] = effective_config(ev);
      j["input"] = input.paths.front();
      write_text(report, j.dump(2) + "\n");
    } else if (bench->parsed()) {
      check_writable(report, common.overwrite);
      eval::BenchmarkReport rep;
      if (!f1_table.empty() || !auc_table.empty()) {
        if (f1_table.empty() || auc_table.empty())
          throw ConfigError("--f1-table and --auc-table go together");
        const auto f1 = read_table(f1_table), auc = read_table(auc_table);
        if (f1.methods != auc.methods || f1.datasets != auc.datasets)
          throw DataError("F1 and AUC tables list different methods or datasets");
        rep.methods = f1.methods;
        rep.datasets = f1.datasets;
        eval::summarize_tables(rep, f1.values, auc.values);
        auto j = rep.to_json();
        for (std::size_t d = 0; d < f1.datasets.size(); ++d)
          for (std::size_t m = 0; m < f1.methods.size(); ++m) {
            j["f1_table"][f1.datasets[d]][f1.methods[m]] = f1.values[d][m];
            j["auc_table"][f1.datasets[d]][f1.methods[m]] = auc.values[d][m];
          }
        j["config"] = effective_config(bench);
        write_text(report, j.dump(2) + "\n");
      } else {
        if (input.paths.empty()) throw ConfigError("benchmark needs --input or score tables");
        std::vector<eval::MethodSpec> specs;
        for (const auto& m : split_list(methods_list)) specs.push_back(method_spec(m, simpor_opts));
        if (specs.size() < 2) throw ConfigError("benchmark needs at least two methods");
        const auto cfg = eval_config(clf, common);
        std::vector<eval::NamedDataset> sets;
        for (const auto& p : input.paths) sets.push_back({stem(p), load(p, input)});
        auto j = eval::benchmark(sets, specs, cfg).to_json();
        j["config"] = effective_config(bench);
        write_text(report, j.dump(2) + "\n");
      }
    } else if (proj->parsed()) {
      check_writable(output, common.overwrite);
      check_writable(report, common.overwrite);
      const auto spec = method_spec(proj_method, simpor_opts);
      const Dataset raw = load(input.paths.front(), input);
      const auto out = eval::apply_method(spec, canonicalize_binary(raw), common.seed, common.workers);
      const Dataset& ds = out.balanced.data;
      const auto p = reduce::pca_project(ds, components);
      std::vector<double> first(ds.size());
      for (std::size_t i = 0; i < ds.size(); ++i) first[i] = p.projected(static_cast<Eigen::Index>(i), 0);
      const auto h = reduce::hdr(first, ds.labels(), kMinority, bins);
      if (!output.empty()) {
        std::string csv = components == 2 ? "pc1,pc2,label,synthetic\n" : "pc1,label,synthetic\n";
        for (std::size_t i = 0; i < ds.size(); ++i) {
          const auto r = static_cast<Eigen::Index>(i);
          csv += format_double(p.projected(r, 0)) + ",";
          if (components == 2) csv += format_double(p.projected(r, 1)) + ",";
          csv += ds.class_names()[static_cast<std::size_t>(ds.label(i))] + "," +
                 (i >= out.balanced.n_original ? "1" : "0") + "\n";
        }
        write_text(output, csv);
      }
      nlohmann::json j;
      j["config"] = effective_config(proj);
      j["method"] = spec.name();
      j["explained_variance"] = p.explained_variance;
      j["total_variance"] = p.total_variance;
      j["hdr"] = h.to_json();
      write_text(report, j.dump(2) + "\n");
    } else if (sw->parsed()) {
      check_writable(output, common.overwrite);
      const auto which = eval::parse_sweep_param(param);
      const auto vals = eval::parse_values(values);
      const auto spec = method_spec("simpor", simpor_opts);
      const auto cfg = eval_config(clf, common);
      std::vector<eval::SweepRow> rows;
      for (const auto& p : input.paths) {
        const auto r = eval::sweep({stem(p), load(p, input)}, which, vals, spec, cfg);
        rows.insert(rows.end(), r.begin(), r.end());
      }
      write_text(output, eval::sweep_csv(rows, which));
    }
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kUsage;
  } catch (const DataError& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  } catch (const NumericalError& e) {
    std::cerr << "numerical error: " << e.what() << "\n";
    return kNumerical;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "data error: " << e.what() << "\n";
    return kData;
  }
  return kOk;
}
