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

#include "simpor/balance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>
#include "json.hpp"

#include "simpor/neighbors.hpp"
#include "simpor/parallel.hpp"

namespace simpor {

void SimporConfig::validate() const {
  if (k_neighbors < 1) throw ConfigError("k_neighbors must be >= 1");
  if (!(alpha > 0.0 && alpha <= 1.0)) throw ConfigError(fmt::format("alpha {} outside (0,1]", alpha));
  if (rejection_limit < 1) throw ConfigError("rejection_limit must be >= 1");
  active.validate();
  ascent.validate();
}

double knn_range(const Dataset& ds, std::size_t index, std::size_t k, NeighborScope scope) {
  const auto& pool = scope == NeighborScope::MinorityOnly
                         ? ds.class_indices(ds.label(index))
                         : std::vector<std::size_t>{};
  const std::size_t available = scope == NeighborScope::MinorityOnly ? pool.size() - 1 : ds.size() - 1;
  if (k > available)
    throw ConfigError(fmt::format("k={} exceeds the {} available neighbors", k, available));
  const auto nn = nearest_neighbors(ds.features(), index, k, pool);
  double sum = 0.0;
  for (const auto& n : nn) sum += n.distance;
  return sum / static_cast<double>(k);
}

RadiusDraw sample_radius(double range, double alpha, Rng& rng) {
  if (range < 0.0 || !std::isfinite(range)) throw ConfigError("range R must be finite and >= 0");
  if (range == 0.0) return {1e-9, true};
  const double sigma = alpha * range;
  std::normal_distribution<double> gauss(0.0, sigma);
  while (true) {
    const double r = std::abs(gauss(rng));
    if (r > 0.0 && r <= 4.0 * sigma) return {r, false};
  }
}

RejectDecision reject_candidate(const Dataset& ds, std::size_t index, std::size_t k) {
  if (k > ds.size() - 1) throw ConfigError(fmt::format("k={} exceeds N-1={}", k, ds.size() - 1));
  RejectDecision d;
  d.histogram.assign(ds.num_classes(), 0);
  for (const auto& n : nearest_neighbors(ds.features(), index, k)) ++d.histogram[static_cast<std::size_t>(ds.label(n.index))];
  const auto own = static_cast<long>(d.histogram[static_cast<std::size_t>(ds.label(index))]);
  long worst = std::numeric_limits<long>::min();
  for (std::size_t c = 0; c < d.histogram.size(); ++c)
    if (static_cast<int>(c) != ds.label(index)) worst = std::max(worst, static_cast<long>(d.histogram[c]));
  d.excess = worst - own;
  d.accept = d.excess <= 0;
  return d;
}

std::string BalanceReport::to_json() const {
  return nlohmann::json{
      {"n_majority", n_majority},
      {"n_minority", n_minority},
      {"informative_size", informative_size},
      {"informative_majority", informative_majority},
      {"informative_minority", informative_minority},
      {"informative_degenerate", informative_degenerate},
      {"phase1_synthetics", phase1_synthetics},
      {"phase2_synthetics", phase2_synthetics},
      {"phase2_used_all_minority", phase2_used_all_minority},
      {"rejections", rejections},
      {"rejection_fallbacks", rejection_fallbacks},
      {"zero_range_parents", zero_range_parents},
      {"unconverged", unconverged},
      {"active_seconds", active_seconds},
      {"synthesis_seconds", synthesis_seconds},
      {"total_seconds", total_seconds},
  }
      .dump(2);
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct ParentInfo {
  double range = 0.0;
  bool accept = true;
  long excess = 0;
};

struct WorkItem {
  std::size_t parent;
  double radius;
  std::uint64_t seed;
  Region region;
};

}  // namespace

SimporResult balance(const Dataset& train, const SimporConfig& cfg) {
  cfg.validate();
  const auto t_start = Clock::now();
  const Dataset ds = canonicalize_binary(train);
  SimporResult out;
  BalanceReport& rep = out.report;
  rep.n_majority = ds.count(kMajority);
  rep.n_minority = ds.count(kMinority);
  const std::size_t deficit = rep.n_majority - rep.n_minority;
  if (deficit == 0) {
    out.balanced = append_synthetic(ds, Matrix(0, static_cast<Eigen::Index>(ds.dim())), kMinority, {});
    rep.total_seconds = seconds_since(t_start);
    return out;
  }
  if (cfg.k_neighbors > ds.size() - 1)
    throw ConfigError(fmt::format("k={} exceeds N-1={}", cfg.k_neighbors, ds.size() - 1));
  if (cfg.range_scope == NeighborScope::MinorityOnly && cfg.k_neighbors > rep.n_minority - 1)
    throw ConfigError("k exceeds the number of other minority samples");

  // Informative region.
  const auto t_active = Clock::now();
  active::ActiveConfig acfg = cfg.active;
  acfg.seed = derive_seed(cfg.seed, 0xa1);
  acfg.workers = cfg.workers;
  const auto informative = active::select_informative(ds, acfg);
  rep.active_seconds = seconds_since(t_active);
  out.informative = informative.indices;
  rep.informative_size = informative.indices.size();
  rep.informative_degenerate = informative.degenerate;
  std::vector<char> in_s(ds.size(), 0);
  for (std::size_t i : informative.indices) in_s[i] = 1;

  std::vector<std::size_t> minority_s, minority_rest;
  for (std::size_t i = 0; i < ds.size(); ++i) {
    if (ds.label(i) == kMinority) (in_s[i] ? minority_s : minority_rest).push_back(i);
    else if (in_s[i]) ++rep.informative_majority;
  }
  rep.informative_minority = minority_s.size();

  // Neighborhood facts for every minority sample.
  const auto& minority = ds.class_indices(kMinority);
  std::vector<ParentInfo> info(ds.size());
  parallel_for(minority.size(), cfg.workers, [&](std::size_t m) {
    const std::size_t i = minority[m];
    const auto decision = reject_candidate(ds, i, cfg.k_neighbors);
    info[i] = {knn_range(ds, i, cfg.k_neighbors, cfg.range_scope), decision.accept, decision.excess};
  });

  // Work list, drawn serially from the master stream.
  Rng rng(derive_seed(cfg.seed, 0xb2));
  std::vector<WorkItem> work;
  work.reserve(deficit);
  auto draw_parent = [&](const std::vector<std::size_t>& pool) {
    std::size_t best = pool[uniform_index(rng, pool.size())];
    if (info[best].accept) return best;
    ++rep.rejections;
    for (std::size_t attempt = 1; attempt < cfg.rejection_limit; ++attempt) {
      const std::size_t i = pool[uniform_index(rng, pool.size())];
      if (info[i].accept) return i;
      ++rep.rejections;
      if (info[i].excess < info[best].excess) best = i;
    }
    ++rep.rejection_fallbacks;
    return best;
  };
  auto plan = [&](const std::vector<std::size_t>& pool, std::size_t count, Region region) {
    for (std::size_t t = 0; t < count; ++t) {
      const std::size_t parent = draw_parent(pool);
      const RadiusDraw radius = sample_radius(info[parent].range, cfg.alpha, rng);
      if (radius.degenerate) ++rep.zero_range_parents;
      work.push_back({parent, radius.r, derive_seed(cfg.seed, parent, work.size()), region});
    }
  };

  const std::size_t s_gap = rep.informative_majority > rep.informative_minority
                                ? rep.informative_majority - rep.informative_minority
                                : 0;
  rep.phase1_synthetics = minority_s.empty() ? 0 : std::min(deficit, s_gap);
  rep.phase2_synthetics = deficit - rep.phase1_synthetics;
  plan(minority_s, rep.phase1_synthetics, Region::Informative);
  if (rep.phase2_synthetics > 0) {
    if (minority_rest.empty()) {
      rep.phase2_used_all_minority = true;
      plan(minority, rep.phase2_synthetics, Region::Remaining);
    } else {
      plan(minority_rest, rep.phase2_synthetics, Region::Remaining);
    }
  }

  // Independent maximizations, committed in work-list order.
  const auto t_synth = Clock::now();
  const auto objective = density::PosteriorRatioObjective::from_dataset(ds, cfg.bandwidth);
  out.synthetics.resize(work.size());
  parallel_for(work.size(), cfg.workers, [&](std::size_t t) {
    const WorkItem& w = work[t];
    sphere::SphereAscentConfig scfg = cfg.ascent;
    scfg.seed = w.seed;
    const Vector center = ds.row(w.parent).transpose();
    const auto res = sphere::maximize_on_sphere(objective, center, w.radius, scfg);
    out.synthetics[t] = {res.x_star, kMinority, w.parent, w.radius, res.f_log, res.f_init, w.region, res.converged};
  });
  rep.synthesis_seconds = seconds_since(t_synth);

  Matrix synth(static_cast<Eigen::Index>(work.size()), static_cast<Eigen::Index>(ds.dim()));
  std::vector<std::size_t> parents;
  parents.reserve(work.size());
  for (std::size_t t = 0; t < work.size(); ++t) {
    synth.row(static_cast<Eigen::Index>(t)) = out.synthetics[t].features.transpose();
    parents.push_back(out.synthetics[t].parent_index);
    if (!out.synthetics[t].converged) ++rep.unconverged;
  }
  out.balanced = append_synthetic(ds, synth, kMinority, std::move(parents));
  rep.total_seconds = seconds_since(t_start);
  return out;
}

}  // namespace simpor
