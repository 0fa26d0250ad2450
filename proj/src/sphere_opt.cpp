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

#include "simpor/sphere_opt.hpp"

#include <cmath>
#include <random>

#include <fmt/format.h>

namespace simpor::sphere {

SphereAscentConfig SphereAscentConfig::literal_rate_preset() {
  SphereAscentConfig c;
  c.step_angle = 1e-5;
  c.max_halvings = 0;
  return c;
}

void SphereAscentConfig::validate() const {
  if (!(step_angle > 0.0)) throw ConfigError("step angle must be positive");
  if (max_iters < 1) throw ConfigError("max_iters must be >= 1");
  if (!(improvement_tol >= 0.0)) throw ConfigError("improvement tolerance must be >= 0");
}

Vector tangent_project(const Vector& g, const Vector& u) { return g - g.dot(u) * u; }

Vector geodesic_step(const Vector& center, const Vector& x_t, const Vector& direction, double r,
                     double angle) {
  return center + (x_t - center) * std::cos(angle) + r * direction * std::sin(angle);
}

Vector random_point_on_sphere(const Vector& center, double r, Rng& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vector u(center.size());
  do {
    for (Eigen::Index i = 0; i < u.size(); ++i) u[i] = gauss(rng);
  } while (u.norm() == 0.0);
  return center + r * u.normalized();
}

namespace {

// Pulls x back onto the sphere to stop rounding drift from accumulating.
Vector reproject(const Vector& center, const Vector& x, double r) {
  return center + r * (x - center).normalized();
}

constexpr int kInitAttempts = 16;

}  // namespace

AscentResult maximize_on_sphere(const density::PosteriorRatioObjective& obj, const Vector& center,
                                double r, const SphereAscentConfig& cfg) {
  cfg.validate();
  if (!(r > 0.0)) throw ConfigError("sphere radius must be positive");
  if (static_cast<std::size_t>(center.size()) != obj.dim())
    throw DataError(fmt::format("center has dimension {}, objective {}", center.size(), obj.dim()));

  Rng rng(cfg.seed);
  AscentResult res;

  if (center.size() == 1) {
    Vector lo = center, hi = center;
    lo[0] -= r;
    hi[0] += r;
    res.x_init = uniform01(rng) < 0.5 ? lo : hi;
    res.f_init = obj.log_ratio(res.x_init);
    const double f_lo = obj.log_ratio(lo);
    const double f_hi = obj.log_ratio(hi);
    if (!std::isfinite(f_lo) && !std::isfinite(f_hi))
      throw NumericalError("objective is non-finite at both points of the 1-d sphere");
    const bool pick_hi = !std::isfinite(f_lo) || (std::isfinite(f_hi) && f_hi > f_lo);
    res.x_star = pick_hi ? hi : lo;
    res.f_log = pick_hi ? f_hi : f_lo;
    res.trace = {res.f_init};
    if (res.f_log > res.f_init) res.trace.push_back(res.f_log);
    res.iters = 1;
    res.converged = true;
    return res;
  }

  Vector x;
  double f = std::nan("");
  for (int attempt = 0; attempt < kInitAttempts && !std::isfinite(f); ++attempt) {
    x = random_point_on_sphere(center, r, rng);
    f = obj.log_ratio(x);
  }
  if (!std::isfinite(f)) throw NumericalError("objective is non-finite at every probed sphere point");
  res.x_init = x;
  res.f_init = f;
  res.trace.push_back(f);

  Vector grad;
  while (res.iters < cfg.max_iters) {
    obj.log_ratio_and_gradient(x, grad);
    const Vector u = (x - center) / r;
    const Vector p = tangent_project(grad, u);
    const double p_norm = p.norm();
    if (!(p_norm > 1e-14 * std::max(1.0, grad.norm()))) {
      res.converged = true;
      break;
    }
    const Vector direction = p / p_norm;
    ++res.iters;

    double angle = cfg.step_angle;
    bool accepted = false;
    for (std::size_t h = 0; h <= cfg.max_halvings; ++h, angle *= 0.5) {
      const Vector candidate = reproject(center, geodesic_step(center, x, direction, r, angle), r);
      const double fc = obj.log_ratio(candidate);
      if (std::isfinite(fc) && fc > f) {
        const double gain = fc - f;
        x = candidate;
        f = fc;
        res.trace.push_back(f);
        accepted = true;
        if (gain < cfg.improvement_tol) res.converged = true;
        break;
      }
    }
    if (!accepted) res.converged = true;
    if (res.converged) break;
  }
  res.x_star = x;
  res.f_log = f;
  return res;
}

}  // namespace simpor::sphere
