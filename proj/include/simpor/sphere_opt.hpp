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
#include <vector>

#include "simpor/common.hpp"
#include "simpor/density.hpp"

namespace simpor::sphere {

struct SphereAscentConfig {
  // Initial geodesic step angle in radians, halved on backtracking.
  double step_angle = 0.05;
  std::size_t max_iters = 300;
  // Stop once an accepted step improves log f by less than this.
  double improvement_tol = 1e-8;
  std::size_t max_halvings = 20;
  std::uint64_t seed = 0;

  // Fixed tiny rotation per step, as a literal gradient rate of 1e-5.
  static SphereAscentConfig literal_rate_preset();
  void validate() const;
};

struct AscentResult {
  Vector x_star;
  double f_log = 0.0;
  // Starting point and its value.
  Vector x_init;
  double f_init = 0.0;
  std::size_t iters = 0;
  bool converged = false;
  // Accepted objective values, starting with f_init.
  std::vector<double> trace;
};

// Removes the component of g along the unit vector u.
Vector tangent_project(const Vector& g, const Vector& u);

// Rotates x_t about `center` by `angle` toward the unit tangent `direction`
// while staying on the sphere of radius r.
Vector geodesic_step(const Vector& center, const Vector& x_t, const Vector& direction, double r,
                     double angle);

// Uniformly random point on the sphere of radius r around center.
Vector random_point_on_sphere(const Vector& center, double r, Rng& rng);

// Projected gradient ascent of log f on the sphere |x - center| = r. Starts
// from a seeded random point and returns the best iterate visited. In one
// dimension the sphere is {center - r, center + r} and both are evaluated.
// Throws NumericalError if the objective is non-finite at every probed point.
AscentResult maximize_on_sphere(const density::PosteriorRatioObjective& obj, const Vector& center,
                                double r, const SphereAscentConfig& cfg);

}  // namespace simpor::sphere
