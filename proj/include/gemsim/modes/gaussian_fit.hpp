// Copyright 2026 The gemsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <string>

#include "gemsim/core/field.hpp"

namespace gemsim::modes {

/// Elliptical Gaussian plus constant offset fitted to an intensity map.
struct GaussianFit {
  double amplitude = 0;
  double centroid_x = 0;
  double centroid_y = 0;
  double var_x = 0;  // covariance along the grid axes, m^2
  double var_y = 0;
  double cov_xy = 0;
  double var_major = 0;  // principal variances, major first
  double var_minor = 0;
  double angle = 0;  // rotation of the major axis from +x, radians
  double offset = 0;
  double residual_norm = 0;      // sum |I - model| dx dy
  double relative_residual = 0;  // residual_norm / sum I dx dy
  int iterations = 0;
  bool converged = false;
  std::string diagnostic;  // set when not converged

  double mean_var() const noexcept { return 0.5 * (var_x + var_y); }
};

struct FitOptions {
  int max_iterations = 200;
  double step_tolerance = 1e-10;
};

/// Damped (Levenberg-Marquardt) least squares seeded from intensity moments.
/// Needs at least one strictly positive sample (ConfigError otherwise). On
/// hitting the iteration cap the moment-based estimate is returned with
/// converged = false and a diagnostic.
GaussianFit fit_gaussian_2d(const Intensity& intensity, const FitOptions& options = {});

}  // namespace gemsim::modes
