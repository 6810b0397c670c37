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

#include <span>
#include <utility>
#include <vector>

#include "gemsim/modes/analysis.hpp"

namespace gemsim::harness {

using modes::smooth_three_point;

/// y = A exp(-t / tau) fitted as a straight line to log y.
struct ExponentialFit {
  double amplitude = 0;
  double tau = 0;  // same unit as t; infinite for a flat series
  std::vector<double> residuals;  // log y - fitted log y
  double residual_rms = 0;
  /// Quadratic coefficient of a second-order fit to log y, with its t-statistic.
  double curvature = 0;
  double curvature_t = 0;
  /// Residuals show systematic (super- or sub-exponential) curvature.
  bool curvature_flagged = false;
};

/// Needs >= 3 points with distinct times; throws ConfigError for non-positive y.
ExponentialFit fit_exponential_decay(std::span<const std::pair<double, double>> series);

struct LinearFit {
  double intercept = 0;
  double slope = 0;
  double slope_stderr = 0;
  double r_squared = 0;
  double residual_rms = 0;
};

/// Ordinary least squares y = a + b t; >= 2 points with distinct times.
LinearFit fit_linear(std::span<const std::pair<double, double>> series);

}  // namespace gemsim::harness
