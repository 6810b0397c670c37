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
#include <vector>

#include "gemsim/core/error.hpp"
#include "gemsim/core/field.hpp"

namespace gemsim::modes {

/// First and second moments of an intensity distribution.
struct BeamStats {
  double centroid_x = 0;
  double centroid_y = 0;
  double var_x = 0;  // m^2
  double var_y = 0;
  double cov_xy = 0;
  double power = 0;  // sum I dx dy

  double mean_var() const noexcept { return 0.5 * (var_x + var_y); }
};

/// Moments of |E|^2 treated as a probability density. Throws ConfigError for
/// zero power.
BeamStats intensity_moments(const TransverseField& field);
BeamStats intensity_moments(const Intensity& intensity);

/// Thrown when the central-row cut does not show three peaks.
struct PeakDetectionError : NumericalError {
  using NumericalError::NumericalError;
};

/// Three-point centred moving mean; endpoints average the available neighbours.
std::vector<double> smooth_three_point(std::span<const double> series);

/// Intensity along the row through the y-centroid, linearly interpolated
/// between the two nearest rows.
std::vector<double> centroid_row_cut(const Intensity& intensity);

/// Central-peak height over the mean of the two outer peaks, measured on the
/// smoothed centroid-row cut with parabolic refinement of each maximum.
double tem20_peak_ratio(const Intensity& intensity);

}  // namespace gemsim::modes
