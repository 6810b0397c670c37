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

namespace gemsim::transport {

/// Fraction of TEM-00 power left after diffusion: W0^2 / (4 D t + W0^2).
double power_retention_tem00(double waist, double diffusion, double time);

struct DiffusionFit {
  double diffusion = 0;  // slope of sigma^2 against t, m^2/s
  double intercept = 0;  // m^2
  double slope_stderr = 0;
  double r_squared = 0;
  double residual_rms = 0;
  int points = 0;
};

/// Ordinary least-squares slope of intensity variance against time. With the
/// intensity-variance convention (sigma^2 = W^2/4 + D t) the slope is D itself.
/// Needs >= 3 points and at least two distinct times (ConfigError).
DiffusionFit infer_diffusion_coefficient(std::span<const std::pair<double, double>> series);

/// Maxwell-Boltzmann mean speed sqrt(8 kB T / (pi m)).
double mean_thermal_speed(double temperature, double mass);

/// D = vbar^2 / (3 gamma_coll).
double kinetic_diffusion_coefficient(double temperature, double mass, double collision_rate);

/// Amplitude damping exp(-D eta^2 tau^3 / 3) from longitudinal diffusion of a
/// spin wave whose wavenumber grows as eta t under the gradient.
double longitudinal_decay_factor(double diffusion, double gradient, double tau);

}  // namespace gemsim::transport
