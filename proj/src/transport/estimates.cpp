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

#include "gemsim/transport/estimates.hpp"

#include <cmath>
#include <numbers>

#include "gemsim/core/error.hpp"
#include "gemsim/core/units.hpp"

namespace gemsim::transport {

double power_retention_tem00(double waist, double diffusion, double time) {
  if (!(waist > 0.0)) throw ConfigError("power_retention_tem00: waist must be positive");
  const double w2 = waist * waist;
  return w2 / (4.0 * diffusion * time + w2);
}

DiffusionFit infer_diffusion_coefficient(std::span<const std::pair<double, double>> series) {
  const std::size_t n = series.size();
  if (n < 3) throw ConfigError("infer_diffusion_coefficient: need at least 3 points");
  double mt = 0, ms = 0;
  for (const auto& [t, s] : series) {
    mt += t;
    ms += s;
  }
  mt /= n;
  ms /= n;
  double stt = 0, sts = 0, sss = 0;
  for (const auto& [t, s] : series) {
    stt += (t - mt) * (t - mt);
    sts += (t - mt) * (s - ms);
    sss += (s - ms) * (s - ms);
  }
  if (!(stt > 0.0)) throw ConfigError("infer_diffusion_coefficient: all times equal (degenerate design)");

  DiffusionFit fit;
  fit.points = static_cast<int>(n);
  fit.diffusion = sts / stt;
  fit.intercept = ms - fit.diffusion * mt;
  double sse = 0;
  for (const auto& [t, s] : series) {
    const double r = s - (fit.intercept + fit.diffusion * t);
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / n);
  fit.r_squared = sss > 0 ? 1.0 - sse / sss : 1.0;
  fit.slope_stderr = n > 2 ? std::sqrt(sse / (n - 2) / stt) : 0.0;
  return fit;
}

double mean_thermal_speed(double temperature, double mass) {
  if (!(temperature > 0.0) || !(mass > 0.0)) throw ConfigError("mean_thermal_speed: T and m must be positive");
  return std::sqrt(8.0 * constants::boltzmann * temperature / (std::numbers::pi * mass));
}

double kinetic_diffusion_coefficient(double temperature, double mass, double collision_rate) {
  if (!(collision_rate > 0.0)) throw ConfigError("kinetic_diffusion_coefficient: collision rate must be positive");
  const double v = mean_thermal_speed(temperature, mass);
  return v * v / (3.0 * collision_rate);
}

double longitudinal_decay_factor(double diffusion, double gradient, double tau) {
  if (diffusion < 0.0 || tau < 0.0) throw ConfigError("longitudinal_decay_factor: D and tau must be >= 0");
  return std::exp(-diffusion * gradient * gradient * tau * tau * tau / 3.0);
}

}  // namespace gemsim::transport
