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

#include "gemsim/core/params.hpp"

#include <cmath>
#include <sstream>

#include "gemsim/core/error.hpp"
#include "gemsim/core/units.hpp"

namespace gemsim {

void MemoryParams::validate() const {
  const struct {
    const char* name;
    double value;
  } nonneg[] = {
      {"g", g},
      {"density", density},
      {"control_rabi", control_rabi},
      {"gamma", gamma},
      {"gamma0", gamma0},
      {"gammac", gammac},
      {"diffusion", diffusion},
      {"probe_waist", probe_waist},
      {"wavenumber", wavenumber},
      {"length", length},
  };
  // An infinite control waist is the uniform (wide-control) limit.
  if (std::isnan(control_waist) || control_waist < 0.0)
    throw ConfigError("memory parameter control_waist must be non-negative (infinity allowed)");
  for (const auto& p : nonneg) {
    if (!std::isfinite(p.value) || p.value < 0.0) {
      std::ostringstream os;
      os << "memory parameter " << p.name << " must be finite and non-negative (got " << p.value << ")";
      throw ConfigError(os.str());
    }
  }
  if (!std::isfinite(one_photon_detuning) || !std::isfinite(gradient) || !std::isfinite(two_photon_offset))
    throw ConfigError("memory detunings must be finite");
  if (!raman_regime()) {
    std::ostringstream os;
    os << "Delta/gamma = " << std::abs(one_photon_detuning) / gamma << " < 10: outside the Raman regime";
    warn(os.str());
  }
}

bool MemoryParams::raman_regime() const noexcept {
  return gamma == 0.0 || std::abs(one_photon_detuning) >= 10.0 * gamma;
}

double MemoryParams::light_shift() const noexcept {
  if (one_photon_detuning == 0.0) return 0.0;
  const double om2 = control_rabi * control_rabi;
  const double d = one_photon_detuning;
  return om2 / d + om2 * d / (d * d + gamma * gamma);
}

double MemoryParams::raman_depth() const noexcept {
  if (gradient == 0.0 || one_photon_detuning == 0.0) return 0.0;
  const double ratio = control_rabi / one_photon_detuning;
  return g * g * density * ratio * ratio / (constants::speed_of_light * std::abs(gradient));
}

double MemoryParams::density_for_raman_depth(double beta) const noexcept {
  const double ratio = control_rabi / one_photon_detuning;
  return beta * constants::speed_of_light * std::abs(gradient) / (g * g * ratio * ratio);
}

double MemoryParams::two_photon_linewidth() const noexcept {
  if (one_photon_detuning == 0.0) return gamma0 + gammac;
  const double ratio = control_rabi / one_photon_detuning;
  return gamma0 + gammac + ratio * ratio * gamma;
}

MemoryParams MemoryParams::reference_setup() {
  MemoryParams p;
  p.g = 1.0;
  p.one_photon_detuning = 1.5e9;
  p.control_rabi = 72e6;
  p.gamma = constants::two_pi * 5.6e6;
  p.length = 0.2;
  p.gradient = constants::two_pi * 4e6 / p.length;
  p.control_waist = 3e-3;
  p.probe_waist = 1.5e-3;
  p.wavenumber = constants::two_pi / 795e-9;
  p.diffusion = from_cm2_per_s(13.2);
  p.density = p.density_for_raman_depth(1.0);
  p.two_photon_offset = p.light_shift();
  return p;
}

}  // namespace gemsim
