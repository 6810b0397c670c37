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

#include <numbers>
#include <string_view>

namespace gemsim {

namespace constants {
inline constexpr double speed_of_light = 299792458.0;      // m/s
inline constexpr double boltzmann = 1.380649e-23;          // J/K
inline constexpr double atomic_mass_unit = 1.66053906660e-27;  // kg
inline constexpr double rb87_mass = 86.909180527 * atomic_mass_unit;
inline constexpr double two_pi = 2.0 * std::numbers::pi;
}  // namespace constants

enum class DiffusionUnit { cm2_per_s, m2_per_s };

/// Parses "cm2/s", "cm^2/s", "m2/s", "m^2/s"; throws ConfigError otherwise.
DiffusionUnit parse_diffusion_unit(std::string_view tag);

double convert_diffusion_units(double value, DiffusionUnit from, DiffusionUnit to) noexcept;
double convert_diffusion_units(double value, std::string_view from, std::string_view to);

// Boundary conversions into SI.
inline constexpr double from_mm(double v) noexcept { return v * 1e-3; }
inline constexpr double from_us(double v) noexcept { return v * 1e-6; }
inline constexpr double from_cm2_per_s(double v) noexcept { return v * 1e-4; }
inline constexpr double to_cm2_per_s(double v) noexcept { return v * 1e4; }

/// How a bare frequency in MHz maps to rad/s.
enum class RateConvention {
  angular,  // 1 MHz -> 1e6 rad/s (the number is already an angular frequency)
  cyclic,   // 1 MHz -> 2 pi 1e6 rad/s
};

RateConvention parse_rate_convention(std::string_view tag);

inline constexpr double from_MHz(double v, RateConvention c) noexcept {
  return c == RateConvention::cyclic ? v * 1e6 * constants::two_pi : v * 1e6;
}

}  // namespace gemsim
