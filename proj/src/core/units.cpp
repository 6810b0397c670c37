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

#include "gemsim/core/units.hpp"

#include <string>

#include "gemsim/core/error.hpp"

namespace gemsim {

DiffusionUnit parse_diffusion_unit(std::string_view tag) {
  if (tag == "cm2/s" || tag == "cm^2/s") return DiffusionUnit::cm2_per_s;
  if (tag == "m2/s" || tag == "m^2/s") return DiffusionUnit::m2_per_s;
  throw ConfigError("unknown diffusion unit '" + std::string(tag) + "'");
}

double convert_diffusion_units(double value, DiffusionUnit from, DiffusionUnit to) noexcept {
  if (from == to) return value;
  return from == DiffusionUnit::cm2_per_s ? value * 1e-4 : value * 1e4;
}

double convert_diffusion_units(double value, std::string_view from, std::string_view to) {
  return convert_diffusion_units(value, parse_diffusion_unit(from), parse_diffusion_unit(to));
}

RateConvention parse_rate_convention(std::string_view tag) {
  if (tag == "angular") return RateConvention::angular;
  if (tag == "cyclic") return RateConvention::cyclic;
  throw ConfigError("unknown rate convention '" + std::string(tag) + "' (expected angular or cyclic)");
}

}  // namespace gemsim
