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

#include <vector>

#include "gemsim/core/params.hpp"

namespace gemsim::solver {

struct DetuningRange {
  double min = 0;  // rad/s
  double max = 0;
  int count = 0;
};

/// Normalized Raman response vs two-photon detuning. The single line is
/// Gamma2 / (Gamma2 - i delta): absorption is its real part (unit peak),
/// dispersion its imaginary part. δ is measured from the light-shift
/// compensated resonance.
struct RamanSpectrum {
  std::vector<double> detuning;
  std::vector<double> absorption;
  std::vector<double> dispersion;
};

/// With `broadened`, the line is averaged over z in [-L/2, L/2] with the
/// gradient shift eta z. Throws ConfigError for a non-finite range or a zero
/// two-photon linewidth.
RamanSpectrum raman_absorption_profile(const MemoryParams& params, const DetuningRange& range, bool broadened);

/// Full width at half maximum of the absorption, by linear interpolation.
double absorption_fwhm(const RamanSpectrum& spectrum);

}  // namespace gemsim::solver
