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

#include "gemsim/solver/spectrum.hpp"

#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"

namespace gemsim::solver {

RamanSpectrum raman_absorption_profile(const MemoryParams& params, const DetuningRange& range, bool broadened) {
  if (!std::isfinite(range.min) || !std::isfinite(range.max) || !(range.max >= range.min) || range.count < 1)
    throw ConfigError("detuning range must be finite, ordered and non-empty");
  const double g2 = params.two_photon_linewidth();
  if (!(g2 > 0.0)) throw ConfigError("two-photon linewidth is zero; the line is singular");
  const double spread = std::abs(params.gradient) * params.length;
  RamanSpectrum s;
  s.detuning.resize(range.count);
  s.absorption.resize(range.count);
  s.dispersion.resize(range.count);
  for (int i = 0; i < range.count; ++i) {
    const double d = range.count == 1 ? range.min : range.min + (range.max - range.min) * i / (range.count - 1.0);
    s.detuning[i] = d;
    if (!broadened || spread == 0.0) {
      const double den = g2 * g2 + d * d;
      s.absorption[i] = g2 * g2 / den;
      s.dispersion[i] = g2 * d / den;
    } else {
      const double hi = d + 0.5 * spread, lo = d - 0.5 * spread;
      s.absorption[i] = g2 / spread * (std::atan(hi / g2) - std::atan(lo / g2));
      s.dispersion[i] = 0.5 * g2 / spread * std::log((hi * hi + g2 * g2) / (lo * lo + g2 * g2));
    }
  }
  return s;
}

double absorption_fwhm(const RamanSpectrum& s) {
  if (s.absorption.size() < 3) throw ConfigError("spectrum too short for a width");
  const auto peak_it = std::max_element(s.absorption.begin(), s.absorption.end());
  const auto ip = static_cast<std::size_t>(peak_it - s.absorption.begin());
  const double half = 0.5 * *peak_it;
  auto crossing = [&](int dir) {
    for (std::size_t i = ip; dir > 0 ? i + 1 < s.absorption.size() : i > 0; i += dir) {
      const std::size_t j = i + dir;
      if (s.absorption[j] < half) {
        const double f = (s.absorption[i] - half) / (s.absorption[i] - s.absorption[j]);
        return s.detuning[i] + f * (s.detuning[j] - s.detuning[i]);
      }
    }
    throw NumericalError("absorption does not fall to half maximum inside the range");
  };
  return crossing(+1) - crossing(-1);
}

}  // namespace gemsim::solver
