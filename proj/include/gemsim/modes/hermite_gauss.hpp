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

#include <complex>

#include "gemsim/core/field.hpp"

namespace gemsim::modes {

struct ModeIndex {
  int m = 0;  // order along x
  int n = 0;  // order along y

  friend bool operator==(const ModeIndex&, const ModeIndex&) = default;
};

inline constexpr int max_mode_order = 10;

/// Physicists' Hermite polynomial H_n(u) by recurrence.
double hermite(int n, double u) noexcept;

/// Unit-power Hermite-Gauss field E ~ H_m(sqrt2 x/W) H_n(sqrt2 y/W) exp(-(x^2+y^2)/W^2).
/// Intensity of TEM-00 is exp(-2 r^2/W^2), i.e. variance W^2/4 per axis.
/// Throws ConfigError when the grid extent is below 4 W sqrt(max(m,n)+1) or
/// an order is outside [0, 10].
TransverseField hermite_gauss(ModeIndex idx, double waist, const TransverseGrid& grid);

/// Same profile centred at (x0, y0).
TransverseField hermite_gauss(ModeIndex idx, double waist, const TransverseGrid& grid, double x0, double y0);

/// <a|b> = sum conj(a) b dx dy.
std::complex<double> mode_overlap(const TransverseField& a, const TransverseField& b);

/// |<a|b>|^2 / (P_a P_b), in [0, 1].
double normalized_overlap(const TransverseField& a, const TransverseField& b);

}  // namespace gemsim::modes
