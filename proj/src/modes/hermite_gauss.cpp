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

#include "gemsim/modes/hermite_gauss.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gemsim/core/error.hpp"
#include "gemsim/kernels/kernels.hpp"

namespace gemsim::modes {
namespace {

// Integral of [H_m(sqrt2 x/W) exp(-x^2/W^2)]^2 dx = (W/sqrt2) 2^m m! sqrt(pi).
double axis_norm(int m, double waist) {
  double f = 1.0;
  for (int k = 2; k <= m; ++k) f *= k;
  return 1.0 / std::sqrt(waist / std::numbers::sqrt2 * std::ldexp(f, m) * std::sqrt(std::numbers::pi));
}

std::vector<double> axis_profile(int order, double waist, int count, double pitch, double centre) {
  std::vector<double> out(count);
  const double norm = axis_norm(order, waist);
  for (int i = 0; i < count; ++i) {
    const double x = (i - 0.5 * (count - 1)) * pitch - centre;
    const double u = std::numbers::sqrt2 * x / waist;
    out[i] = norm * hermite(order, u) * std::exp(-x * x / (waist * waist));
  }
  return out;
}

}  // namespace

double hermite(int n, double u) noexcept {
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = 2.0 * u;
  for (int k = 1; k < n; ++k) {
    const double next = 2.0 * u * cur - 2.0 * k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

TransverseField hermite_gauss(ModeIndex idx, double waist, const TransverseGrid& grid) {
  return hermite_gauss(idx, waist, grid, 0.0, 0.0);
}

TransverseField hermite_gauss(ModeIndex idx, double waist, const TransverseGrid& grid, double x0, double y0) {
  if (idx.m < 0 || idx.n < 0 || idx.m > max_mode_order || idx.n > max_mode_order)
    throw ConfigError("Hermite-Gauss order outside [0, 10]");
  if (!(waist > 0.0)) throw ConfigError("waist must be positive");
  const double need = 4.0 * waist * std::sqrt(std::max(idx.m, idx.n) + 1.0);
  if (!grid.is_single_point() && (grid.extent_x() < need || grid.extent_y() < need)) {
    std::ostringstream os;
    os << "waist " << waist << " m too large for grid: TEM-" << idx.m << idx.n << " needs extent >= " << need
       << " m";
    throw ConfigError(os.str());
  }
  const auto px = axis_profile(idx.m, waist, grid.nx(), grid.dx(), x0);
  const auto py = axis_profile(idx.n, waist, grid.ny(), grid.dy(), y0);
  TransverseField field(grid);
  for (int iy = 0; iy < grid.ny(); ++iy)
    for (int ix = 0; ix < grid.nx(); ++ix) field(ix, iy) = px[ix] * py[iy];
  return field;
}

std::complex<double> mode_overlap(const TransverseField& a, const TransverseField& b) {
  require_same_grid(a.grid(), b.grid(), "mode_overlap");
  return kernels::dot(a.values(), b.values()) * a.grid().cell_area();
}

double normalized_overlap(const TransverseField& a, const TransverseField& b) {
  const double pa = total_power(a);
  const double pb = total_power(b);
  if (pa <= 0.0 || pb <= 0.0) throw ConfigError("normalized_overlap: zero-power field");
  return std::norm(mode_overlap(a, b)) / (pa * pb);
}

}  // namespace gemsim::modes
