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

#include "gemsim/core/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gemsim/core/error.hpp"

namespace gemsim {
namespace {

double bin_frequency(int i, int n, double pitch) {
  const int shifted = i < (n + 1) / 2 ? i : i - n;
  return 2.0 * std::numbers::pi * shifted / (n * pitch);
}

}  // namespace

TransverseGrid::TransverseGrid(int nx, int ny, double dx, double dy) : nx_(nx), ny_(ny), dx_(dx), dy_(dy) {
  const bool single = nx == 1 && ny == 1;
  if (!single && (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)) {
    std::ostringstream os;
    os << "transverse grid " << nx << "x" << ny << " invalid: counts must be even and >= 8";
    throw ConfigError(os.str());
  }
  if (!(dx > 0.0) || !(dy > 0.0) || !std::isfinite(dx) || !std::isfinite(dy))
    throw ConfigError("transverse grid pitch must be positive and finite");
}

TransverseGrid TransverseGrid::square(int n, double extent) { return {n, n, extent / n, extent / n}; }

double TransverseGrid::kx(int ix) const noexcept { return bin_frequency(ix, nx_, dx_); }
double TransverseGrid::ky(int iy) const noexcept { return bin_frequency(iy, ny_, dy_); }

bool TransverseGrid::check_fits(double waist, double factor) const {
  if (is_single_point()) return true;
  if (extent_x() >= factor * waist && extent_y() >= factor * waist) return true;
  std::ostringstream os;
  os << "grid extent " << extent_x() << " x " << extent_y() << " m is less than " << factor << "x the waist "
     << waist << " m";
  warn(os.str());
  return false;
}

}  // namespace gemsim
