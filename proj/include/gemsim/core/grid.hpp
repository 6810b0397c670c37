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

#include <cstddef>

namespace gemsim {

/// Uniform transverse sampling grid centred on the optical axis.
///
/// Sample i sits at x = (i - (nx - 1)/2) dx, so for even counts the axis lies
/// between the two central samples and the grid is mirror symmetric. Counts
/// must be even and >= 8; the single-sample 1x1 grid is also accepted and
/// stands for a transversely uniform (longitudinal-only) problem.
class TransverseGrid {
 public:
  TransverseGrid(int nx, int ny, double dx, double dy);

  /// Square grid of n x n samples spanning `extent` metres per axis.
  static TransverseGrid square(int n, double extent);
  static TransverseGrid single_point(double dx = 1.0, double dy = 1.0) { return {1, 1, dx, dy}; }

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }
  double dx() const noexcept { return dx_; }
  double dy() const noexcept { return dy_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(nx_) * ny_; }
  double cell_area() const noexcept { return dx_ * dy_; }
  double extent_x() const noexcept { return nx_ * dx_; }
  double extent_y() const noexcept { return ny_ * dy_; }
  bool is_single_point() const noexcept { return nx_ == 1 && ny_ == 1; }

  double x(int ix) const noexcept { return (ix - 0.5 * (nx_ - 1)) * dx_; }
  double y(int iy) const noexcept { return (iy - 0.5 * (ny_ - 1)) * dy_; }
  std::size_t index(int ix, int iy) const noexcept { return static_cast<std::size_t>(iy) * nx_ + ix; }

  /// Angular spatial frequency of DFT bin i (FFT ordering).
  double kx(int ix) const noexcept;
  double ky(int iy) const noexcept;

  /// Warns when either extent is less than `factor` times `waist`.
  bool check_fits(double waist, double factor = 4.0) const;

  friend bool operator==(const TransverseGrid&, const TransverseGrid&) = default;

 private:
  int nx_;
  int ny_;
  double dx_;
  double dy_;
};

}  // namespace gemsim
