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
#include <span>
#include <vector>

#include "gemsim/core/grid.hpp"

namespace gemsim {

using cplx = std::complex<double>;

/// Complex field envelope sampled on a transverse grid, row-major (y outer).
class TransverseField {
 public:
  explicit TransverseField(TransverseGrid grid);
  TransverseField(TransverseGrid grid, std::vector<cplx> values);

  const TransverseGrid& grid() const noexcept { return grid_; }
  std::span<const cplx> values() const noexcept { return values_; }
  std::span<cplx> values() noexcept { return values_; }

  cplx operator()(int ix, int iy) const noexcept { return values_[grid_.index(ix, iy)]; }
  cplx& operator()(int ix, int iy) noexcept { return values_[grid_.index(ix, iy)]; }

  TransverseField& operator*=(cplx s);
  friend TransverseField operator*(TransverseField f, cplx s) { return f *= s; }

 private:
  TransverseGrid grid_;
  std::vector<cplx> values_;
};

/// Real-valued intensity map on a transverse grid.
struct Intensity {
  TransverseGrid grid;
  std::vector<double> values;

  double operator()(int ix, int iy) const noexcept { return values[grid.index(ix, iy)]; }
};

Intensity intensity(const TransverseField& field);

/// sum |E|^2 dx dy
double total_power(const TransverseField& field);

/// Power evaluated from the unnormalized 2D DFT: sum |F_k|^2 dx dy / N.
double spectral_power(const TransverseField& field);

/// Throws ConfigError when the two grids differ.
void require_same_grid(const TransverseGrid& a, const TransverseGrid& b, const char* what);

}  // namespace gemsim
