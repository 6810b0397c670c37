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

#include <span>
#include <vector>

#include "gemsim/core/field.hpp"

namespace gemsim::transport {

/// Gaussian diffusion propagator G(r, t) = (4 pi D t)^-1 exp(-r.r / (2 sigma^2)),
/// sigma^2 = 2 D t, sampled on the displacement lattice of a zero-padded
/// (2nx x 2ny) copy of the grid and renormalized so that sum G dx dy = 1.
///
/// The spectral transfer function H(k) = DFT(G) dx dy is cached; H(0) = 1 and
/// H(k) approximates exp(-D k^2 t). t = 0 or D = 0 gives the identity kernel.
///
/// Resolution guard: for t > 0 sigma must be at least 2 samples and at most
/// 1/8 of the grid extent, otherwise ConfigError.
class DiffusionKernel {
 public:
  DiffusionKernel(double diffusion, double time, const TransverseGrid& grid);

  const TransverseGrid& grid() const noexcept { return grid_; }
  double diffusion() const noexcept { return diffusion_; }
  double time() const noexcept { return time_; }
  double sigma() const noexcept { return sigma_; }
  bool is_identity() const noexcept { return sigma_ == 0.0; }

  int padded_nx() const noexcept { return 2 * grid_.nx(); }
  int padded_ny() const noexcept { return 2 * grid_.ny(); }
  /// Angular wavenumbers of the padded lattice bins.
  double padded_kx(int ix) const noexcept;
  double padded_ky(int iy) const noexcept;

  /// Direct-space samples, FFT ordering (index 0 is zero displacement).
  std::span<const double> direct() const noexcept { return direct_; }
  std::span<const cplx> transfer() const noexcept { return transfer_; }
  cplx transfer(int ix, int iy) const noexcept {
    return transfer_[static_cast<std::size_t>(iy) * padded_nx() + ix];
  }

  /// sum G dx dy (1 up to rounding).
  double direct_sum() const noexcept;

 private:
  TransverseGrid grid_;
  double diffusion_;
  double time_;
  double sigma_;
  std::vector<double> direct_;
  std::vector<cplx> transfer_;
};

/// Zero-padded spectral convolution of `field` with the kernel, cropped back
/// to the field's grid.
TransverseField apply_diffusion(const TransverseField& field, const DiffusionKernel& kernel);
TransverseField apply_diffusion(const TransverseField& field, double diffusion, double time);

}  // namespace gemsim::transport
