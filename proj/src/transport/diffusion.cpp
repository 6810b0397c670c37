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

#include "gemsim/transport/diffusion.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "gemsim/core/error.hpp"
#include "gemsim/core/fft.hpp"
#include "gemsim/kernels/kernels.hpp"

namespace gemsim::transport {
namespace {

int wrapped(int i, int n) { return i < n / 2 ? i : i - n; }

}  // namespace

DiffusionKernel::DiffusionKernel(double diffusion, double time, const TransverseGrid& grid)
    : grid_(grid), diffusion_(diffusion), time_(time), sigma_(0.0) {
  if (!(diffusion >= 0.0) || !(time >= 0.0)) throw ConfigError("diffusion kernel needs D >= 0 and t >= 0");
  const int px = padded_nx(), py = padded_ny();
  const std::size_t n = static_cast<std::size_t>(px) * py;
  direct_.assign(n, 0.0);
  transfer_.assign(n, cplx{1.0, 0.0});

  sigma_ = std::sqrt(2.0 * diffusion * time);
  if (sigma_ == 0.0) {
    direct_[0] = 1.0 / grid.cell_area();
    return;
  }
  const double pitch = std::max(grid.dx(), grid.dy());
  const double extent = std::min(grid.extent_x(), grid.extent_y());
  if (sigma_ < 2.0 * pitch || sigma_ > extent / 8.0) {
    std::ostringstream os;
    os << "diffusion kernel sigma = " << sigma_ << " m is " << (sigma_ < 2.0 * pitch ? "under-resolved" : "too wide")
       << " for the grid (need " << 2.0 * pitch << " <= sigma <= " << extent / 8.0 << ")";
    throw ConfigError(os.str());
  }

  const double inv2s2 = 1.0 / (2.0 * sigma_ * sigma_);
  double sum = 0.0;
  for (int iy = 0; iy < py; ++iy) {
    const double y = wrapped(iy, py) * grid.dy();
    for (int ix = 0; ix < px; ++ix) {
      const double x = wrapped(ix, px) * grid.dx();
      const double v = std::exp(-(x * x + y * y) * inv2s2) / (4.0 * std::numbers::pi * diffusion * time);
      direct_[static_cast<std::size_t>(iy) * px + ix] = v;
      sum += v;
    }
  }
  const double renorm = 1.0 / (sum * grid.cell_area());
  for (std::size_t i = 0; i < n; ++i) {
    direct_[i] *= renorm;
    transfer_[i] = direct_[i] * grid.cell_area();
  }
  Fft2d(px, py).forward(transfer_);
}

double DiffusionKernel::padded_kx(int ix) const noexcept {
  return 2.0 * std::numbers::pi * wrapped(ix, padded_nx()) / (padded_nx() * grid_.dx());
}

double DiffusionKernel::padded_ky(int iy) const noexcept {
  return 2.0 * std::numbers::pi * wrapped(iy, padded_ny()) / (padded_ny() * grid_.dy());
}

double DiffusionKernel::direct_sum() const noexcept {
  double s = 0.0;
  for (double v : direct_) s += v;
  return s * grid_.cell_area();
}

TransverseField apply_diffusion(const TransverseField& field, const DiffusionKernel& kernel) {
  require_same_grid(field.grid(), kernel.grid(), "apply_diffusion");
  if (kernel.is_identity()) return field;
  const auto& g = field.grid();
  const int px = kernel.padded_nx(), py = kernel.padded_ny();
  std::vector<cplx> buf(static_cast<std::size_t>(px) * py);
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nx(); ++ix) buf[static_cast<std::size_t>(iy) * px + ix] = field(ix, iy);

  const Fft2d fft(px, py);
  fft.forward(buf);
  kernels::multiply(buf, kernel.transfer());
  fft.inverse(buf);

  const double inv_n = 1.0 / static_cast<double>(buf.size());
  TransverseField out(g);
  for (int iy = 0; iy < g.ny(); ++iy)
    for (int ix = 0; ix < g.nx(); ++ix) out(ix, iy) = buf[static_cast<std::size_t>(iy) * px + ix] * inv_n;
  return out;
}

TransverseField apply_diffusion(const TransverseField& field, double diffusion, double time) {
  return apply_diffusion(field, DiffusionKernel(diffusion, time, field.grid()));
}

}  // namespace gemsim::transport
