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

#include "gemsim/scattering/scattering.hpp"

#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"
#include "gemsim/kernels/kernels.hpp"
#include "gemsim/modes/image_mask.hpp"
#include "gemsim/transport/diffusion.hpp"

namespace gemsim::scattering {
namespace {

std::vector<double> damping(const ScatteringMap& map, double duration) {
  std::vector<double> f(map.rates.size());
  for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(-map.rates[i] * duration);
  return f;
}

void check_mask(const ControlMask& mask) {
  if (mask.transmission.size() != mask.grid.size()) throw ConfigError("control mask size does not match its grid");
  if (std::none_of(mask.transmission.begin(), mask.transmission.end(), [](double v) { return v > 0.0; }))
    throw ConfigError("control mask is empty");
}

}  // namespace

double on_axis_scattering_rate(const MemoryParams& p, RateForm form) {
  if (p.one_photon_detuning == 0.0) throw ConfigError("scattering rate needs a non-zero one-photon detuning");
  const double om2 = p.control_rabi * p.control_rabi;
  const double d2 = p.one_photon_detuning * p.one_photon_detuning;
  return form == RateForm::exact ? p.gamma * om2 / (p.gamma * p.gamma + d2) : p.gamma * om2 / d2;
}

ScatteringMap scattering_rate_map(const MemoryParams& params, const TransverseGrid& grid, double center_x,
                                  double center_y, RateForm form) {
  if (!(params.control_waist > 0.0)) throw ConfigError("scattering map needs a positive control waist");
  ScatteringMap map{grid, std::vector<double>(grid.size()), on_axis_scattering_rate(params, form),
                    params.control_waist, center_x, center_y};
  const double inv_w2 = std::isinf(params.control_waist) ? 0.0 : 1.0 / (params.control_waist * params.control_waist);
  for (int iy = 0; iy < grid.ny(); ++iy) {
    const double dy = grid.y(iy) - center_y;
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const double dx = grid.x(ix) - center_x;
      map.rates[grid.index(ix, iy)] = map.peak_rate * std::exp(-2.0 * (dx * dx + dy * dy) * inv_w2);
    }
  }
  return map;
}

TransverseField apply_scattering_burn(const TransverseField& coherence, const ScatteringMap& map, double duration) {
  require_same_grid(coherence.grid(), map.grid, "apply_scattering_burn");
  if (duration < 0.0) throw ConfigError("burn duration must be non-negative");
  TransverseField out = coherence;
  if (duration == 0.0) return out;
  kernels::scale(out.values(), damping(map, duration));
  return out;
}

TransverseField storage_evolution(const TransverseField& coherence, const ScatteringMap& map, double diffusion,
                                  double duration, bool control_on, int steps, SplitScheme scheme) {
  if (steps < 1) throw ConfigError("storage_evolution needs steps >= 1");
  if (duration < 0.0) throw ConfigError("storage duration must be non-negative");
  if (!control_on) return transport::apply_diffusion(coherence, diffusion, duration);
  require_same_grid(coherence.grid(), map.grid, "storage_evolution");

  const double h = duration / steps;
  const transport::DiffusionKernel kernel(diffusion, h, coherence.grid());
  TransverseField out = coherence;
  if (scheme == SplitScheme::strang) {
    const auto half = damping(map, 0.5 * h);
    const auto full = damping(map, h);
    kernels::scale(out.values(), half);
    for (int s = 0; s < steps; ++s) {
      out = transport::apply_diffusion(out, kernel);
      kernels::scale(out.values(), s + 1 < steps ? std::span<const double>(full) : std::span<const double>(half));
    }
    return out;
  }
  const auto full = damping(map, h);
  for (int s = 0; s < steps; ++s) {
    if (scheme == SplitScheme::burn_first) kernels::scale(out.values(), full);
    out = transport::apply_diffusion(out, kernel);
    if (scheme == SplitScheme::diffusion_first) kernels::scale(out.values(), full);
  }
  return out;
}

ControlMask full_mask(const TransverseGrid& grid) { return {grid, std::vector<double>(grid.size(), 1.0)}; }

ControlMask half_plane_mask(const TransverseGrid& grid, modes::Half keep) {
  ControlMask mask{grid, std::vector<double>(grid.size(), 0.0)};
  for (int iy = 0; iy < grid.ny(); ++iy)
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const bool left = grid.x(ix) < 0.0;
      mask.transmission[grid.index(ix, iy)] = (left == (keep == modes::Half::left)) ? 1.0 : 0.0;
    }
  return mask;
}

ControlMask mask_from_image(const modes::GrayImage& image, const TransverseGrid& grid) {
  return {grid, modes::resample_transmission(image, grid)};
}

ControlMask complement(const ControlMask& mask) {
  ControlMask out = mask;
  for (auto& v : out.transmission) v = 1.0 - v;
  return out;
}

ScatteringMap masked_control_map(const ScatteringMap& map, const ControlMask& mask) {
  require_same_grid(map.grid, mask.grid, "masked_control_map");
  check_mask(mask);
  ScatteringMap out = map;
  for (std::size_t i = 0; i < out.rates.size(); ++i) out.rates[i] *= mask.transmission[i];
  return out;
}

TransverseField gate_recall(const TransverseField& coherence, const ControlMask& mask) {
  require_same_grid(coherence.grid(), mask.grid, "gate_recall");
  check_mask(mask);
  TransverseField out = coherence;
  kernels::scale(out.values(), mask.transmission);
  return out;
}

}  // namespace gemsim::scattering
