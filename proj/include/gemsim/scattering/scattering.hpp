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

#include "gemsim/core/field.hpp"
#include "gemsim/core/params.hpp"
#include "gemsim/modes/image_mask.hpp"
#include "gemsim/modes/pgm.hpp"

namespace gemsim::scattering {

enum class RateForm {
  exact,        // gamma Omega^2 / (gamma^2 + Delta^2)
  far_detuned,  // gamma (Omega / Delta)^2
};

/// Two-photon scattering rate of the control field on its axis (Gamma0), s^-1.
/// Uses params.gamma as the excited-state decay rate. Throws ConfigError for Delta = 0.
double on_axis_scattering_rate(const MemoryParams& params, RateForm form = RateForm::exact);

/// Spatial map Gamma(r) = Gamma0 exp(-2 |r - r_c|^2 / Wc^2). An infinite Wc
/// gives a uniform map.
struct ScatteringMap {
  TransverseGrid grid;
  std::vector<double> rates;  // s^-1, per sample
  double peak_rate = 0;       // Gamma0
  double control_waist = 0;
  double center_x = 0;
  double center_y = 0;
};

ScatteringMap scattering_rate_map(const MemoryParams& params, const TransverseGrid& grid, double center_x = 0.0,
                                  double center_y = 0.0, RateForm form = RateForm::exact);

/// Pointwise amplitude damping exp(-Gamma(r) duration).
TransverseField apply_scattering_burn(const TransverseField& coherence, const ScatteringMap& map, double duration);

enum class SplitScheme {
  strang,           // half burn, diffusion, half burn
  diffusion_first,  // Lie: diffusion then burn each step
  burn_first,       // Lie: burn then diffusion each step
};

/// Operator-split storage under diffusion and (when control_on) control
/// scattering over `steps` equal substeps. With control_on = false this is a
/// single apply_diffusion over the full duration. Each substep's diffusion
/// kernel must satisfy the kernel resolution guard.
TransverseField storage_evolution(const TransverseField& coherence, const ScatteringMap& map, double diffusion,
                                  double duration, bool control_on, int steps,
                                  SplitScheme scheme = SplitScheme::strang);

/// Control-intensity transmission in [0, 1] per grid sample.
struct ControlMask {
  TransverseGrid grid;
  std::vector<double> transmission;
};

ControlMask full_mask(const TransverseGrid& grid);
/// Keeps x < 0 (left) or x > 0 (right).
ControlMask half_plane_mask(const TransverseGrid& grid, modes::Half keep);
ControlMask mask_from_image(const modes::GrayImage& image, const TransverseGrid& grid);
ControlMask complement(const ControlMask& mask);

/// Gamma scaled by the mask transmission (zero where the control is blocked).
/// Throws ConfigError for a grid mismatch or an all-zero mask.
ScatteringMap masked_control_map(const ScatteringMap& map, const ControlMask& mask);

/// Recall gate: only samples lit by the control re-emit. The stored coherence
/// is weighted by the mask transmission.
TransverseField gate_recall(const TransverseField& coherence, const ControlMask& mask);

}  // namespace gemsim::scattering
