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

#include "gemsim/harness/pipeline.hpp"

#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"
#include "gemsim/modes/image_mask.hpp"
#include "gemsim/modes/pgm.hpp"
#include "gemsim/solver/maxwell_bloch.hpp"
#include "gemsim/transport/estimates.hpp"

namespace gemsim::harness {

scattering::ControlMask control_mask(const ScenarioConfig& config, const TransverseGrid& grid) {
  const auto& m = config.control.mask;
  if (m == "none" || m.empty()) return scattering::full_mask(grid);
  if (m == "left") return scattering::half_plane_mask(grid, modes::Half::left);
  if (m == "right") return scattering::half_plane_mask(grid, modes::Half::right);
  std::filesystem::path path(m);
  if (path.is_relative() && !config.source_dir.empty()) path = config.source_dir / path;
  return scattering::mask_from_image(modes::read_pgm(path), grid);
}

EchoTimeline echo_timeline(double pulse_fwhm, double storage_time) {
  const double sigma = solver::gaussian_sigma(pulse_fwhm);
  if (storage_time < 8.0 * sigma)
    throw ConfigError("storage time is shorter than the input pulse (needs >= 8 sigma); use the closed-form path");
  EchoTimeline t;
  t.input_centre = 4.0 * sigma + pulse_fwhm;
  t.flip = t.input_centre + 0.5 * storage_time;
  t.end = t.input_centre + storage_time + 4.0 * sigma + pulse_fwhm;
  return t;
}

namespace {

solver::GradientSchedule solver_schedule(const ScenarioConfig& c, const EchoTimeline& tl) {
  const double sigma = solver::gaussian_sigma(c.input.pulse_fwhm);
  const double write_end = tl.input_centre + 4.0 * sigma;
  const double read_start = 2.0 * tl.flip - write_end;
  const bool always_on = c.control.on || write_end >= tl.flip;
  return solver::echo_schedule(c.memory.gradient, {write_end, tl.flip, read_start, tl.end}, always_on);
}

}  // namespace

Pipeline::Pipeline(const ScenarioConfig& config, const TransverseGrid& grid)
    : config_(config),
      grid_(grid),
      write_map_(scattering::scattering_rate_map(config.memory, grid, config.control.offset_x,
                                                 config.control.offset_y)),
      read_map_(write_map_),
      mask_(control_mask(config, grid)) {
  masked_ = std::any_of(mask_.transmission.begin(), mask_.transmission.end(), [](double v) { return v != 1.0; });
  if (masked_) read_map_ = scattering::masked_control_map(write_map_, mask_);
}

double Pipeline::longitudinal_efficiency(double storage_time) const {
  const auto& p = config_.memory;
  switch (config_.longitudinal) {
    case LongitudinalModel::none:
      return 1.0;
    case LongitudinalModel::closed_form: {
      const double beta = p.raman_depth();
      const double write_read = std::pow(1.0 - std::exp(-constants::two_pi * beta), 2);
      const double dephasing = std::exp(-2.0 * (p.gamma0 + p.gammac) * storage_time);
      const double f = transport::longitudinal_decay_factor(p.diffusion, p.gradient, 0.5 * storage_time);
      return write_read * dephasing * std::pow(f, 4);
    }
    case LongitudinalModel::solver: {
      // Control scattering is carried by the transverse burn, so it is
      // switched off here to avoid counting it twice.
      MemoryParams q = p;
      q.gamma = 0.0;
      q.two_photon_offset = q.light_shift();
      const auto tl = echo_timeline(config_.input.pulse_fwhm, storage_time);
      const double sigma = solver::gaussian_sigma(config_.input.pulse_fwhm);
      const auto pulse = solver::gaussian_pulse(config_.input.pulse_fwhm, tl.input_centre, sigma / 20.0);
      solver::SolverOptions opt;
      opt.nz = config_.nz > 0 ? config_.nz : 256;
      return solver::simulate_echo_1d(q, pulse, solver_schedule(config_, tl), opt).record.total_efficiency;
    }
  }
  return 1.0;
}

int Pipeline::storage_steps(double storage_time) const {
  if (config_.storage_steps > 0) return config_.storage_steps;
  const double d = config_.memory.diffusion;
  const double dx = std::max(grid_.dx(), grid_.dy());
  if (!(d > 0.0) || storage_time <= 0.0) return 1;
  // Each substep's kernel must stay at least two samples wide.
  const double limit = d * storage_time / (2.0 * dx * dx);
  return std::clamp(static_cast<int>(std::floor(limit)), 1, 32);
}

TransverseField Pipeline::recall(const TransverseField& input, double storage_time,
                                 std::optional<double> longitudinal) const {
  require_same_grid(input.grid(), grid_, "pipeline input");
  if (storage_time < 0.0) throw ConfigError("storage time must be non-negative");
  if (config_.pipeline == PipelineMode::full3d) return recall_full3d(input, storage_time);

  const double exposure = burn_exposure(config_);
  TransverseField s = scattering::apply_scattering_burn(input, write_map_, exposure);
  if (storage_time > 0.0)
    s = scattering::storage_evolution(s, write_map_, config_.memory.diffusion, storage_time, config_.control.on,
                                      storage_steps(storage_time));
  s = scattering::apply_scattering_burn(s, read_map_, exposure);
  if (masked_) s = scattering::gate_recall(s, mask_);
  const double eta = longitudinal ? *longitudinal : longitudinal_efficiency(storage_time);
  s *= std::sqrt(std::max(eta, 0.0));
  return s;
}

TransverseField Pipeline::recall_full3d(const TransverseField& input, double storage_time) const {
  const auto tl = echo_timeline(config_.input.pulse_fwhm, storage_time);
  const double sigma = solver::gaussian_sigma(config_.input.pulse_fwhm);
  const auto pulse = solver::gaussian_pulse(config_.input.pulse_fwhm, tl.input_centre, sigma / 20.0);
  solver::Solver3dOptions opt;
  opt.base.nz = config_.nz > 0 ? config_.nz : 32;
  // Control amplitude profile: Gaussian of waist Wc (intensity exp(-2 r^2/Wc^2)), times the mask.
  const auto& p = config_.memory;
  const bool finite_waist = std::isfinite(p.control_waist) && p.control_waist > 0.0;
  opt.control_profile.resize(grid_.size());
  for (int iy = 0; iy < grid_.ny(); ++iy)
    for (int ix = 0; ix < grid_.nx(); ++ix) {
      const double dx = grid_.x(ix) - config_.control.offset_x, dy = grid_.y(iy) - config_.control.offset_y;
      const double r2 = dx * dx + dy * dy;
      const auto k = grid_.index(ix, iy);
      const double amp = finite_waist ? std::exp(-r2 / (p.control_waist * p.control_waist)) : 1.0;
      opt.control_profile[k] = amp * std::sqrt(mask_.transmission[k]);
    }
  const auto res = solver::simulate_echo_3d(p, input, pulse, solver_schedule(config_, tl), opt);
  return *res.record.output_transverse;
}

}  // namespace gemsim::harness
