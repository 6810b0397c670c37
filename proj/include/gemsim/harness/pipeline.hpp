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

#include <optional>

#include "gemsim/core/field.hpp"
#include "gemsim/harness/config.hpp"
#include "gemsim/scattering/scattering.hpp"

namespace gemsim::harness {

/// Write -> store -> read for one storage time.
///
/// Factorized: the input profile becomes the stored coherence, burned by the
/// control for one write exposure, evolved by storage_evolution (diffusion,
/// plus scattering when the control stays on), burned for one read exposure
/// under the (masked) read control, gated by the mask, and scaled by the
/// square root of the longitudinal efficiency.
class Pipeline {
 public:
  Pipeline(const ScenarioConfig& config, const TransverseGrid& grid);

  const TransverseGrid& grid() const noexcept { return grid_; }
  const scattering::ScatteringMap& write_map() const noexcept { return write_map_; }
  const scattering::ScatteringMap& read_map() const noexcept { return read_map_; }
  const scattering::ControlMask& mask() const noexcept { return mask_; }

  /// Write/read efficiency of the longitudinal problem for this storage time.
  double longitudinal_efficiency(double storage_time) const;

  /// Recalled transverse field for a given input and storage time (seconds).
  /// `longitudinal` overrides the longitudinal efficiency when given.
  TransverseField recall(const TransverseField& input, double storage_time,
                         std::optional<double> longitudinal = std::nullopt) const;

  /// Substeps used by storage_evolution at this storage time.
  int storage_steps(double storage_time) const;

 private:
  TransverseField recall_full3d(const TransverseField& input, double storage_time) const;

  ScenarioConfig config_;
  TransverseGrid grid_;
  scattering::ScatteringMap write_map_;
  scattering::ScatteringMap read_map_;
  scattering::ControlMask mask_;
  bool masked_ = false;
};

/// Control mask named by a config ("none", "left", "right" or a PGM path).
scattering::ControlMask control_mask(const ScenarioConfig& config, const TransverseGrid& grid);

/// Echo timeline used by the solver-backed paths: input centre, flip and
/// schedule for a storage time (echo centre minus input centre). Throws
/// ConfigError when the storage time is too short for the pulse to be fully
/// absorbed before the flip.
struct EchoTimeline {
  double input_centre = 0;
  double flip = 0;
  double end = 0;
};
EchoTimeline echo_timeline(double pulse_fwhm, double storage_time);

}  // namespace gemsim::harness
