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
#include <vector>

#include "gemsim/core/field.hpp"
#include "gemsim/core/params.hpp"
#include "gemsim/solver/schedule.hpp"

namespace gemsim::solver {

enum class SolverMode {
  adiabatic,    // rho13 eliminated; default
  three_level,  // rho13 integrated explicitly; reference
};

struct SolverOptions {
  int nz = 256;
  double dt = 0.0;  // 0 picks the stability bound; larger values are reduced to it
  SolverMode mode = SolverMode::adiabatic;
  int history_stride = 0;  // record SpinWaveState every this many steps (0: none)
  double weak_probe_limit = 0.1;
};

/// Options for the transverse solver; limited to validation-scale grids.
struct Solver3dOptions {
  SolverOptions base{.nz = 32};
  /// Control amplitude multiplier per transverse sample (empty: uniform).
  std::vector<double> control_profile;
  bool diffraction = true;
};

inline constexpr int max_3d_nz = 64;
inline constexpr int max_3d_transverse = 64;

/// Coherences at one instant. Arrays are z-major: index = iz * transverse_points + p.
struct SpinWaveState {
  double time = 0;
  std::vector<double> z;
  std::vector<cplx> rho12;
  std::vector<cplx> rho13;  // adiabatic mode: the eliminated value at this instant
  int transverse_points = 1;
};

struct EchoRecord {
  PulseEnvelope input;
  /// Output envelope sampled every solver step from t = 0. In the transverse
  /// solver this is the projection onto the normalized input mode.
  PulseEnvelope output;
  /// Spatially integrated output power per output sample.
  std::vector<double> output_power;
  /// Transverse output at the echo peak, scaled so that its power relative to
  /// input_transverse equals total_efficiency.
  std::optional<TransverseField> input_transverse;
  std::optional<TransverseField> output_transverse;
  double window_start = 0;
  double window_end = 0;
  double input_energy = 0;
  double transmitted_energy = 0;  // output energy before the recall window
  double echo_energy = 0;         // output energy inside the recall window
  double total_efficiency = 0;
  std::optional<double> overlap_efficiency;
  double echo_peak_time = 0;
  bool overshoot = false;  // efficiency above 1 (numerical)
  double max_coherence = 0;
};

struct EchoResult {
  EchoRecord record;
  std::vector<SpinWaveState> history;
  double dt = 0;
  long steps = 0;
};

/// Largest step allowed for the given parameters and schedule.
double stable_time_step(const MemoryParams& params, const GradientSchedule& schedule, SolverMode mode);

/// Longitudinal solver: transverse Laplacians dropped. The recall window runs
/// from the gradient flip (or the end of the input when there is none) to the
/// end of the schedule.
EchoResult simulate_echo_1d(const MemoryParams& params, const PulseEnvelope& input, const GradientSchedule& schedule,
                            const SolverOptions& options = {});

/// Full transverse solver with diffraction and diffusion. A 1x1 grid reduces
/// to the longitudinal solver. Throws ConfigError for grids beyond the
/// validation limits; use the factorized pipeline there.
EchoResult simulate_echo_3d(const MemoryParams& params, const TransverseField& input_transverse,
                            const PulseEnvelope& input_temporal, const GradientSchedule& schedule,
                            const Solver3dOptions& options = {});

}  // namespace gemsim::solver
