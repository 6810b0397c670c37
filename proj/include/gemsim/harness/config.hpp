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

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "gemsim/core/params.hpp"
#include "gemsim/core/units.hpp"
#include "gemsim/modes/hermite_gauss.hpp"

namespace gemsim::harness {

/// Environment variable that overrides output.dir.
inline constexpr const char* output_dir_env = "GEMSIM_OUTPUT_DIR";

enum class PipelineMode { factorized, full3d };
enum class LongitudinalModel { closed_form, solver, none };
enum class SigmaMethod { fit, moment };

/// Input profile: Hermite-Gauss modes, or an image on a TEM-00 carrier.
struct InputSpec {
  std::vector<modes::ModeIndex> modes{{0, 0}};
  std::string image;  // empty: modes; "checkerboard"; "left"/"right" half plane; otherwise a PGM path
  int image_px = 64;
  int checker_period_px = 8;
  double carrier_waist = 0;  // 0: probe waist
  double pulse_fwhm = 1e-6;
};

struct ControlSpec {
  bool on = false;                // control on during storage
  std::string mask = "none";      // none | left | right | PGM path
  double offset_x = 0, offset_y = 0;
  double burn_exposure = -1;      // write and read exposure each; < 0: the pulse FWHM
};

struct ScenarioConfig {
  std::string scenario;
  MemoryParams memory;
  RateConvention rate_convention = RateConvention::angular;
  int grid_n = 256;
  double grid_extent = 12e-3;
  InputSpec input;
  std::vector<double> storage_times_us;
  ControlSpec control;
  PipelineMode pipeline = PipelineMode::factorized;
  LongitudinalModel longitudinal = LongitudinalModel::closed_form;
  int storage_steps = 0;  // 0: automatic
  int nz = 0;             // 0: 256 for the longitudinal solver, 32 for full3d
  SigmaMethod sigma = SigmaMethod::fit;
  double noise_fraction = 0;  // multiplicative efficiency noise (tests only)
  std::uint64_t seed = 0;
  std::filesystem::path output_dir = "gemsim-out";
  bool shared_scale = false;
  bool write_images = true;

  /// Raw key/value pairs as parsed; sweeps override entries here and rebuild.
  std::map<std::string, std::string> entries;
  std::filesystem::path source_dir;  // relative image paths resolve against this
};

/// Registered scenario ids.
const std::vector<std::string>& scenario_ids();

/// Parses `key = value` lines (# comments). Unknown keys, duplicates and bad
/// values throw ConfigError.
ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& source_dir = {});
ScenarioConfig load_config(const std::filesystem::path& path);

/// Rebuilds a config from raw entries (used by sweeps).
ScenarioConfig build_config(const std::map<std::string, std::string>& entries,
                            const std::filesystem::path& source_dir = {});

/// True when `key` is a recognised config key.
bool is_config_key(std::string_view key);

/// output_dir, or the directory named by GEMSIM_OUTPUT_DIR when set and non-empty.
std::filesystem::path resolve_output_dir(const ScenarioConfig& config);

/// Burn exposure in seconds (defaults to the pulse FWHM).
double burn_exposure(const ScenarioConfig& config) noexcept;

std::string mode_label(modes::ModeIndex idx);

}  // namespace gemsim::harness
