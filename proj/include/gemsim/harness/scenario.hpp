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

#include <filesystem>
#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "gemsim/core/field.hpp"
#include "gemsim/harness/config.hpp"
#include "gemsim/harness/csv.hpp"
#include "gemsim/harness/fitting.hpp"
#include "gemsim/modes/pgm.hpp"

namespace gemsim::harness {

/// One storage time of one input (NaN where a column does not apply).
struct ScenarioRow {
  std::string label;  // mode index ("20") or "image"
  double storage_time_us = 0;
  double total_efficiency = 0;
  double overlap_efficiency = 0;
  double sigma2_x = 0;  // m^2
  double sigma2_y = 0;
  double sigma2 = 0;  // axis average
  double peak_ratio = 0;
  double dark_fraction = 0;  // recalled power where the read control is blocked
  double tau_fit_us = 0;
  double image_norm = 0;  // intensity mapped to full scale in the echo image
};

struct RenderedImage {
  std::string name;  // file name
  modes::GrayImage image;
  double norm = 0;
};

struct ScenarioResult {
  std::string scenario;
  std::vector<ScenarioRow> rows;
  std::map<std::string, ExponentialFit> fits;  // per label, when a fit was possible
  std::vector<RenderedImage> images;

  Table table() const;
};

/// Column names of Table output, in order.
const std::vector<std::string>& result_columns();

/// Input profiles of a scenario keyed by label, on the given grid.
std::vector<std::pair<std::string, TransverseField>> scenario_inputs(const ScenarioConfig& config,
                                                                     const TransverseGrid& grid);

/// Runs the scenario. Pure apart from reading image inputs.
ScenarioResult run_scenario(const ScenarioConfig& config);

/// Writes <scenario>.csv and the PGM images into `dir` (created if missing).
/// Writes into one directory are serialized.
void write_result(const ScenarioResult& result, const std::filesystem::path& dir, bool images = true);

/// Process-wide lock for writes into a directory.
std::mutex& directory_mutex(const std::filesystem::path& dir);

}  // namespace gemsim::harness
