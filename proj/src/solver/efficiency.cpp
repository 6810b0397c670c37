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

#include "gemsim/solver/efficiency.hpp"

#include <algorithm>

#include "gemsim/core/error.hpp"
#include "gemsim/kernels/kernels.hpp"

namespace gemsim::solver {

RecallEfficiencies recall_efficiencies(const TransverseField& input, const TransverseField& output,
                                       const TransverseField& reference) {
  require_same_grid(input.grid(), output.grid(), "recall_efficiencies output");
  require_same_grid(input.grid(), reference.grid(), "recall_efficiencies reference");
  const double p_in = total_power(input);
  const double p_ref = total_power(reference);
  if (!(p_ref > 0.0)) throw ConfigError("reference mode has zero power");
  if (!(p_in > 0.0)) throw ConfigError("input has zero power");
  const double cell = input.grid().cell_area();
  const double proj = std::norm(kernels::dot(reference.values(), output.values()) * cell);
  RecallEfficiencies e;
  e.total = total_power(output) / p_in;
  // Cauchy-Schwarz bounds the ratio by total; clamp the rounding excess.
  e.overlap = std::min(proj / (p_ref * p_in), e.total);
  return e;
}

RecallEfficiencies recall_efficiencies(const EchoRecord& record, const TransverseField& reference) {
  if (!record.input_transverse || !record.output_transverse)
    throw ConfigError("echo record has no transverse output field");
  return recall_efficiencies(*record.input_transverse, *record.output_transverse, reference);
}

}  // namespace gemsim::solver
