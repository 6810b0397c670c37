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

#include "gemsim/core/field.hpp"
#include "gemsim/solver/maxwell_bloch.hpp"

namespace gemsim::solver {

struct RecallEfficiencies {
  double total = 0;    // camera-style: output power / input power
  double overlap = 0;  // heterodyne-style: |<ref|out>|^2 / (P_ref P_in)
};

/// Throws ConfigError when the reference has zero power or the grids differ.
RecallEfficiencies recall_efficiencies(const TransverseField& input, const TransverseField& output,
                                       const TransverseField& reference);

/// Uses the record's transverse fields; throws ConfigError if it has none.
RecallEfficiencies recall_efficiencies(const EchoRecord& record, const TransverseField& reference);

}  // namespace gemsim::solver
