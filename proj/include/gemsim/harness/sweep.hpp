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

#include <string>
#include <vector>

#include "gemsim/harness/config.hpp"
#include "gemsim/harness/csv.hpp"
#include "gemsim/harness/scenario.hpp"

namespace gemsim::harness {

struct SweepResult {
  std::string parameter;
  std::vector<std::string> values;
  std::vector<ScenarioResult> results;  // same order as values

  /// Merged table: the swept value leads, then the scenario columns.
  Table table() const;
};

/// Runs one scenario per value of config key `parameter`, concurrently.
/// Unknown keys and unparsable values throw ConfigError before any run starts.
/// An empty value list gives an empty result.
SweepResult sweep(const ScenarioConfig& base, const std::string& parameter, const std::vector<std::string>& values);

/// Splits "a,b,c" (whitespace trimmed; empty string gives no values).
std::vector<std::string> parse_value_list(const std::string& list);

}  // namespace gemsim::harness
