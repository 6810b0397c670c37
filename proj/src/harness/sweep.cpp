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

#include "gemsim/harness/sweep.hpp"

#include <charconv>
#include <future>

#include "gemsim/core/error.hpp"

namespace gemsim::harness {

std::vector<std::string> parse_value_list(const std::string& list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return std::string();
    return s.substr(b, s.find_last_not_of(" \t") - b + 1);
  };
  if (trim(list).empty()) return out;
  while (true) {
    const auto pos = list.find(',', start);
    out.push_back(trim(list.substr(start, pos == std::string::npos ? std::string::npos : pos - start)));
    if (pos == std::string::npos) break;
    start = pos + 1;
  }
  for (const auto& v : out)
    if (v.empty()) throw ConfigError("empty entry in value list '" + list + "'");
  return out;
}

SweepResult sweep(const ScenarioConfig& base, const std::string& parameter, const std::vector<std::string>& values) {
  if (!is_config_key(parameter)) throw ConfigError("unknown sweep parameter '" + parameter + "'");
  SweepResult out;
  out.parameter = parameter;
  out.values = values;

  // Build every config up front so type errors surface before any work runs.
  std::vector<ScenarioConfig> configs;
  for (const auto& v : values) {
    auto entries = base.entries;
    entries[parameter] = v;
    configs.push_back(build_config(entries, base.source_dir));
  }
  std::vector<std::future<ScenarioResult>> jobs;
  for (const auto& c : configs) jobs.push_back(std::async(std::launch::async, [&c] { return run_scenario(c); }));
  for (auto& j : jobs) out.results.push_back(j.get());
  return out;
}

Table SweepResult::table() const {
  Table t;
  t.columns.push_back(parameter);
  for (const auto& c : result_columns()) t.columns.push_back(c);
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto sub = results[i].table();
    for (const auto& row : sub.rows) {
      std::vector<Cell> r;
      r.reserve(row.size() + 1);
      // Numeric values stay numeric so the merged CSV is uniformly formatted.
      Cell lead = values[i];
      double d = 0;
      const auto& v = values[i];
      const auto res = std::from_chars(v.data(), v.data() + v.size(), d);
      if (res.ec == std::errc() && res.ptr == v.data() + v.size()) lead = d;
      r.push_back(lead);
      r.insert(r.end(), row.begin(), row.end());
      t.rows.push_back(std::move(r));
    }
  }
  return t;
}

}  // namespace gemsim::harness
