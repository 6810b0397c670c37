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

#include "gemsim/harness/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>

#include "gemsim/core/error.hpp"

namespace gemsim::harness {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  if (trim(s).empty()) return out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value, std::string_view expected) {
  std::ostringstream os;
  os << "config key '" << key << "': cannot parse '" << value << "' as " << expected;
  throw ConfigError(os.str());
}

double to_double(std::string_view key, std::string_view v) {
  double x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end || !std::isfinite(x)) bad_value(key, v, "a finite number");
  return x;
}

long to_long(std::string_view key, std::string_view v) {
  long x = 0;
  const auto* end = v.data() + v.size();
  const auto r = std::from_chars(v.data(), end, x);
  if (r.ec != std::errc() || r.ptr != end) bad_value(key, v, "an integer");
  return x;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "true" || v == "on" || v == "yes" || v == "1") return true;
  if (v == "false" || v == "off" || v == "no" || v == "0") return false;
  bad_value(key, v, "a boolean");
}

double non_negative(std::string_view key, std::string_view v) {
  const double x = to_double(key, v);
  if (x < 0) bad_value(key, v, "a non-negative number");
  return x;
}

double positive(std::string_view key, std::string_view v) {
  const double x = to_double(key, v);
  if (!(x > 0)) bad_value(key, v, "a positive number");
  return x;
}

modes::ModeIndex to_mode(std::string_view key, std::string_view v) {
  // "mn" with single digits, or "m:n".
  long m = 0, n = 0;
  if (const auto colon = v.find(':'); colon != std::string_view::npos) {
    m = to_long(key, trim(v.substr(0, colon)));
    n = to_long(key, trim(v.substr(colon + 1)));
  } else if (v.size() == 2 && std::isdigit(static_cast<unsigned char>(v[0])) &&
             std::isdigit(static_cast<unsigned char>(v[1]))) {
    m = v[0] - '0';
    n = v[1] - '0';
  } else {
    bad_value(key, v, "a mode index like 20 or 2:0");
  }
  if (m < 0 || n < 0 || m > modes::max_mode_order || n > modes::max_mode_order)
    bad_value(key, v, "a mode index with orders in [0, 10]");
  return {static_cast<int>(m), static_cast<int>(n)};
}

// Frequencies are kept as (value, always_cyclic) until the rate convention is known.
struct Rate {
  double value;
  bool cyclic;
};

struct Builder {
  ScenarioConfig cfg;
  std::map<std::string, Rate, std::less<>> rates;
  std::optional<double> raman_depth, density, diffusion, length, control_waist, probe_waist, wavelength, g;
};

using Handler = std::function<void(Builder&, std::string_view key, std::string_view value)>;

void add_rate(std::map<std::string, Handler, std::less<>>& table, const std::string& stem) {
  table[stem + "_MHz"] = [stem](Builder& b, std::string_view k, std::string_view v) {
    if (b.rates.contains(stem)) throw ConfigError("frequency '" + stem + "' given twice");
    b.rates[stem] = {to_double(k, v), false};
  };
  table[stem + "_2piMHz"] = [stem](Builder& b, std::string_view k, std::string_view v) {
    if (b.rates.contains(stem)) throw ConfigError("frequency '" + stem + "' given twice");
    b.rates[stem] = {to_double(k, v), true};
  };
}

const std::map<std::string, Handler, std::less<>>& handlers() {
  static const auto table = [] {
    std::map<std::string, Handler, std::less<>> t;
    t["scenario"] = [](Builder& b, std::string_view k, std::string_view v) {
      const auto& ids = scenario_ids();
      if (std::find(ids.begin(), ids.end(), v) == ids.end()) bad_value(k, v, "a registered scenario id");
      b.cfg.scenario = std::string(v);
    };
    t["seed"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long s = to_long(k, v);
      if (s < 0) bad_value(k, v, "a non-negative integer");
      b.cfg.seed = static_cast<std::uint64_t>(s);
    };
    t["units.rate_convention"] = [](Builder& b, std::string_view, std::string_view v) {
      b.cfg.rate_convention = parse_rate_convention(v);
    };
    for (const char* stem : {"memory.delta", "memory.omega_c", "memory.gamma", "memory.gamma0", "memory.gammac",
                             "memory.bandwidth", "memory.two_photon_offset"})
      add_rate(t, stem);
    t["memory.D_cm2_s"] = [](Builder& b, std::string_view k, std::string_view v) {
      if (b.diffusion) throw ConfigError("diffusion coefficient given twice");
      b.diffusion = from_cm2_per_s(non_negative(k, v));
    };
    t["memory.D_m2_s"] = [](Builder& b, std::string_view k, std::string_view v) {
      if (b.diffusion) throw ConfigError("diffusion coefficient given twice");
      b.diffusion = non_negative(k, v);
    };
    t["memory.control_waist_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.control_waist = v == "inf" ? std::numeric_limits<double>::infinity() : from_mm(positive(k, v));
    };
    t["memory.probe_waist_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.probe_waist = from_mm(positive(k, v));
    };
    t["memory.wavelength_nm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.wavelength = non_negative(k, v) * 1e-9;
    };
    t["memory.length_mm"] = [](Builder& b, std::string_view k, std::string_view v) { b.length = from_mm(positive(k, v)); };
    t["memory.raman_depth"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.raman_depth = non_negative(k, v);
    };
    t["memory.n_m3"] = [](Builder& b, std::string_view k, std::string_view v) { b.density = non_negative(k, v); };
    t["memory.g"] = [](Builder& b, std::string_view k, std::string_view v) { b.g = positive(k, v); };
    t["grid.n"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long n = to_long(k, v);
      if (n != 1 && (n < 8 || n % 2 != 0)) bad_value(k, v, "an even sample count >= 8");
      b.cfg.grid_n = static_cast<int>(n);
    };
    t["grid.extent_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.grid_extent = from_mm(positive(k, v));
    };
    t["input.mode"] = [](Builder& b, std::string_view k, std::string_view v) { b.cfg.input.modes = {to_mode(k, v)}; };
    t["input.modes"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.input.modes.clear();
      for (auto tok : split(v, ',')) b.cfg.input.modes.push_back(to_mode(k, tok));
      if (b.cfg.input.modes.empty()) bad_value(k, v, "a non-empty mode list");
    };
    t["input.image"] = [](Builder& b, std::string_view, std::string_view v) { b.cfg.input.image = std::string(v); };
    t["input.image_px"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long n = to_long(k, v);
      if (n < 2) bad_value(k, v, "an image size >= 2");
      b.cfg.input.image_px = static_cast<int>(n);
    };
    t["input.checker_period_px"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long n = to_long(k, v);
      if (n < 2 || n % 2 != 0) bad_value(k, v, "an even period >= 2");
      b.cfg.input.checker_period_px = static_cast<int>(n);
    };
    t["input.carrier_waist_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.input.carrier_waist = from_mm(positive(k, v));
    };
    t["input.pulse_fwhm_us"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.input.pulse_fwhm = from_us(positive(k, v));
    };
    t["storage.times_us"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.storage_times_us.clear();
      for (auto tok : split(v, ',')) b.cfg.storage_times_us.push_back(non_negative(k, tok));
    };
    t["control.on"] = [](Builder& b, std::string_view k, std::string_view v) { b.cfg.control.on = to_bool(k, v); };
    t["control.mask"] = [](Builder& b, std::string_view, std::string_view v) { b.cfg.control.mask = std::string(v); };
    t["control.offset_x_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.control.offset_x = from_mm(to_double(k, v));
    };
    t["control.offset_y_mm"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.control.offset_y = from_mm(to_double(k, v));
    };
    t["control.burn_exposure_us"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.control.burn_exposure = from_us(non_negative(k, v));
    };
    t["pipeline.mode"] = [](Builder& b, std::string_view k, std::string_view v) {
      if (v == "factorized") b.cfg.pipeline = PipelineMode::factorized;
      else if (v == "full3d") b.cfg.pipeline = PipelineMode::full3d;
      else bad_value(k, v, "factorized or full3d");
    };
    t["pipeline.longitudinal"] = [](Builder& b, std::string_view k, std::string_view v) {
      if (v == "closed_form") b.cfg.longitudinal = LongitudinalModel::closed_form;
      else if (v == "solver") b.cfg.longitudinal = LongitudinalModel::solver;
      else if (v == "none") b.cfg.longitudinal = LongitudinalModel::none;
      else bad_value(k, v, "closed_form, solver or none");
    };
    t["pipeline.storage_steps"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long n = to_long(k, v);
      if (n < 0) bad_value(k, v, "a non-negative integer");
      b.cfg.storage_steps = static_cast<int>(n);
    };
    t["pipeline.nz"] = [](Builder& b, std::string_view k, std::string_view v) {
      const long n = to_long(k, v);
      if (n < 0 || n == 1) bad_value(k, v, "0 (automatic) or an integer >= 2");
      b.cfg.nz = static_cast<int>(n);
    };
    t["analysis.sigma"] = [](Builder& b, std::string_view k, std::string_view v) {
      if (v == "fit") b.cfg.sigma = SigmaMethod::fit;
      else if (v == "moment") b.cfg.sigma = SigmaMethod::moment;
      else bad_value(k, v, "fit or moment");
    };
    t["analysis.noise_fraction"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.noise_fraction = non_negative(k, v);
    };
    t["output.dir"] = [](Builder& b, std::string_view, std::string_view v) { b.cfg.output_dir = std::string(v); };
    t["output.shared_scale"] = [](Builder& b, std::string_view k, std::string_view v) {
      b.cfg.shared_scale = to_bool(k, v);
    };
    t["output.images"] = [](Builder& b, std::string_view k, std::string_view v) { b.cfg.write_images = to_bool(k, v); };
    return t;
  }();
  return table;
}

double rate_or(const Builder& b, const char* stem, RateConvention conv, double fallback) {
  const auto it = b.rates.find(stem);
  if (it == b.rates.end()) return fallback;
  return from_MHz(it->second.value, it->second.cyclic ? RateConvention::cyclic : conv);
}

}  // namespace

const std::vector<std::string>& scenario_ids() {
  static const std::vector<std::string> ids{"tem00_decay",      "het_vs_ccd",       "tem_mn_decay",
                                            "tem20_peak_ratio", "selective_recall", "image_storage"};
  return ids;
}

bool is_config_key(std::string_view key) { return handlers().contains(key); }

ScenarioConfig build_config(const std::map<std::string, std::string>& entries, const std::filesystem::path& source_dir) {
  Builder b;
  // The rate convention must be known before any bare-MHz value is converted,
  // so all handlers only record values; conversion happens below.
  for (const auto& [key, value] : entries) {
    const auto it = handlers().find(key);
    if (it == handlers().end()) throw ConfigError("unknown config key '" + key + "'");
    it->second(b, key, value);
  }
  auto& cfg = b.cfg;
  if (cfg.scenario.empty()) throw ConfigError("config must set 'scenario'");
  cfg.entries = entries;
  cfg.source_dir = source_dir;

  MemoryParams p = MemoryParams::reference_setup();
  const auto conv = cfg.rate_convention;
  if (b.g) p.g = *b.g;
  p.one_photon_detuning = rate_or(b, "memory.delta", conv, p.one_photon_detuning);
  p.control_rabi = rate_or(b, "memory.omega_c", conv, p.control_rabi);
  p.gamma = rate_or(b, "memory.gamma", conv, p.gamma);
  p.gamma0 = rate_or(b, "memory.gamma0", conv, 0.0);
  p.gammac = rate_or(b, "memory.gammac", conv, 0.0);
  const double bandwidth = rate_or(b, "memory.bandwidth", conv, p.gradient * p.length);
  if (b.length) p.length = *b.length;
  p.gradient = bandwidth / p.length;
  if (b.diffusion) p.diffusion = *b.diffusion;
  if (b.control_waist) p.control_waist = *b.control_waist;
  if (b.probe_waist) p.probe_waist = *b.probe_waist;
  if (b.wavelength) p.wavenumber = *b.wavelength > 0 ? constants::two_pi / *b.wavelength : 0.0;
  if (b.density && b.raman_depth) throw ConfigError("set memory.raman_depth or memory.n_m3, not both");
  p.density = b.density ? *b.density : p.density_for_raman_depth(b.raman_depth.value_or(1.0));
  p.two_photon_offset = rate_or(b, "memory.two_photon_offset", conv, p.light_shift());
  p.validate();
  cfg.memory = p;

  auto& t = cfg.storage_times_us;
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1])) throw ConfigError("storage.times_us must be sorted and unique");
  if (t.empty() && cfg.scenario != "image_storage") t = {0, 6, 12, 18, 24, 30, 36, 42, 48, 54, 60};
  if (t.empty()) t = {0, 6};
  return cfg;
}

ScenarioConfig parse_config(std::string_view text, const std::filesystem::path& source_dir) {
  std::map<std::string, std::string> entries;
  int line_no = 0;
  for (auto line : split(text, '\n')) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      std::ostringstream os;
      os << "config line " << line_no << ": expected 'key = value'";
      throw ConfigError(os.str());
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    if (!is_config_key(key)) throw ConfigError("unknown config key '" + key + "' (line " + std::to_string(line_no) + ")");
    if (!entries.emplace(key, value).second) throw ConfigError("config key '" + key + "' given twice");
  }
  return build_config(entries, source_dir);
}

ScenarioConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open config file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading config file " + path.string());
  return parse_config(ss.str(), path.parent_path());
}

std::filesystem::path resolve_output_dir(const ScenarioConfig& config) {
  if (const char* env = std::getenv(output_dir_env); env && *env) return env;
  return config.output_dir;
}

double burn_exposure(const ScenarioConfig& config) noexcept {
  return config.control.burn_exposure >= 0 ? config.control.burn_exposure : config.input.pulse_fwhm;
}

std::string mode_label(modes::ModeIndex idx) {
  if (idx.m < 10 && idx.n < 10) return std::to_string(idx.m) + std::to_string(idx.n);
  return std::to_string(idx.m) + ":" + std::to_string(idx.n);
}

}  // namespace gemsim::harness
