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

// gemsim command-line driver. Exit codes: 0 ok, 2 config, 3 numerical, 4 I/O.
// GEMSIM_OUTPUT_DIR overrides the output directory of every subcommand.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>
#include <set>

#include <CLI11.hpp>

#include "gemsim/core/error.hpp"
#include "gemsim/core/units.hpp"
#include "gemsim/harness/config.hpp"
#include "gemsim/harness/csv.hpp"
#include "gemsim/harness/fitting.hpp"
#include "gemsim/harness/scenario.hpp"
#include "gemsim/harness/sweep.hpp"
#include "gemsim/modes/hermite_gauss.hpp"
#include "gemsim/modes/pgm.hpp"
#include "gemsim/transport/estimates.hpp"

namespace fs = std::filesystem;
using namespace gemsim;

namespace {

fs::path output_dir(const fs::path& fallback) {
  if (const char* env = std::getenv(harness::output_dir_env); env && *env) return env;
  return fallback;
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
}

int cmd_simulate(const std::string& config_path) {
  const auto cfg = harness::load_config(config_path);
  const auto result = harness::run_scenario(cfg);
  const auto dir = harness::resolve_output_dir(cfg);
  harness::write_result(result, dir, cfg.write_images);
  std::printf("%s: %zu rows -> %s\n", result.scenario.c_str(), result.rows.size(),
              (dir / (result.scenario + ".csv")).string().c_str());
  for (const auto& [label, fit] : result.fits)
    std::printf("  %s: tau = %.4g us%s\n", label.c_str(), fit.tau, fit.curvature_flagged ? " (curved)" : "");
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& param, const std::string& values) {
  const auto cfg = harness::load_config(config_path);
  const auto res = harness::sweep(cfg, param, harness::parse_value_list(values));
  const auto dir = harness::resolve_output_dir(cfg);
  std::lock_guard lock(harness::directory_mutex(dir));
  ensure_dir(dir);
  const auto path = dir / ("sweep_" + cfg.scenario + ".csv");
  harness::write_csv(path, res.table());
  std::printf("sweep %s over %zu values -> %s\n", param.c_str(), res.values.size(), path.string().c_str());
  return 0;
}

int cmd_modes(const std::string& render, double waist_mm, int n, double extent_mm) {
  const auto comma = render.find(',');
  if (comma == std::string::npos) throw ConfigError("--render expects m,n");
  modes::ModeIndex idx;
  try {
    idx = {std::stoi(render.substr(0, comma)), std::stoi(render.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ConfigError("--render expects two integers m,n");
  }
  if (!(waist_mm > 0)) throw ConfigError("--waist must be positive");
  const double extent = extent_mm > 0 ? from_mm(extent_mm)
                                      : 5.0 * from_mm(waist_mm) * std::sqrt(std::max(idx.m, idx.n) + 1.0);
  const auto grid = TransverseGrid::square(n, extent);
  const auto field = modes::hermite_gauss(idx, from_mm(waist_mm), grid);
  const auto dir = output_dir(".");
  ensure_dir(dir);
  const auto path = dir / ("mode_" + harness::mode_label(idx) + ".pgm");
  modes::write_pgm(path, modes::render_intensity(intensity(field)));
  std::printf("TEM-%d%d waist %.4g mm, %dx%d over %.4g mm -> %s\n", idx.m, idx.n, waist_mm, n, n, extent * 1e3,
              path.string().c_str());
  return 0;
}

int cmd_fit(const std::string& csv, const std::string& model, std::string xcol, std::string ycol) {
  const auto table = harness::read_csv(fs::path(csv));
  if (table.columns.size() < 2) throw ConfigError("CSV needs at least two columns");
  auto find = [&](const std::string& name, std::size_t fallback) {
    if (name.empty()) return fallback;
    const auto c = table.column(name);
    if (!c) throw ConfigError("CSV has no column '" + name + "'");
    return *c;
  };
  const auto label_col = table.column("label");
  std::size_t xi = 0, yi = 1;
  if (table.column("storage_time_us") && table.column("total_efficiency")) {
    xi = *table.column("storage_time_us");
    yi = *table.column("total_efficiency");
  }
  xi = find(xcol, xi);
  yi = find(ycol, yi);
  std::map<std::string, std::vector<std::pair<double, double>>> groups;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::string label = "all";
    if (label_col) {
      const auto& cell = table.rows[r][*label_col];
      label = std::holds_alternative<std::string>(cell) ? std::get<std::string>(cell) : harness::format_number(std::get<double>(cell));
    }
    groups[label].emplace_back(table.number(r, xi), table.number(r, yi));
  }
  if (groups.empty()) throw ConfigError("CSV has no data rows");
  std::printf("label,model,p0,p1,residual_rms,flag\n");
  for (const auto& [label, series] : groups) {
    if (model == "exp") {
      const auto f = harness::fit_exponential_decay(series);
      std::printf("%s,exp,%.10g,%.10g,%.4g,%s\n", label.c_str(), f.amplitude, f.tau, f.residual_rms,
                  f.curvature_flagged ? "curvature" : "ok");
    } else {
      const auto f = harness::fit_linear(series);
      std::printf("%s,linear,%.10g,%.10g,%.4g,r2=%.6f\n", label.c_str(), f.intercept, f.slope, f.residual_rms,
                  f.r_squared);
    }
  }
  return 0;
}

int cmd_estimate_d(double temp_k, double torr, double rate, const std::string& convention, double mass_u) {
  if (!(temp_k > 0) || !(torr > 0) || !(rate > 0) || !(mass_u > 0))
    throw ConfigError("temperature, pressure, rate and mass must be positive");
  const double gamma_coll = from_MHz(rate * torr, parse_rate_convention(convention));
  const double mass = mass_u * constants::atomic_mass_unit;
  const double vbar = transport::mean_thermal_speed(temp_k, mass);
  const double d = transport::kinetic_diffusion_coefficient(temp_k, mass, gamma_coll);
  std::printf("mean_speed_m_s = %.6g\ncollision_rate_s = %.6g\nD_cm2_s = %.6g\n", vbar, gamma_coll, to_cm2_per_s(d));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gemsim: gradient echo memory simulator"};
  app.require_subcommand(1);

  std::string config_path, param, values, render, csv, model = "exp", xcol, ycol, convention = "angular";
  double waist = 0, extent = 0, temp = 0, torr = 0, rate = 0, mass_u = constants::rb87_mass / constants::atomic_mass_unit;
  int n = 256;

  auto* sim = app.add_subcommand("simulate", "run a scenario config");
  sim->add_option("config", config_path, "scenario config file")->required();

  auto* sw = app.add_subcommand("sweep", "run a scenario over values of one config key");
  sw->add_option("config", config_path, "scenario config file")->required();
  sw->add_option("--param", param, "dotted config key")->required();
  sw->add_option("--values", values, "comma-separated values")->required();

  auto* md = app.add_subcommand("modes", "render a Hermite-Gauss intensity as PGM");
  md->add_option("--render", render, "mode orders m,n")->required();
  md->add_option("--waist", waist, "waist in mm")->required();
  md->add_option("--grid", n, "samples per axis");
  md->add_option("--extent-mm", extent, "grid extent in mm (default scales with the mode)");

  auto* ft = app.add_subcommand("fit", "fit an exponential or linear model to CSV columns");
  ft->add_option("--csv", csv, "input CSV")->required();
  ft->add_option("--model", model, "exp or linear")->check(CLI::IsMember({"exp", "linear"}));
  ft->add_option("--x", xcol, "x column (default storage_time_us or the first column)");
  ft->add_option("--y", ycol, "y column (default total_efficiency or the second column)");

  auto* ed = app.add_subcommand("estimate-d", "kinetic diffusion coefficient from buffer-gas broadening");
  ed->add_option("--temp-K", temp, "temperature in K")->required();
  ed->add_option("--buffer-torr", torr, "buffer-gas pressure in Torr")->required();
  ed->add_option("--rate-MHz-per-torr", rate, "collision rate per Torr in MHz")->required();
  ed->add_option("--rate-convention", convention, "angular or cyclic")->check(CLI::IsMember({"angular", "cyclic"}));
  ed->add_option("--mass-u", mass_u, "atomic mass in u (default 87Rb)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_code(ErrorKind::config);
  }

  try {
    if (*sim) return cmd_simulate(config_path);
    if (*sw) return cmd_sweep(config_path, param, values);
    if (*md) return cmd_modes(render, waist, n, extent);
    if (*ft) return cmd_fit(csv, model, xcol, ycol);
    if (*ed) return cmd_estimate_d(temp, torr, rate, convention, mass_u);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(ErrorKind::io);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(ErrorKind::numerical);
  }
  return 0;
}
