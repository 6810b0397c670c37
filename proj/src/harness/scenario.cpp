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

#include "gemsim/harness/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <random>

#include "gemsim/core/error.hpp"
#include "gemsim/harness/pipeline.hpp"
#include "gemsim/modes/analysis.hpp"
#include "gemsim/modes/gaussian_fit.hpp"
#include "gemsim/modes/hermite_gauss.hpp"
#include "gemsim/modes/image_mask.hpp"
#include "gemsim/solver/efficiency.hpp"

namespace gemsim::harness {
namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

std::vector<modes::ModeIndex> default_modes(const ScenarioConfig& c) {
  if (c.entries.contains("input.mode") || c.entries.contains("input.modes")) return c.input.modes;
  if (c.scenario == "tem20_peak_ratio") return {{2, 0}};
  if (c.scenario == "selective_recall") return {{1, 0}};
  if (c.scenario == "tem_mn_decay") return {{0, 0}, {1, 0}, {1, 1}, {2, 0}};
  return c.input.modes;
}

std::string time_tag(double us) {
  char buf[32];
  if (us == std::floor(us)) std::snprintf(buf, sizeof buf, "%.0f", us);
  else std::snprintf(buf, sizeof buf, "%g", us);
  return buf;
}

}  // namespace

const std::vector<std::string>& result_columns() {
  static const std::vector<std::string> cols{"label",      "storage_time_us", "total_efficiency", "overlap_efficiency",
                                             "sigma2_x_m2", "sigma2_y_m2",     "sigma2_m2",        "peak_ratio",
                                             "dark_fraction", "tau_fit_us",    "image_norm"};
  return cols;
}

Table ScenarioResult::table() const {
  Table t;
  t.columns = result_columns();
  for (const auto& r : rows)
    t.rows.push_back({r.label, r.storage_time_us, r.total_efficiency, r.overlap_efficiency, r.sigma2_x, r.sigma2_y,
                      r.sigma2, r.peak_ratio, r.dark_fraction, r.tau_fit_us, r.image_norm});
  return t;
}

std::vector<std::pair<std::string, TransverseField>> scenario_inputs(const ScenarioConfig& c,
                                                                     const TransverseGrid& grid) {
  std::vector<std::pair<std::string, TransverseField>> out;
  std::string image = c.input.image;
  if (image.empty() && c.scenario == "image_storage") image = "checkerboard";
  if (!image.empty()) {
    const double waist = c.input.carrier_waist > 0 ? c.input.carrier_waist : c.memory.probe_waist;
    modes::GrayImage img;
    if (image == "checkerboard") {
      img = modes::checkerboard(c.input.image_px, c.input.image_px, c.input.checker_period_px);
    } else if (image == "left" || image == "right") {
      img = modes::half_plane(c.input.image_px, c.input.image_px, image == "left" ? modes::Half::left : modes::Half::right);
    } else {
      std::filesystem::path path(image);
      if (path.is_relative() && !c.source_dir.empty()) path = c.source_dir / path;
      img = modes::read_pgm(path);
    }
    out.emplace_back("image", modes::load_image_mask(img, waist, grid));
    return out;
  }
  for (const auto& m : default_modes(c)) out.emplace_back(mode_label(m), modes::hermite_gauss(m, c.memory.probe_waist, grid));
  return out;
}

ScenarioResult run_scenario(const ScenarioConfig& config) {
  ScenarioConfig c = config;
  // selective_recall masks the left half unless the config names a mask (including "none").
  if (c.scenario == "selective_recall" && !c.entries.contains("control.mask")) c.control.mask = "left";
  const auto grid = TransverseGrid::square(c.grid_n, c.grid_extent);
  const Pipeline pipeline(c, grid);
  const auto inputs = scenario_inputs(c, grid);

  // Longitudinal efficiencies depend only on the storage time.
  std::map<double, double> longitudinal;
  if (c.pipeline == PipelineMode::factorized)
    for (double t : c.storage_times_us) longitudinal[t] = pipeline.longitudinal_efficiency(from_us(t));

  std::mt19937_64 rng(c.seed);
  std::normal_distribution<double> noise(0.0, 1.0);
  const bool masked = std::any_of(pipeline.mask().transmission.begin(), pipeline.mask().transmission.end(),
                                  [](double v) { return v != 1.0; });

  ScenarioResult result;
  result.scenario = c.scenario;
  for (const auto& [label, input] : inputs) {
    std::vector<Intensity> outputs;
    const std::size_t first = result.rows.size();
    for (double t_us : c.storage_times_us) {
      const double t = from_us(t_us);
      std::optional<double> eta;
      if (const auto it = longitudinal.find(t_us); it != longitudinal.end()) eta = it->second;
      const auto out = pipeline.recall(input, t, eta);
      auto eff = solver::recall_efficiencies(input, out, input);
      if (c.noise_fraction > 0.0) {
        const double f = std::max(0.0, 1.0 + c.noise_fraction * noise(rng));
        eff.total *= f;
        eff.overlap *= f;
      }
      ScenarioRow row;
      row.label = label;
      row.storage_time_us = t_us;
      row.total_efficiency = eff.total;
      row.overlap_efficiency = eff.overlap;
      const auto I = intensity(out);
      row.sigma2_x = row.sigma2_y = row.sigma2 = nan;
      if (total_power(out) > 0.0) {
        if (c.sigma == SigmaMethod::fit) {
          const auto fit = modes::fit_gaussian_2d(I);
          if (!fit.converged) warn(label + " at " + time_tag(t_us) + " us: " + fit.diagnostic);
          row.sigma2_x = fit.var_x;
          row.sigma2_y = fit.var_y;
        } else {
          const auto m = modes::intensity_moments(I);
          row.sigma2_x = m.var_x;
          row.sigma2_y = m.var_y;
        }
        row.sigma2 = 0.5 * (row.sigma2_x + row.sigma2_y);
      }
      row.peak_ratio = nan;
      if (label == "20") {
        try {
          row.peak_ratio = modes::tem20_peak_ratio(I);
        } catch (const modes::PeakDetectionError& e) {
          warn(std::string("peak ratio at ") + time_tag(t_us) + " us: " + e.what());
        }
      }
      row.dark_fraction = nan;
      if (masked) {
        double dark = 0.0, all = 0.0;
        for (std::size_t k = 0; k < I.values.size(); ++k) {
          all += I.values[k];
          if (pipeline.mask().transmission[k] < 0.5) dark += I.values[k];
        }
        row.dark_fraction = all > 0.0 ? dark / all : nan;
      }
      row.tau_fit_us = nan;
      row.image_norm = nan;
      result.rows.push_back(row);
      outputs.push_back(I);
    }

    // Decay constant: three-point smoothing first when noise was injected.
    std::vector<std::pair<double, double>> series;
    std::vector<double> effs;
    for (std::size_t i = first; i < result.rows.size(); ++i) effs.push_back(result.rows[i].total_efficiency);
    if (c.noise_fraction > 0.0 && effs.size() >= 3) effs = smooth_three_point(effs);
    for (std::size_t i = first; i < result.rows.size(); ++i)
      series.emplace_back(result.rows[i].storage_time_us, effs[i - first]);
    try {
      const auto fit = fit_exponential_decay(series);
      result.fits[label] = fit;
      for (std::size_t i = first; i < result.rows.size(); ++i) result.rows[i].tau_fit_us = fit.tau;
    } catch (const ConfigError&) {
      // Fewer than three points or a zero efficiency: no decay constant.
    }

    if (c.write_images) {
      const auto in_I = intensity(input);
      double shared = *std::max_element(in_I.values.begin(), in_I.values.end());
      for (const auto& o : outputs) shared = std::max(shared, *std::max_element(o.values.begin(), o.values.end()));
      const std::string stem = c.scenario + "_" + label;
      const double in_norm = c.shared_scale ? shared : 0.0;
      result.images.push_back({stem + "_input.pgm", modes::render_intensity(in_I, in_norm),
                               in_norm > 0 ? in_norm : *std::max_element(in_I.values.begin(), in_I.values.end())});
      for (std::size_t i = 0; i < outputs.size(); ++i) {
        const double own = *std::max_element(outputs[i].values.begin(), outputs[i].values.end());
        const double norm = c.shared_scale ? shared : own;
        auto& row = result.rows[first + i];
        row.image_norm = norm;
        if (norm > 0.0)
          result.images.push_back(
              {stem + "_t" + time_tag(row.storage_time_us) + "us.pgm", modes::render_intensity(outputs[i], norm), norm});
      }
    }
  }
  return result;
}

std::mutex& directory_mutex(const std::filesystem::path& dir) {
  static std::mutex registry_mutex;
  static std::map<std::string, std::unique_ptr<std::mutex>> registry;
  std::error_code ec;
  auto key = std::filesystem::weakly_canonical(dir, ec);
  const std::string k = ec ? dir.lexically_normal().string() : key.string();
  std::lock_guard lock(registry_mutex);
  auto& m = registry[k];
  if (!m) m = std::make_unique<std::mutex>();
  return *m;
}

void write_result(const ScenarioResult& result, const std::filesystem::path& dir, bool images) {
  std::lock_guard lock(directory_mutex(dir));
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  write_csv(dir / (result.scenario + ".csv"), result.table());
  if (images)
    for (const auto& img : result.images) modes::write_pgm(dir / img.name, img.image);
}

}  // namespace gemsim::harness
