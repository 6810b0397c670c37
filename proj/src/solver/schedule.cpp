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

#include "gemsim/solver/schedule.hpp"

#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"

namespace gemsim::solver {

GradientSchedule::GradientSchedule(std::vector<ScheduleSegment> segments) : segments_(std::move(segments)) {
  if (segments_.empty()) throw ConfigError("schedule has no segments");
  if (segments_.front().t_start != 0.0) throw ConfigError("schedule must start at t = 0");
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    const auto& s = segments_[i];
    if (!(s.t_end > s.t_start)) throw ConfigError("schedule segment has non-positive length");
    if (i > 0 && std::abs(s.t_start - segments_[i - 1].t_end) > 1e-15 * std::max(1.0, s.t_start))
      throw ConfigError("schedule segments must be contiguous and non-overlapping");
    if (!std::isfinite(s.gradient) || !(s.control_scale >= 0.0)) throw ConfigError("schedule segment values invalid");
  }
}

int GradientSchedule::sign_flips() const noexcept {
  int flips = 0;
  double last = 0.0;
  for (const auto& s : segments_) {
    if (s.gradient == 0.0) continue;
    if (last != 0.0 && (s.gradient > 0) != (last > 0)) ++flips;
    last = s.gradient;
  }
  return flips;
}

std::optional<double> GradientSchedule::flip_time() const noexcept {
  double last = 0.0;
  for (const auto& s : segments_) {
    if (s.gradient == 0.0) continue;
    if (last != 0.0 && (s.gradient > 0) != (last > 0)) return s.t_start;
    last = s.gradient;
  }
  return std::nullopt;
}

const ScheduleSegment& GradientSchedule::segment_at(double t) const noexcept {
  for (const auto& s : segments_)
    if (t < s.t_end) return s;
  return segments_.back();
}

GradientSchedule GradientSchedule::reversed() const {
  auto segs = segments_;
  for (auto& s : segs) s.gradient = -s.gradient;
  return GradientSchedule(std::move(segs));
}

GradientSchedule echo_schedule(double gradient, const EchoTiming& t, bool control_during_storage) {
  if (control_during_storage) {
    return GradientSchedule({{0.0, t.flip, gradient, true, 1.0}, {t.flip, t.end, -gradient, true, 1.0}});
  }
  if (!(t.write_end <= t.flip && t.flip <= t.read_start && t.read_start < t.end))
    throw ConfigError("echo timing must satisfy write_end <= flip <= read_start < end");
  std::vector<ScheduleSegment> segs;
  segs.push_back({0.0, t.write_end, gradient, true, 1.0});
  if (t.flip > t.write_end) segs.push_back({t.write_end, t.flip, gradient, false, 1.0});
  if (t.read_start > t.flip) segs.push_back({t.flip, t.read_start, -gradient, false, 1.0});
  segs.push_back({t.read_start, t.end, -gradient, true, 1.0});
  return GradientSchedule(std::move(segs));
}

PulseEnvelope::PulseEnvelope(std::vector<cplx> samples, double dt, double t0)
    : samples_(std::move(samples)), dt_(dt), t0_(t0) {
  if (!(dt > 0.0)) throw ConfigError("pulse sample spacing must be positive");
  for (const auto& s : samples_)
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) throw ConfigError("pulse samples must be finite");
}

cplx PulseEnvelope::at(double t) const noexcept {
  if (samples_.empty()) return 0.0;
  const double f = (t - t0_) / dt_;
  if (f < 0.0 || f > samples_.size() - 1.0) return 0.0;
  const auto i = static_cast<std::size_t>(f);
  if (i + 1 >= samples_.size()) return samples_.back();
  const double w = f - static_cast<double>(i);
  return (1.0 - w) * samples_[i] + w * samples_[i + 1];
}

double PulseEnvelope::energy() const noexcept {
  if (samples_.size() < 2) return 0.0;
  double acc = 0.5 * (std::norm(samples_.front()) + std::norm(samples_.back()));
  for (std::size_t i = 1; i + 1 < samples_.size(); ++i) acc += std::norm(samples_[i]);
  return acc * dt_;
}

double PulseEnvelope::peak_time() const noexcept {
  if (samples_.empty()) return t0_;
  const auto it = std::max_element(samples_.begin(), samples_.end(),
                                   [](const cplx& a, const cplx& b) { return std::norm(a) < std::norm(b); });
  return time(static_cast<std::size_t>(it - samples_.begin()));
}

double gaussian_sigma(double fwhm) noexcept { return fwhm / (2.0 * std::sqrt(std::log(2.0))); }

PulseEnvelope gaussian_pulse(double fwhm, double centre, double dt, cplx amplitude) {
  if (!(fwhm > 0.0) || !(dt > 0.0)) throw ConfigError("gaussian_pulse needs positive FWHM and dt");
  const double sigma = gaussian_sigma(fwhm);
  const auto half = static_cast<std::size_t>(std::floor(4.0 * sigma / dt));
  std::vector<cplx> s(2 * half + 1);
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double tau = (static_cast<double>(i) - static_cast<double>(half)) * dt;
    s[i] = amplitude * std::exp(-tau * tau / (2.0 * sigma * sigma));
  }
  return PulseEnvelope(std::move(s), dt, centre - static_cast<double>(half) * dt);
}

}  // namespace gemsim::solver
