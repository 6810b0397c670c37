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

#include <complex>
#include <optional>
#include <span>
#include <vector>

namespace gemsim::solver {

using cplx = std::complex<double>;

struct ScheduleSegment {
  double t_start = 0;
  double t_end = 0;
  double gradient = 0;  // eta, rad/s per metre
  bool control_on = true;
  double control_scale = 1.0;  // multiplies the on-axis control Rabi frequency
};

/// Piecewise-constant gradient and control timeline covering [0, t_final].
class GradientSchedule {
 public:
  /// Throws ConfigError unless segments are non-empty, start at 0, have
  /// positive length and are contiguous.
  explicit GradientSchedule(std::vector<ScheduleSegment> segments);

  std::span<const ScheduleSegment> segments() const noexcept { return segments_; }
  double t_final() const noexcept { return segments_.back().t_end; }

  /// Number of sign changes between consecutive non-zero gradients.
  int sign_flips() const noexcept;
  bool is_standard_echo() const noexcept { return sign_flips() == 1; }
  /// Start time of the first segment whose gradient sign differs from the previous one.
  std::optional<double> flip_time() const noexcept;

  const ScheduleSegment& segment_at(double t) const noexcept;

  /// Same timeline with every gradient negated.
  GradientSchedule reversed() const;

 private:
  std::vector<ScheduleSegment> segments_;
};

/// Timeline of a control-gated echo. The control is on for [0, write_end) and
/// [read_start, end); the gradient flips from +eta to -eta at `flip`.
struct EchoTiming {
  double write_end = 0;
  double flip = 0;
  double read_start = 0;
  double end = 0;
};

/// Standard echo schedule. With `control_during_storage` the control stays on
/// throughout and only the flip splits the timeline.
GradientSchedule echo_schedule(double gradient, const EchoTiming& timing, bool control_during_storage);

/// Uniformly sampled complex temporal envelope; sample i sits at t0 + i dt.
class PulseEnvelope {
 public:
  PulseEnvelope() = default;
  PulseEnvelope(std::vector<cplx> samples, double dt, double t0 = 0.0);

  std::span<const cplx> samples() const noexcept { return samples_; }
  double dt() const noexcept { return dt_; }
  double t0() const noexcept { return t0_; }
  double t_end() const noexcept { return t0_ + dt_ * (samples_.empty() ? 0.0 : samples_.size() - 1.0); }
  double time(std::size_t i) const noexcept { return t0_ + dt_ * static_cast<double>(i); }

  /// Linear interpolation, zero outside the sampled span.
  cplx at(double t) const noexcept;

  /// Trapezoidal sum of |E|^2 dt.
  double energy() const noexcept;

  /// Time of the largest |E|^2.
  double peak_time() const noexcept;

 private:
  std::vector<cplx> samples_;
  double dt_ = 1.0;
  double t0_ = 0.0;
};

/// Gaussian envelope exp(-(t - centre)^2 / (2 sigma^2)) with intensity FWHM
/// `fwhm` (sigma = fwhm / (2 sqrt(ln 2))), truncated at +-4 sigma.
PulseEnvelope gaussian_pulse(double fwhm, double centre, double dt, cplx amplitude = 1.0);

/// Amplitude standard deviation for an intensity FWHM.
double gaussian_sigma(double fwhm) noexcept;

}  // namespace gemsim::solver
