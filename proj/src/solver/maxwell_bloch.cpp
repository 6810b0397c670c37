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

#include "gemsim/solver/maxwell_bloch.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "gemsim/core/error.hpp"
#include "gemsim/core/fft.hpp"
#include "gemsim/core/units.hpp"
#include "gemsim/kernels/kernels.hpp"

namespace gemsim::solver {
namespace {

constexpr cplx I{0.0, 1.0};
using constants::speed_of_light;

double max_control_scale(const GradientSchedule& schedule) {
  double s = 0.0;
  for (const auto& seg : schedule.segments())
    if (seg.control_on) s = std::max(s, seg.control_scale);
  return s;
}

double max_abs_gradient(const GradientSchedule& schedule) {
  double e = 0.0;
  for (const auto& seg : schedule.segments()) e = std::max(e, std::abs(seg.gradient));
  return e;
}

// Rate bound for the non-stiff remainder; `profile_max` is the largest
// transverse control multiplier.
double remainder_rate(const MemoryParams& p, const GradientSchedule& schedule, SolverMode mode, double profile_max) {
  const double om = p.control_rabi * max_control_scale(schedule) * profile_max;
  const double om2 = om * om;
  const double g13 = p.gamma + 0.5 * (p.gamma0 + p.gammac);
  const double d2 = p.one_photon_detuning * p.one_photon_detuning + g13 * g13;
  const double coupling = p.g * p.g * p.density / speed_of_light;
  double rate = std::abs(p.two_photon_offset) + max_abs_gradient(schedule) * 0.5 * p.length;
  rate = std::max(rate, p.gamma0 + p.gammac);
  if (d2 > 0.0) {
    rate = std::max(rate, std::abs(p.two_photon_offset) + max_abs_gradient(schedule) * 0.5 * p.length +
                              2.0 * om2 / std::sqrt(d2));
    rate = std::max(rate, om2 * g13 / d2);
    rate = std::max(rate, coupling * om2 * p.length / d2);
  }
  if (mode == SolverMode::three_level)
    rate = std::max({rate, std::abs(p.one_photon_detuning), om, g13});
  return rate;
}

double bound_from_rate(double rate, double t_final) { return rate > 0.0 ? 0.1 / rate : t_final / 16.0; }

class Engine {
 public:
  Engine(const MemoryParams& params, const TransverseGrid& grid, std::vector<cplx> mode_in, std::vector<double> profile,
         bool diffraction, const SolverOptions& opt)
      : p_(params),
        grid_(grid),
        mode_(opt.mode),
        nz_(opt.nz),
        nt_(static_cast<int>(grid.size())),
        a_in_(std::move(mode_in)),
        profile_(std::move(profile)) {
    if (nz_ < 2) throw ConfigError("nz must be at least 2");
    if (mode_ == SolverMode::adiabatic && p_.one_photon_detuning == 0.0)
      throw ConfigError("adiabatic elimination needs a non-zero one-photon detuning");
    dz_ = p_.length / (nz_ - 1);
    z_.resize(nz_);
    for (int j = 0; j < nz_; ++j) z_[j] = -0.5 * p_.length + j * dz_;
    g13_ = p_.gamma + 0.5 * (p_.gamma0 + p_.gammac);
    d13_ = cplx(p_.one_photon_detuning, g13_);
    if (nt_ > 1) {
      fft_.emplace(grid_.nx(), grid_.ny());
      k2_.resize(nt_);
      for (int iy = 0; iy < grid_.ny(); ++iy)
        for (int ix = 0; ix < grid_.nx(); ++ix) {
          const double kx = grid_.kx(ix), ky = grid_.ky(iy);
          k2_[grid_.index(ix, iy)] = kx * kx + ky * ky;
        }
      diffract_ = diffraction && p_.wavenumber > 0.0;
      if (diffract_) {
        diffraction_.resize(nt_);
        for (int q = 0; q < nt_; ++q)
          diffraction_[q] = std::exp(-I * k2_[q] * dz_ / (2.0 * p_.wavenumber)) / static_cast<double>(nt_);
      }
    }
    const std::size_t n = static_cast<std::size_t>(nz_) * nt_;
    const std::size_t ny = mode_ == SolverMode::adiabatic ? n : 2 * n;
    y_.assign(ny, 0.0);
    field_.assign(n, 0.0);
    for (auto* v : {&k1_, &k2v_, &k3_, &k4_, &t1_, &t2_, &lin_, &e_half_, &e_full_}) v->assign(ny, 0.0);
    omega_.assign(nt_, 0.0);
    source_.assign(nt_, 0.0);
    b_.assign(nt_, 0.0);
  }

  std::size_t cells() const noexcept { return static_cast<std::size_t>(nz_) * nt_; }
  std::span<const cplx> rho12() const noexcept {
    return mode_ == SolverMode::adiabatic ? std::span<const cplx>(y_) : std::span<const cplx>(y_).subspan(cells());
  }
  const std::vector<double>& z() const noexcept { return z_; }
  std::span<const cplx> output_slice() const noexcept {
    return std::span<const cplx>(field_).subspan(cells() - nt_, nt_);
  }

  void configure(const ScheduleSegment& seg, double h) {
    control_off_ = !seg.control_on || seg.control_scale == 0.0 || p_.control_rabi == 0.0;
    const double om0 = control_off_ ? 0.0 : p_.control_rabi * seg.control_scale;
    for (int q = 0; q < nt_; ++q) omega_[q] = om0 * (profile_.empty() ? 1.0 : profile_[q]);
    const double coupling = p_.g * p_.density / speed_of_light;
    const std::size_t n = cells();
    if (mode_ == SolverMode::adiabatic) {
      a_ = -I * p_.g * coupling / d13_;
      ea_ = std::exp(a_ * dz_);
      for (int q = 0; q < nt_; ++q) {
        source_[q] = -I * omega_[q] * p_.g / d13_;
        b_[q] = -I * coupling * omega_[q] / d13_;
      }
      for (int j = 0; j < nz_; ++j)
        for (int q = 0; q < nt_; ++q) {
          const double om2 = omega_[q] * omega_[q];
          lin_[j * nt_ + q] = -(p_.gamma0 + p_.gammac) + I * (p_.two_photon_offset + seg.gradient * z_[j]) -
                              I * om2 / p_.one_photon_detuning - I * om2 / d13_;
        }
    } else {
      kappa_ = I * coupling;
      for (std::size_t c = 0; c < n; ++c) lin_[c] = I * p_.one_photon_detuning - g13_;
      for (int j = 0; j < nz_; ++j)
        for (int q = 0; q < nt_; ++q) {
          const double om2 = omega_[q] * omega_[q];
          lin_[n + j * nt_ + q] = -(p_.gamma0 + p_.gammac) + I * (p_.two_photon_offset + seg.gradient * z_[j]) -
                                  I * om2 / p_.one_photon_detuning;
        }
    }
    for (std::size_t c = 0; c < lin_.size(); ++c) {
      e_half_[c] = std::exp(lin_[c] * (0.5 * h));
      e_full_[c] = std::exp(lin_[c] * h);
    }
    if (p_.diffusion > 0.0 && nt_ > 1) {
      diffusion_.resize(nt_);
      for (int q = 0; q < nt_; ++q) diffusion_[q] = std::exp(-p_.diffusion * k2_[q] * h) / static_cast<double>(nt_);
    }
  }

  // Field along z for the given state, with e_in entering at z = -L/2.
  void sweep(cplx e_in, std::span<const cplx> y) {
    const bool adiabatic = mode_ == SolverMode::adiabatic;
    const cplx* rho = y.data();  // rho12 (adiabatic) or rho13 leads the state
    const double hz = 0.5 * dz_;
    for (int q = 0; q < nt_; ++q) field_[q] = e_in * a_in_[q];
    for (int j = 0; j + 1 < nz_; ++j) {
      const cplx* cur = field_.data() + static_cast<std::size_t>(j) * nt_;
      cplx* nxt = field_.data() + static_cast<std::size_t>(j + 1) * nt_;
      const cplx* r0 = rho + static_cast<std::size_t>(j) * nt_;
      const cplx* r1 = r0 + nt_;
      if (adiabatic) {
        for (int q = 0; q < nt_; ++q) nxt[q] = ea_ * (cur[q] + hz * b_[q] * r0[q]);
      } else {
        for (int q = 0; q < nt_; ++q) nxt[q] = cur[q] + hz * kappa_ * r0[q];
      }
      if (diffract_) {
        std::span<cplx> s(nxt, nt_);
        fft_->forward(s);
        kernels::multiply(s, diffraction_);
        fft_->inverse(s);
      }
      if (adiabatic) {
        for (int q = 0; q < nt_; ++q) nxt[q] += hz * b_[q] * r1[q];
      } else {
        for (int q = 0; q < nt_; ++q) nxt[q] += hz * kappa_ * r1[q];
      }
    }
  }

  void rhs(cplx e_in, std::span<const cplx> y, std::span<cplx> k) {
    sweep(e_in, y);
    const std::size_t n = cells();
    if (mode_ == SolverMode::adiabatic) {
      for (std::size_t c = 0; c < n; ++c) k[c] = source_[c % nt_] * field_[c];
    } else {
      for (std::size_t c = 0; c < n; ++c) {
        const cplx iom = I * omega_[c % nt_];
        k[c] = I * p_.g * field_[c] + iom * y[n + c];
        k[n + c] = iom * y[c];
      }
    }
  }

  // One Lawson-RK4 step of length h from t. Leaves field_ at time t.
  void step(double t, double h, const PulseEnvelope& input) {
    const cplx e0 = input.at(t);
    if (mode_ == SolverMode::adiabatic && control_off_) {
      // Nothing couples into the coherence: exact rotation, free propagation for the output.
      sweep(e0, y_);
      kernels::multiply(y_, e_full_);
    } else {
      rhs(e0, y_, k1_);
      const std::vector<cplx> field_t = field_;
      // stage 2
      t1_ = y_;
      kernels::axpy(t1_, 0.5 * h, k1_);
      kernels::multiply(t1_, e_half_);
      rhs(input.at(t + 0.5 * h), t1_, k2v_);
      // stage 3
      t1_ = y_;
      kernels::multiply(t1_, e_half_);  // e_half y
      t2_ = t1_;
      kernels::axpy(t2_, 0.5 * h, k2v_);
      rhs(input.at(t + 0.5 * h), t2_, k3_);
      // stage 4
      t1_ = y_;
      kernels::multiply(t1_, e_full_);  // e_full y
      t2_ = k3_;
      kernels::multiply(t2_, e_half_);
      for (std::size_t c = 0; c < t2_.size(); ++c) t2_[c] = t1_[c] + h * t2_[c];
      rhs(input.at(t + h), t2_, k4_);
      // combine
      kernels::multiply(k1_, e_full_);
      for (std::size_t c = 0; c < k2v_.size(); ++c) k2v_[c] += k3_[c];
      kernels::multiply(k2v_, e_half_);
      y_ = t1_;
      kernels::axpy(y_, h / 6.0, k1_);
      kernels::axpy(y_, h / 3.0, k2v_);
      kernels::axpy(y_, h / 6.0, k4_);
      field_ = field_t;
    }
    diffuse(h);
  }

  void diffuse(double h) {
    if (!(p_.diffusion > 0.0)) return;
    const std::size_t n = cells();
    const std::size_t blocks = y_.size() / n;
    for (std::size_t b = 0; b < blocks; ++b) {
      cplx* base = y_.data() + b * n;
      if (nt_ > 1) {
        for (int j = 0; j < nz_; ++j) {
          std::span<cplx> s(base + static_cast<std::size_t>(j) * nt_, nt_);
          fft_->forward(s);
          kernels::multiply(s, diffusion_);
          fft_->inverse(s);
        }
      }
      // Longitudinal: explicit second differences with reflecting ends.
      const double r_total = p_.diffusion * h / (dz_ * dz_);
      const int sub = std::max(1, static_cast<int>(std::ceil(r_total / 0.25)));
      const double r = r_total / sub;
      std::vector<cplx> col(nz_), lap(nz_);
      for (int q = 0; q < nt_; ++q) {
        for (int j = 0; j < nz_; ++j) col[j] = base[static_cast<std::size_t>(j) * nt_ + q];
        for (int s = 0; s < sub; ++s) {
          for (int j = 0; j < nz_; ++j) {
            const cplx left = col[j == 0 ? 1 : j - 1];
            const cplx right = col[j == nz_ - 1 ? nz_ - 2 : j + 1];
            lap[j] = left - 2.0 * col[j] + right;
          }
          for (int j = 0; j < nz_; ++j) col[j] += r * lap[j];
        }
        for (int j = 0; j < nz_; ++j) base[static_cast<std::size_t>(j) * nt_ + q] = col[j];
      }
    }
  }

  void evaluate(cplx e_in) { sweep(e_in, y_); }

  SpinWaveState snapshot(double t) const {
    SpinWaveState s;
    s.time = t;
    s.z = z_;
    s.transverse_points = nt_;
    const auto r12 = rho12();
    s.rho12.assign(r12.begin(), r12.end());
    const std::size_t n = cells();
    if (mode_ == SolverMode::adiabatic) {
      s.rho13.resize(n);
      for (std::size_t c = 0; c < n; ++c) s.rho13[c] = -(p_.g * field_[c] + omega_[c % nt_] * y_[c]) / d13_;
    } else {
      s.rho13.assign(y_.begin(), y_.begin() + static_cast<std::ptrdiff_t>(n));
    }
    return s;
  }

  double max_rho12() const {
    double m = 0.0;
    for (const auto& v : rho12()) m = std::max(m, std::norm(v));
    return std::sqrt(m);
  }

  bool finite() const {
    const double s = kernels::sum_norm(y_) + kernels::sum_norm(field_);
    return std::isfinite(s);
  }

 private:
  const MemoryParams& p_;
  TransverseGrid grid_;
  SolverMode mode_;
  int nz_;
  int nt_;
  double dz_ = 0;
  std::vector<double> z_;
  std::vector<cplx> a_in_;
  std::vector<double> profile_;
  double g13_ = 0;
  cplx d13_;
  std::optional<Fft2d> fft_;
  std::vector<double> k2_;
  bool diffract_ = false;
  std::vector<cplx> diffraction_;
  std::vector<cplx> diffusion_;
  bool control_off_ = true;
  std::vector<double> omega_;
  std::vector<cplx> source_, b_;
  cplx a_, ea_, kappa_;
  std::vector<cplx> y_, field_, k1_, k2v_, k3_, k4_, t1_, t2_, lin_, e_half_, e_full_;
};

EchoResult run(const MemoryParams& params, const TransverseGrid& grid, std::vector<cplx> mode_in,
               std::vector<double> profile, bool diffraction, const PulseEnvelope& input,
               const GradientSchedule& schedule, const SolverOptions& opt) {
  params.validate();
  if (!(params.length > 0.0)) throw ConfigError("cell length must be positive");
  if (input.samples().empty()) throw ConfigError("input pulse is empty");
  const double profile_max = profile.empty() ? 1.0 : *std::max_element(profile.begin(), profile.end());
  const double t_final = schedule.t_final();
  const double bound = bound_from_rate(remainder_rate(params, schedule, opt.mode, profile_max), t_final);
  double h = bound;
  if (opt.dt > 0.0) {
    if (opt.dt > bound) {
      std::ostringstream os;
      os << "time step " << opt.dt << " s exceeds the stability bound; reduced to " << bound << " s";
      warn(os.str());
    } else {
      h = opt.dt;
    }
  }
  h = std::min(h, input.dt());
  const long steps = static_cast<long>(std::ceil(t_final / h - 1e-9));
  h = t_final / static_cast<double>(steps);

  const double cell = grid.cell_area();
  double mode_power = 0.0;
  for (const auto& a : mode_in) mode_power += std::norm(a) * cell;
  if (!(mode_power > 0.0)) throw ConfigError("input transverse field has zero power");
  const double inv_sqrt_mode = 1.0 / std::sqrt(mode_power);

  EchoResult result;
  result.dt = h;
  result.steps = steps;
  EchoRecord& rec = result.record;
  {
    std::vector<cplx> scaled(input.samples().begin(), input.samples().end());
    for (auto& s : scaled) s *= std::sqrt(mode_power);
    rec.input = PulseEnvelope(std::move(scaled), input.dt(), input.t0());
  }
  rec.input_energy = rec.input.energy();
  rec.window_start = schedule.flip_time().value_or(input.t_end());
  rec.window_end = t_final;

  const std::vector<cplx> mode_copy = mode_in;
  Engine engine(params, grid, std::move(mode_in), std::move(profile), diffraction, opt);
  const auto nt = static_cast<std::size_t>(grid.size());

  std::vector<cplx> out(static_cast<std::size_t>(steps) + 1);
  rec.output_power.assign(static_cast<std::size_t>(steps) + 1, 0.0);
  std::vector<cplx> peak_slice;
  double peak_power = -1.0;
  bool warned_weak = false;

  const ScheduleSegment* active = nullptr;
  auto record_output = [&](long k, double t) {
    const auto slice = engine.output_slice();
    const double pw = kernels::sum_norm(slice) * cell;
    rec.output_power[k] = pw;
    out[k] = kernels::dot(mode_copy, slice) * cell * inv_sqrt_mode;
    if (t >= rec.window_start && pw > peak_power) {
      peak_power = pw;
      rec.echo_peak_time = t;
      peak_slice.assign(slice.begin(), slice.end());
    }
  };
  auto check = [&](double t) {
    if (!engine.finite()) {
      std::ostringstream os;
      os << "solver diverged (non-finite values) at t = " << t << " s; reduce dt";
      throw NumericalError(os.str());
    }
    const double m = engine.max_rho12();
    rec.max_coherence = std::max(rec.max_coherence, m);
    if (m > opt.weak_probe_limit && !warned_weak) {
      warned_weak = true;
      std::ostringstream os;
      os << "max |rho12| = " << m << " exceeds " << opt.weak_probe_limit << ": weak-probe linearization doubtful";
      warn(os.str());
    }
  };

  for (long k = 0; k < steps; ++k) {
    const double t = static_cast<double>(k) * h;
    const auto& seg = schedule.segment_at(t + 0.5 * h);
    if (&seg != active) {
      engine.configure(seg, h);
      active = &seg;
    }
    engine.step(t, h, input);
    record_output(k, t);
    if (opt.history_stride > 0 && ((k + 1) % opt.history_stride == 0 || k + 1 == steps)) {
      engine.evaluate(input.at(t + h));
      result.history.push_back(engine.snapshot(t + h));
    }
    if (k % 16 == 15) check(t + h);
  }
  check(t_final);
  {
    engine.evaluate(input.at(t_final));
    record_output(steps, t_final);
  }

  rec.output = PulseEnvelope(std::move(out), h, 0.0);
  const auto samples = rec.output.samples();
  double echo = 0.0, transmitted = 0.0, overlap = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double w = h * ((k == 0 || k + 1 == samples.size()) ? 0.5 : 1.0);
    const double t = static_cast<double>(k) * h;
    if (t >= rec.window_start) {
      echo += w * rec.output_power[k];
      overlap += w * std::norm(samples[k]);
    } else {
      transmitted += w * rec.output_power[k];
    }
  }
  rec.echo_energy = echo;
  rec.transmitted_energy = transmitted;
  rec.total_efficiency = echo / rec.input_energy;
  rec.overlap_efficiency = std::min(overlap / rec.input_energy, rec.total_efficiency);
  rec.overshoot = rec.total_efficiency > 1.0;
  if (rec.total_efficiency > 1.02) {
    std::ostringstream os;
    os << "recall efficiency " << rec.total_efficiency << " exceeds 1: numerical overshoot";
    warn(os.str());
  }
  {
    rec.input_transverse = TransverseField(grid, mode_copy);
    std::vector<cplx> snap = peak_slice.empty() ? std::vector<cplx>(nt, 0.0) : peak_slice;
    double sp = 0.0;
    for (const auto& v : snap) sp += std::norm(v) * cell;
    const double target = rec.total_efficiency * mode_power;
    if (sp > 0.0) {
      const double s = std::sqrt(target / sp);
      for (auto& v : snap) v *= s;
    }
    rec.output_transverse = TransverseField(grid, std::move(snap));
  }
  return result;
}

}  // namespace

double stable_time_step(const MemoryParams& params, const GradientSchedule& schedule, SolverMode mode) {
  return bound_from_rate(remainder_rate(params, schedule, mode, 1.0), schedule.t_final());
}

EchoResult simulate_echo_1d(const MemoryParams& params, const PulseEnvelope& input, const GradientSchedule& schedule,
                            const SolverOptions& options) {
  auto res = run(params, TransverseGrid::single_point(), {cplx(1.0)}, {}, false, input, schedule, options);
  res.record.input_transverse.reset();
  res.record.output_transverse.reset();
  return res;
}

EchoResult simulate_echo_3d(const MemoryParams& params, const TransverseField& input_transverse,
                            const PulseEnvelope& input_temporal, const GradientSchedule& schedule,
                            const Solver3dOptions& options) {
  const auto& grid = input_transverse.grid();
  if (options.base.nz > max_3d_nz || grid.nx() > max_3d_transverse || grid.ny() > max_3d_transverse) {
    std::ostringstream os;
    os << "transverse solver is limited to nz <= " << max_3d_nz << " and " << max_3d_transverse << "^2 samples; "
       << "use the factorized pipeline for larger grids";
    throw ConfigError(os.str());
  }
  if (!options.control_profile.empty() && options.control_profile.size() != grid.size())
    throw ConfigError("control profile size does not match the transverse grid");
  for (double v : options.control_profile)
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError("control profile values must be finite and >= 0");
  std::vector<cplx> mode(input_transverse.values().begin(), input_transverse.values().end());
  return run(params, grid, std::move(mode), options.control_profile, options.diffraction, input_temporal, schedule,
             options.base);
}

}  // namespace gemsim::solver
