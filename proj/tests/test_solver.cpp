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

#include <doctest.h>

#include <cmath>
#include <future>
#include <string>
#include <vector>

#include "gemsim/core/error.hpp"
#include "gemsim/modes/hermite_gauss.hpp"
#include "gemsim/solver/efficiency.hpp"
#include "gemsim/solver/maxwell_bloch.hpp"
#include "gemsim/solver/schedule.hpp"
#include "gemsim/solver/spectrum.hpp"
#include "gemsim/transport/diffusion.hpp"
#include "oracles.hpp"

using namespace gemsim;
using namespace gemsim::solver;

namespace {

struct CaptureWarnings {
  std::vector<std::string> messages;
  WarningHandler previous;
  CaptureWarnings() {
    previous = set_warning_handler([this](const std::string& m) { messages.push_back(m); });
  }
  ~CaptureWarnings() { set_warning_handler(previous); }
};

// Loss-free reference geometry at Raman depth beta.
MemoryParams lossless(double beta = 1.0) {
  auto p = MemoryParams::reference_setup();
  p.gamma = p.gamma0 = p.gammac = 0;
  p.diffusion = 0;
  p.density = p.density_for_raman_depth(beta);
  p.two_photon_offset = p.light_shift();
  return p;
}

constexpr double fwhm = 1e-6, centre = 2.5e-6, flip = 6e-6, t_end = 13e-6;

GradientSchedule always_on(const MemoryParams& p) { return echo_schedule(p.gradient, {flip, flip, flip, t_end}, true); }

double closed_form(double beta) { return std::pow(1 - std::exp(-2 * M_PI * beta), 2); }

// max over lags of |<a|b shifted>| / (|a| |b|) on magnitude envelopes sampled alike.
double envelope_correlation(const std::vector<double>& a, const std::vector<double>& b, int max_lag) {
  double best = 0, na = 0, nb = 0;
  for (double v : a) na += v * v;
  for (double v : b) nb += v * v;
  for (int lag = -max_lag; lag <= max_lag; ++lag) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      const long j = static_cast<long>(i) + lag;
      if (j >= 0 && j < static_cast<long>(b.size())) s += a[i] * b[j];
    }
    best = std::max(best, s / std::sqrt(na * nb));
  }
  return best;
}

// Total efficiencies of several input modes, run concurrently.
std::vector<double> efficiencies_3d(const MemoryParams& p, const TransverseGrid& g, std::vector<modes::ModeIndex> ms,
                                    const PulseEnvelope& input, const GradientSchedule& s) {
  std::vector<std::future<double>> runs;
  for (auto m : ms)
    runs.push_back(std::async(std::launch::async, [&, m] {
      return simulate_echo_3d(p, modes::hermite_gauss(m, 1.5e-3, g), input, s, {.base = {.nz = 16}})
          .record.total_efficiency;
    }));
  std::vector<double> out;
  for (auto& r : runs) out.push_back(r.get());
  return out;
}

}  // namespace

TEST_CASE("schedule validation") {
  CHECK_THROWS_AS(GradientSchedule({}), ConfigError);
  CHECK_THROWS_AS(GradientSchedule({{1e-6, 2e-6, 1, true, 1}}), ConfigError);
  CHECK_THROWS_AS(GradientSchedule({{0, 1e-6, 1, true, 1}, {1.5e-6, 2e-6, -1, true, 1}}), ConfigError);
  CHECK_THROWS_AS(GradientSchedule({{0, 1e-6, 1, true, 1}, {0.5e-6, 2e-6, -1, true, 1}}), ConfigError);
  CHECK_THROWS_AS(GradientSchedule({{0, 0, 1, true, 1}}), ConfigError);
  CHECK_THROWS_AS(GradientSchedule({{0, 1e-6, 1, true, -1}}), ConfigError);
  const GradientSchedule s({{0, 1e-6, 5, true, 1}, {1e-6, 2e-6, 0, false, 1}, {2e-6, 3e-6, -5, true, 1}});
  CHECK(s.sign_flips() == 1);
  CHECK(s.is_standard_echo());
  CHECK(*s.flip_time() == 2e-6);
  CHECK(s.t_final() == 3e-6);
  CHECK(s.reversed().segments()[0].gradient == -5);
  CHECK(s.segment_at(1.5e-6).gradient == 0);
  CHECK_FALSE(GradientSchedule({{0, 1e-6, 5, true, 1}}).flip_time());
}

TEST_CASE("echo schedule factory") {
  const auto gated = echo_schedule(3.0, {2e-6, 5e-6, 8e-6, 12e-6}, false);
  REQUIRE(gated.segments().size() == 4);
  CHECK(gated.segments()[0].control_on);
  CHECK_FALSE(gated.segments()[1].control_on);
  CHECK(gated.segments()[2].gradient == -3.0);
  CHECK(gated.segments()[3].control_on);
  CHECK(*gated.flip_time() == 5e-6);
  CHECK(echo_schedule(3.0, {0, 5e-6, 0, 9e-6}, true).segments().size() == 2);
  CHECK_THROWS_AS(echo_schedule(3.0, {6e-6, 5e-6, 8e-6, 12e-6}, false), ConfigError);
}

TEST_CASE("Gaussian pulse convention") {
  const auto p = gaussian_pulse(fwhm, 3e-6, 1e-9);
  CHECK(std::norm(p.at(3e-6)) == doctest::Approx(1.0));
  CHECK(std::norm(p.at(3e-6 + fwhm / 2)) == doctest::Approx(0.5).epsilon(1e-6));
  const double sigma = gaussian_sigma(fwhm);
  CHECK(p.energy() == doctest::Approx(sigma * std::sqrt(M_PI)).epsilon(1e-6));
  CHECK(p.at(3e-6 - 5 * sigma) == 0.0);
  CHECK(p.t0() == doctest::Approx(3e-6 - 4 * sigma).epsilon(1e-3));
  CHECK(p.peak_time() == doctest::Approx(3e-6));
  const PulseEnvelope lin({0.0, 2.0}, 1.0, 0.0);
  CHECK(lin.at(0.25) == std::complex<double>(0.5));
  CHECK_THROWS_AS(PulseEnvelope({1.0}, 0.0), ConfigError);
  CHECK_THROWS_AS(PulseEnvelope({NAN}, 1.0), ConfigError);
}

TEST_CASE("zero coupling stores nothing") {
  auto p = lossless();
  p.density = 0;
  const auto r = simulate_echo_1d(p, gaussian_pulse(fwhm, centre, 5e-9), always_on(p), {.nz = 64});
  CHECK(r.record.total_efficiency < 1e-12);
  CHECK(r.record.transmitted_energy == doctest::Approx(r.record.input_energy).epsilon(1e-3));
}

TEST_CASE("loss-free recall reaches (1 - exp(-2 pi beta))^2") {
  for (double beta : {0.5, 1.0}) {
    const auto p = lossless(beta);
    const auto r = simulate_echo_1d(p, gaussian_pulse(fwhm, centre, 5e-9), always_on(p), {.nz = 256});
    CHECK(r.record.total_efficiency == doctest::Approx(closed_form(beta)).epsilon(0.01));
    CHECK(r.record.transmitted_energy / r.record.input_energy ==
          doctest::Approx(std::exp(-2 * M_PI * beta)).epsilon(0.3));
    CHECK_FALSE(r.record.overshoot);
  }
}

TEST_CASE("echo appears at the mirror time and is the time-reversed input") {
  const auto p = lossless(2.0);
  // Asymmetric input: a main pulse with a smaller trailing bump.
  const double dt = 5e-9;
  const auto a = gaussian_pulse(0.6e-6, 2.2e-6, dt), b = gaussian_pulse(0.6e-6, 2.9e-6, dt);
  std::vector<std::complex<double>> s;
  const double t0 = a.t0();
  for (double t = t0; t <= b.t_end(); t += dt) s.push_back(a.at(t) + 0.5 * b.at(t));
  const PulseEnvelope input(s, dt, t0);
  const auto r = simulate_echo_1d(p, input, always_on(p), {.nz = 256});
  const double tin = input.peak_time();
  const double tau = flip - tin;
  CHECK(r.record.echo_peak_time - tin >= 1.8 * tau);
  CHECK(r.record.echo_peak_time - tin <= 2.2 * tau);

  // Reverse the input about the flip and compare on the output sampling.
  const auto& out = r.record.output;
  std::vector<double> echo, reversed;
  for (std::size_t k = 0; k < out.samples().size(); ++k) {
    const double t = out.time(k);
    if (t < flip) continue;
    echo.push_back(std::abs(out.samples()[k]));
    reversed.push_back(std::abs(input.at(2 * flip - t)));
  }
  CHECK(envelope_correlation(echo, reversed, 50) > 0.95);
}

TEST_CASE("solver agrees with the coarse reference integrator") {
  const auto p = lossless(1.0);
  const auto input = gaussian_pulse(fwhm, centre, 2e-9);
  const auto r = simulate_echo_1d(p, input, always_on(p), {.nz = 64, .dt = 2e-9});
  const auto ref = oracle::coarse_echo({p.g, p.density, p.one_photon_detuning, p.control_rabi, 0.0, p.gradient,
                                        p.length, p.two_photon_offset},
                                       [&](double t) { return input.at(t); }, flip, t_end, 64, 2e-9);
  CHECK(r.record.total_efficiency == doctest::Approx(ref.efficiency).epsilon(0.01));
  std::vector<double> a, b;
  for (std::size_t k = 0; k < ref.t.size() && k < r.record.output.samples().size(); ++k) {
    a.push_back(std::abs(r.record.output.samples()[k]));
    b.push_back(std::abs(ref.out[k]));
  }
  CHECK(envelope_correlation(a, b, 0) > 0.999);
}

TEST_CASE("efficiency increases with density") {
  double last = 0;
  for (double beta : {0.125, 0.25, 0.5, 1.0}) {
    const auto p = lossless(beta);
    const double e =
        simulate_echo_1d(p, gaussian_pulse(fwhm, centre, 5e-9), always_on(p), {.nz = 128}).record.total_efficiency;
    CHECK(e > last);
    last = e;
  }
  CHECK(last > 0.95);
}

TEST_CASE("recall needs the control") {
  const auto p = lossless(1.0);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const double write_end = centre + 4 * gaussian_sigma(fwhm);
  const GradientSchedule dark({{0, write_end, p.gradient, true, 1}, {write_end, flip, p.gradient, false, 1},
                               {flip, t_end, -p.gradient, false, 1}});
  const auto r = simulate_echo_1d(p, input, dark, {.nz = 128});
  CHECK(r.record.total_efficiency < 1e-3);
  const auto lit = simulate_echo_1d(p, input, echo_schedule(p.gradient, {write_end, flip, 2 * flip - write_end, t_end}, false),
                                    {.nz = 128});
  CHECK(lit.record.total_efficiency > 0.9);
}

TEST_CASE("no flip means no echo, not an error") {
  const auto p = lossless(1.0);
  const GradientSchedule s({{0, t_end, p.gradient, true, 1}});
  const auto r = simulate_echo_1d(p, gaussian_pulse(fwhm, centre, 5e-9), s, {.nz = 64});
  CHECK(r.record.total_efficiency < 1e-3);
}

TEST_CASE("gradient flip symmetry") {
  const auto p = lossless(1.0);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const auto s = always_on(p);
  const double a = simulate_echo_1d(p, input, s, {.nz = 128}).record.total_efficiency;
  const double b = simulate_echo_1d(p, input, s.reversed(), {.nz = 128}).record.total_efficiency;
  CHECK(std::abs(a - b) < 1e-8);
}

TEST_CASE("step halving changes the efficiency by < 0.5%") {
  auto p = MemoryParams::reference_setup();
  const auto input = gaussian_pulse(fwhm, centre, 1e-9);
  const auto s = always_on(p);
  const double h = stable_time_step(p, s, SolverMode::adiabatic);
  const double a = simulate_echo_1d(p, input, s, {.nz = 128, .dt = h}).record.total_efficiency;
  const double b = simulate_echo_1d(p, input, s, {.nz = 128, .dt = h / 2}).record.total_efficiency;
  CHECK(std::abs(a - b) / b < 0.005);
}

TEST_CASE("adiabatic elimination matches the three-level reference") {
  auto p = MemoryParams::reference_setup();
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const GradientSchedule s({{0, 5e-6, p.gradient, true, 1}, {5e-6, 10e-6, -p.gradient, true, 1}});
  const double a = simulate_echo_1d(p, input, s, {.nz = 32}).record.total_efficiency;
  const double b =
      simulate_echo_1d(p, input, s, {.nz = 32, .mode = SolverMode::three_level}).record.total_efficiency;
  CHECK(a == doctest::Approx(b).epsilon(0.02));
}

TEST_CASE("energy bookkeeping with losses") {
  auto p = MemoryParams::reference_setup();
  p.gamma0 = 2e4;
  const auto r = simulate_echo_1d(p, gaussian_pulse(fwhm, centre, 5e-9), always_on(p), {.nz = 128});
  CHECK(r.record.transmitted_energy + r.record.echo_energy <= r.record.input_energy);
  CHECK(r.record.total_efficiency > 0.1);
}

TEST_CASE("written spin wave is the input spectrum mapped along z") {
  // Weak absorption: rho12(z) ~ E~(eta z), so its intensity variance in z is
  // 1 / (2 eta^2 sigma_t^2) for an amplitude exp(-t^2 / 2 sigma_t^2).
  const auto p = lossless(0.1);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const auto r = simulate_echo_1d(p, input, always_on(p), {.nz = 512, .history_stride = 1});
  const SpinWaveState* at_flip = nullptr;
  for (const auto& s : r.history)
    if (s.time <= flip) at_flip = &s;
  REQUIRE(at_flip);
  double w = 0, m1 = 0, m2 = 0;
  for (std::size_t j = 0; j < at_flip->z.size(); ++j) {
    const double i = std::norm(at_flip->rho12[j]);
    w += i;
    m1 += i * at_flip->z[j];
    m2 += i * at_flip->z[j] * at_flip->z[j];
  }
  const double var = m2 / w - (m1 / w) * (m1 / w);
  const double sigma_t = gaussian_sigma(fwhm);
  CHECK(var == doctest::Approx(1.0 / (2 * p.gradient * p.gradient * sigma_t * sigma_t)).epsilon(0.05));
  CHECK(std::abs(m1 / w) < 0.02 * p.length);
}

TEST_CASE("weak-probe and step-size diagnostics") {
  CaptureWarnings w;
  const auto p = lossless(1.0);
  const auto big = gaussian_pulse(fwhm, centre, 5e-9, 1e9);
  const auto r = simulate_echo_1d(p, big, always_on(p), {.nz = 32, .dt = 1e-6});
  CHECK(r.dt < 1e-7);
  CHECK(r.record.max_coherence > 0.1);
  bool reduced = false, weak = false;
  for (const auto& m : w.messages) {
    reduced |= m.find("stability bound") != std::string::npos;
    weak |= m.find("weak-probe") != std::string::npos;
  }
  CHECK(reduced);
  CHECK(weak);
  auto q = p;
  q.one_photon_detuning = 0;
  CHECK_THROWS_AS(simulate_echo_1d(q, big, always_on(p), {.nz = 32}), ConfigError);
  CHECK_THROWS_AS(simulate_echo_1d(p, big, always_on(p), {.nz = 1}), ConfigError);
}

TEST_CASE("a 1x1 transverse grid reduces to the longitudinal solver") {
  auto p = MemoryParams::reference_setup();
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const auto s = always_on(p);
  const auto one = simulate_echo_1d(p, input, s, {.nz = 64});
  const TransverseField point(TransverseGrid::single_point(2e-3, 3e-3), {std::complex<double>(0.7, 0.2)});
  const auto three = simulate_echo_3d(p, point, input, s, {.base = {.nz = 64}});
  CHECK(std::abs(three.record.total_efficiency - one.record.total_efficiency) < 1e-6);
  CHECK(std::abs(*three.record.overlap_efficiency - one.record.total_efficiency) < 1e-6);
}

TEST_CASE("transverse solver is insensitive to the mode without diffusion") {
  auto p = MemoryParams::reference_setup();
  p.diffusion = 0;
  p.control_waist = INFINITY;
  const auto g = TransverseGrid::square(16, 12e-3);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const auto s = always_on(p);
  const auto eff = efficiencies_3d(p, g, {{0, 0}, {1, 0}, {2, 0}}, input, s);
  CHECK(eff[1] == doctest::Approx(eff[0]).epsilon(0.01));
  CHECK(eff[2] == doctest::Approx(eff[0]).epsilon(0.01));
}

TEST_CASE("transverse solver orders modes under diffusion") {
  auto p = MemoryParams::reference_setup();
  p.wavenumber = 0;  // diffraction off; isolates the transport term
  p.diffusion = 20e-4;
  p.control_waist = INFINITY;
  const auto g = TransverseGrid::square(16, 12e-3);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  const auto eff = efficiencies_3d(p, g, {{0, 0}, {1, 0}, {1, 1}}, input, always_on(p));
  CHECK(eff[0] > 0.1);
  CHECK(eff[0] > eff[1]);
  CHECK(eff[1] > eff[2]);
}

TEST_CASE("transverse solver refuses large grids") {
  const auto p = MemoryParams::reference_setup();
  const auto g = TransverseGrid::square(128, 12e-3);
  const auto input = gaussian_pulse(fwhm, centre, 5e-9);
  CHECK_THROWS_AS(simulate_echo_3d(p, modes::hermite_gauss({0, 0}, 1.5e-3, g), input, always_on(p)), ConfigError);
  const auto small = TransverseGrid::square(16, 12e-3);
  CHECK_THROWS_AS(simulate_echo_3d(p, modes::hermite_gauss({0, 0}, 1.5e-3, small), input, always_on(p),
                                   {.base = {.nz = 128}}),
                  ConfigError);
  CHECK_THROWS_AS(simulate_echo_3d(p, TransverseField(small), input, always_on(p), {.base = {.nz = 16}}),
                  ConfigError);
}

TEST_CASE("Raman line and its gradient-broadened profile") {
  auto p = MemoryParams::reference_setup();
  p.gamma0 = 2e4;
  const double g2 = p.two_photon_linewidth();
  const double spread = p.gradient * p.length;
  const auto b = raman_absorption_profile(p, {-spread, spread, 201}, true);
  for (std::size_t i = 0; i < b.detuning.size(); i += 20) {
    const auto ref = oracle::raman_line_average(b.detuning[i], g2, p.gradient, p.length);
    CHECK(b.absorption[i] == doctest::Approx(ref.real()).epsilon(1e-6));
    CHECK(b.dispersion[i] == doctest::Approx(ref.imag()).epsilon(1e-6).scale(1e-3));
  }
  // Even absorption, odd dispersion.
  for (std::size_t i = 0; i < b.detuning.size(); ++i) {
    const std::size_t j = b.detuning.size() - 1 - i;
    CHECK(b.absorption[i] == doctest::Approx(b.absorption[j]));
    CHECK(b.dispersion[i] == doctest::Approx(-b.dispersion[j]).scale(1e-9));
  }
  // Width close to eta L; dispersion extremal near the band edges.
  CHECK(absorption_fwhm(b) == doctest::Approx(spread).epsilon(0.01));
  const auto imax = std::max_element(b.dispersion.begin(), b.dispersion.end()) - b.dispersion.begin();
  CHECK(std::abs(b.detuning[imax]) == doctest::Approx(spread / 2).epsilon(0.02));

  const auto u = raman_absorption_profile(p, {-10 * g2, 10 * g2, 401}, false);
  CHECK(absorption_fwhm(u) == doctest::Approx(2 * g2).epsilon(1e-3));
  CHECK(*std::max_element(u.absorption.begin(), u.absorption.end()) == doctest::Approx(1.0));
  p.gradient = 0;
  const auto flat = raman_absorption_profile(p, {-10 * g2, 10 * g2, 41}, true);
  const auto single = raman_absorption_profile(p, {-10 * g2, 10 * g2, 41}, false);
  CHECK(flat.absorption == single.absorption);
  CHECK(flat.dispersion == single.dispersion);
  CHECK_THROWS_AS(raman_absorption_profile(p, {0, NAN, 3}, true), ConfigError);
}

TEST_CASE("recall efficiencies") {
  const auto g = TransverseGrid::square(128, 12e-3);
  const auto in = modes::hermite_gauss({0, 0}, 1.5e-3, g);
  const auto same = recall_efficiencies(in, in * 0.8, in);
  CHECK(same.total == doctest::Approx(0.64));
  CHECK(same.overlap == doctest::Approx(same.total));
  const auto orth = recall_efficiencies(in, modes::hermite_gauss({1, 0}, 1.5e-3, g), in);
  CHECK(orth.overlap < 1e-20);
  CHECK(orth.total == doctest::Approx(1.0));
  CHECK_THROWS_AS(recall_efficiencies(in, in, TransverseField(g)), ConfigError);
  double last_gap = 0;
  for (double t : {30e-6, 45e-6, 60e-6}) {
    const auto e = recall_efficiencies(in, transport::apply_diffusion(in, 13.2e-4, t), in);
    CHECK(e.overlap < e.total);
    CHECK(e.total - e.overlap > last_gap);
    last_gap = e.total - e.overlap;
  }
  EchoRecord empty;
  CHECK_THROWS_AS(recall_efficiencies(empty, in), ConfigError);
}
