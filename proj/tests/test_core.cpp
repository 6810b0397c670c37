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
#include <random>
#include <string>
#include <vector>

#include "gemsim/core/error.hpp"
#include "gemsim/core/fft.hpp"
#include "gemsim/core/field.hpp"
#include "gemsim/core/grid.hpp"
#include "gemsim/core/params.hpp"
#include "gemsim/core/units.hpp"

using namespace gemsim;

namespace {

struct CaptureWarnings {
  std::vector<std::string> messages;
  WarningHandler previous;
  CaptureWarnings() {
    previous = set_warning_handler([this](const std::string& m) { messages.push_back(m); });
  }
  ~CaptureWarnings() { set_warning_handler(previous); }
};

}  // namespace

TEST_CASE("grid rejects odd, tiny and non-finite shapes") {
  CHECK_THROWS_AS(TransverseGrid(7, 8, 1e-4, 1e-4), ConfigError);
  CHECK_THROWS_AS(TransverseGrid(6, 6, 1e-4, 1e-4), ConfigError);
  CHECK_THROWS_AS(TransverseGrid(8, 8, 0.0, 1e-4), ConfigError);
  CHECK_THROWS_AS(TransverseGrid(8, 8, 1e-4, NAN), ConfigError);
  CHECK_NOTHROW(TransverseGrid::single_point());
  CHECK(TransverseGrid::single_point().is_single_point());
}

TEST_CASE("grid is centred and mirror symmetric") {
  const auto g = TransverseGrid::square(16, 1.6e-3);
  CHECK(g.dx() == doctest::Approx(1e-4));
  for (int i = 0; i < 16; ++i) CHECK(g.x(i) == doctest::Approx(-g.x(15 - i)));
  CHECK(g.x(8) == doctest::Approx(0.5e-4));
  CHECK(g.kx(0) == 0.0);
  CHECK(g.kx(1) == doctest::Approx(2 * M_PI / 1.6e-3));
  CHECK(g.kx(15) == doctest::Approx(-2 * M_PI / 1.6e-3));
  CHECK(g.kx(8) == doctest::Approx(-8 * 2 * M_PI / 1.6e-3));
}

TEST_CASE("grid warns when a beam does not fit") {
  CaptureWarnings w;
  const auto g = TransverseGrid::square(32, 4e-3);
  CHECK(g.check_fits(0.5e-3));
  CHECK(w.messages.empty());
  CHECK_FALSE(g.check_fits(1.5e-3));
  CHECK(w.messages.size() == 1);
}

TEST_CASE("power is the same in direct and spectral space") {
  const auto g = TransverseGrid::square(32, 3.2e-3);
  std::mt19937 rng(7);
  std::normal_distribution<double> n;
  TransverseField f(g);
  for (auto& v : f.values()) v = {n(rng), n(rng)};
  CHECK(spectral_power(f) == doctest::Approx(total_power(f)).epsilon(1e-12));
}

TEST_CASE("fft forward then inverse scales by the sample count") {
  const Fft2d fft(16, 8);
  std::vector<std::complex<double>> a(128), b;
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-1, 1);
  for (auto& v : a) v = {u(rng), u(rng)};
  b = a;
  fft.forward(b);
  fft.inverse(b);
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(std::abs(b[i] / 128.0 - a[i]) < 1e-13);
}

TEST_CASE("fft bin ordering matches the grid wavenumbers") {
  const auto g = TransverseGrid::square(16, 1.6e-3);
  TransverseField f(g);
  const int kx = 3;
  for (int iy = 0; iy < 16; ++iy)
    for (int ix = 0; ix < 16; ++ix) f(ix, iy) = std::exp(std::complex<double>(0, g.kx(kx) * ix * g.dx()));
  std::vector<std::complex<double>> d(f.values().begin(), f.values().end());
  Fft2d(16, 16).forward(d);
  CHECK(std::abs(d[g.index(kx, 0)]) == doctest::Approx(256.0));
}

TEST_CASE("field grid mismatch is a config error") {
  TransverseField a(TransverseGrid::square(8, 1e-3)), b(TransverseGrid::square(16, 1e-3));
  CHECK_THROWS_AS(require_same_grid(a.grid(), b.grid(), "test"), ConfigError);
  CHECK_THROWS_AS(TransverseField(TransverseGrid::square(8, 1e-3), std::vector<cplx>(10)), ConfigError);
}

TEST_CASE("unit conversions") {
  CHECK(convert_diffusion_units(13.2, "cm2/s", "m^2/s") == doctest::Approx(1.32e-3));
  CHECK(convert_diffusion_units(1.32e-3, DiffusionUnit::m2_per_s, DiffusionUnit::cm2_per_s) == doctest::Approx(13.2));
  CHECK_THROWS_AS(parse_diffusion_unit("mm2/s"), ConfigError);
  CHECK(from_MHz(1.0, RateConvention::angular) == 1e6);
  CHECK(from_MHz(1.0, RateConvention::cyclic) == doctest::Approx(2 * M_PI * 1e6));
  CHECK_THROWS_AS(parse_rate_convention("hz"), ConfigError);
}

TEST_CASE("error kinds map to exit codes") {
  CHECK(exit_code(ErrorKind::config) == 2);
  CHECK(exit_code(ErrorKind::numerical) == 3);
  CHECK(exit_code(ErrorKind::io) == 4);
  CHECK(ConfigError("x").kind() == ErrorKind::config);
  CHECK(IoError("x").kind() == ErrorKind::io);
}

TEST_CASE("reference geometry") {
  const auto p = MemoryParams::reference_setup();
  CHECK_NOTHROW(p.validate());
  CHECK(p.raman_regime());
  CHECK(p.raman_depth() == doctest::Approx(1.0));
  CHECK(p.control_waist == doctest::Approx(3e-3));
  CHECK(p.probe_waist == doctest::Approx(1.5e-3));
  CHECK(p.diffusion == doctest::Approx(13.2e-4));
  CHECK(p.gradient * p.length == doctest::Approx(2 * M_PI * 4e6));
  CHECK(p.two_photon_offset == doctest::Approx(p.light_shift()));
  // Hand evaluation: Omega^2/Delta + Omega^2 Delta/(Delta^2 + gamma^2).
  const double om2 = 72e6 * 72e6, d = 1.5e9, g = 2 * M_PI * 5.6e6;
  CHECK(p.light_shift() == doctest::Approx(om2 / d + om2 * d / (d * d + g * g)));
  CHECK(p.two_photon_linewidth() == doctest::Approx(om2 * g / (d * d)));
}

TEST_CASE("parameter validation") {
  auto p = MemoryParams::reference_setup();
  p.density = -1;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MemoryParams::reference_setup();
  p.gamma = NAN;
  CHECK_THROWS_AS(p.validate(), ConfigError);
  p = MemoryParams::reference_setup();
  p.control_waist = INFINITY;
  CHECK_NOTHROW(p.validate());
  CaptureWarnings w;
  p.one_photon_detuning = 5 * p.gamma;
  p.validate();
  CHECK_FALSE(p.raman_regime());
  CHECK(w.messages.size() == 1);
}

TEST_CASE("density for a Raman depth round-trips") {
  auto p = MemoryParams::reference_setup();
  for (double beta : {0.1, 1.0, 7.5}) {
    p.density = p.density_for_raman_depth(beta);
    CHECK(p.raman_depth() == doctest::Approx(beta));
  }
}
