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
#include <utility>
#include <vector>

#include "gemsim/core/error.hpp"
#include "gemsim/core/units.hpp"
#include "gemsim/harness/csv.hpp"
#include "gemsim/modes/analysis.hpp"
#include "gemsim/modes/hermite_gauss.hpp"
#include "gemsim/transport/diffusion.hpp"
#include "gemsim/transport/estimates.hpp"
#include "oracles.hpp"

using namespace gemsim;
using namespace gemsim::transport;

namespace {
constexpr double D = 13.2e-4;  // m^2/s
constexpr double W = 1.5e-3;
}  // namespace

TEST_CASE("kernel is normalized and its transfer function is exp(-D k^2 t)") {
  const auto g = TransverseGrid::square(64, 8e-3);
  const DiffusionKernel k(D, 30e-6, g);
  CHECK(k.direct_sum() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(k.transfer(0, 0) - 1.0) < 1e-14);
  const double nyq = M_PI / g.dx();
  for (int iy = 0; iy < k.padded_ny(); ++iy)
    for (int ix = 0; ix < k.padded_nx(); ++ix) {
      const double kx = k.padded_kx(ix), ky = k.padded_ky(iy);
      if (std::hypot(kx, ky) > 0.5 * nyq) continue;
      CHECK(std::abs(k.transfer(ix, iy) - std::exp(-D * (kx * kx + ky * ky) * 30e-6)) < 1e-10);
    }
}

TEST_CASE("spectral convolution equals direct convolution") {
  const auto g = TransverseGrid::square(32, 4e-3);
  const double t = 30e-6;
  TransverseField f(g);
  for (int iy = 0; iy < 32; ++iy)
    for (int ix = 0; ix < 32; ++ix)
      f(ix, iy) = std::complex<double>(std::exp(-std::pow(g.x(ix) - 2e-4, 2) / 4e-7) * (1 + 0.3 * std::sin(ix)),
                                       0.2 * std::cos(iy * 0.7));
  const auto out = apply_diffusion(f, D, t);
  const auto ref = oracle::direct_gaussian_convolution({f.values().begin(), f.values().end()}, 32, 32, g.dx(), g.dy(),
                                                       2 * D * t);
  for (std::size_t i = 0; i < ref.size(); ++i) CHECK(std::abs(out.values()[i] - ref[i]) < 1e-12);
}

TEST_CASE("convolution semigroup") {
  const auto g = TransverseGrid::square(256, 12e-3);
  const auto f = modes::hermite_gauss({1, 1}, W, g);
  const auto two = apply_diffusion(apply_diffusion(f, D, 20e-6), D, 25e-6);
  const auto one = apply_diffusion(f, D, 45e-6);
  double m = 0, ref = 0;
  for (std::size_t i = 0; i < one.values().size(); ++i) {
    m = std::max(m, std::abs(one.values()[i] - two.values()[i]));
    ref = std::max(ref, std::abs(one.values()[i]));
  }
  CHECK(m / ref < 1e-6);
}

TEST_CASE("zero time or zero diffusion is the identity") {
  const auto g = TransverseGrid::square(64, 12e-3);
  const auto f = modes::hermite_gauss({2, 1}, W, g);
  for (const auto& out : {apply_diffusion(f, 0.0, 60e-6), apply_diffusion(f, D, 0.0)})
    for (std::size_t i = 0; i < out.values().size(); ++i) CHECK(std::abs(out.values()[i] - f.values()[i]) < 1e-15);
}

TEST_CASE("kernel resolution guard") {
  const auto g = TransverseGrid::square(64, 12e-3);  // dx = 187.5 um
  CHECK_THROWS_AS(DiffusionKernel(D, 1e-6, g), ConfigError);   // sigma 51 um < 2 dx
  CHECK_THROWS_AS(DiffusionKernel(D, 0.1, g), ConfigError);    // sigma > extent / 8
  CHECK_THROWS_AS(DiffusionKernel(-D, 1e-6, g), ConfigError);
  CHECK_NOTHROW(DiffusionKernel(D, 60e-6, g));
}

TEST_CASE("TEM-00 power retention W^2 / (W^2 + 4 D t)") {
  const auto g = TransverseGrid::square(256, 12e-3);
  const auto f = modes::hermite_gauss({0, 0}, W, g);
  for (double t : {6e-6, 30e-6, 60e-6}) {
    const double expected = W * W / (W * W + 4 * D * t);
    CHECK(total_power(apply_diffusion(f, D, t)) == doctest::Approx(expected).epsilon(1e-6));
    CHECK(power_retention_tem00(W, D, t) == doctest::Approx(expected).epsilon(1e-15));
  }
  CHECK(power_retention_tem00(W, D, 60e-6) == doctest::Approx(0.877).epsilon(1e-3));
}

TEST_CASE("intensity variance grows by D t per axis") {
  const auto g = TransverseGrid::square(256, 12e-3);
  const auto f = modes::hermite_gauss({0, 0}, W, g);
  for (double t : {10e-6, 40e-6}) {
    const auto s = modes::intensity_moments(apply_diffusion(f, D, t));
    CHECK(s.var_x == doctest::Approx(W * W / 4 + D * t).epsilon(1e-6));
    CHECK(s.var_y == doctest::Approx(W * W / 4 + D * t).epsilon(1e-6));
  }
}

TEST_CASE("diffusion coefficient from width-growth fixtures") {
  for (auto [file, d] : {std::pair{"width_growth_control_off.csv", 1.32e-3}, {"width_growth_control_on.csv", 0.024}}) {
    const auto table = harness::read_csv(std::filesystem::path(GEMSIM_TEST_DATA) / "fixtures" / file);
    std::vector<std::pair<double, double>> series;
    for (std::size_t r = 0; r < table.rows.size(); ++r)
      series.emplace_back(from_us(table.number(r, 0)), table.number(r, 1));
    const auto fit = infer_diffusion_coefficient(series);
    CHECK(fit.diffusion == doctest::Approx(d).epsilon(1e-9));
    CHECK(fit.intercept == doctest::Approx(5.625e-7).epsilon(1e-9));
    CHECK(fit.r_squared == doctest::Approx(1.0));
    CHECK(fit.points == 10);
  }
  const std::vector<std::pair<double, double>> two{{0, 1}, {1, 2}};
  CHECK_THROWS_AS(infer_diffusion_coefficient(two), ConfigError);
  const std::vector<std::pair<double, double>> same_t{{1, 1}, {1, 2}, {1, 3}};
  CHECK_THROWS_AS(infer_diffusion_coefficient(same_t), ConfigError);
}

TEST_CASE("kinetic diffusion estimate") {
  const double m = constants::rb87_mass;
  const double vbar = std::sqrt(8 * constants::boltzmann * 343.0 / (M_PI * m));
  CHECK(mean_thermal_speed(343.0, m) == doctest::Approx(vbar));
  CHECK(vbar == doctest::Approx(289.0).epsilon(0.01));
  const double d = kinetic_diffusion_coefficient(343.0, m, 17e6 * 0.5);
  CHECK(d == doctest::Approx(vbar * vbar / (3 * 8.5e6)));
  CHECK(to_cm2_per_s(d) == doctest::Approx(31.0).epsilon(0.10));
  CHECK_THROWS_AS(kinetic_diffusion_coefficient(343.0, m, 0.0), ConfigError);
  CHECK_THROWS_AS(mean_thermal_speed(-1.0, m), ConfigError);
}

TEST_CASE("longitudinal decay integrates D (eta t)^2") {
  const double eta = 2 * M_PI * 4e6 / 0.2;
  for (double tau : {5e-6, 20e-6}) {
    const double integral = oracle::simpson([&](double t) { return D * eta * eta * t * t; }, 0.0, tau);
    CHECK(longitudinal_decay_factor(D, eta, tau) == doctest::Approx(std::exp(-integral)).epsilon(1e-10));
  }
  CHECK(longitudinal_decay_factor(0.0, eta, 1e-3) == 1.0);
}
