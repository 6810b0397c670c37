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

#include "gemsim/core/error.hpp"
#include "gemsim/modes/hermite_gauss.hpp"
#include "gemsim/scattering/scattering.hpp"
#include "gemsim/transport/diffusion.hpp"

using namespace gemsim;
using namespace gemsim::scattering;

namespace {

double max_abs_diff(const TransverseField& a, const TransverseField& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.values().size(); ++i) m = std::max(m, std::abs(a.values()[i] - b.values()[i]));
  return m;
}

}  // namespace

TEST_CASE("on-axis scattering rate, hand evaluation") {
  const auto p = MemoryParams::reference_setup();
  const double g = 2 * M_PI * 5.6e6, om = 72e6, d = 1.5e9;
  const double hand = g * om * om / (g * g + d * d);  // 8.107e4 s^-1
  CHECK(hand == doctest::Approx(8.107e4).epsilon(1e-3));
  CHECK(on_axis_scattering_rate(p) == doctest::Approx(hand).epsilon(1e-12));
  const double simple = on_axis_scattering_rate(p, RateForm::far_detuned);
  CHECK(simple == doctest::Approx(g * om * om / (d * d)));
  CHECK(std::abs(simple / on_axis_scattering_rate(p) - 1) <= (g / d) * (g / d) * 1.0001);
  auto q = p;
  q.one_photon_detuning = 0;
  CHECK_THROWS_AS(on_axis_scattering_rate(q), ConfigError);
}

TEST_CASE("scattering map follows the control intensity profile") {
  auto p = MemoryParams::reference_setup();
  const auto g = TransverseGrid::square(64, 12e-3);
  const double g0 = on_axis_scattering_rate(p);
  const auto map = scattering_rate_map(p, g, 1e-3, 0.0);
  for (int ix : {0, 20, 40, 63}) {
    const double r2 = std::pow(g.x(ix) - 1e-3, 2) + std::pow(g.y(5), 2);
    CHECK(map.rates[g.index(ix, 5)] == doctest::Approx(g0 * std::exp(-2 * r2 / 9e-6)));
  }
  p.control_waist = INFINITY;
  const auto uniform = scattering_rate_map(p, g);
  for (double r : uniform.rates) CHECK(r == doctest::Approx(g0));
  p.control_waist = 0;
  CHECK_THROWS_AS(scattering_rate_map(p, g), ConfigError);
}

TEST_CASE("burn is monotone in duration and control strength") {
  auto p = MemoryParams::reference_setup();
  const auto g = TransverseGrid::square(64, 12e-3);
  const auto f = modes::hermite_gauss({1, 0}, 1.5e-3, g);
  double last = 2.0;
  for (double t : {0.0, 5e-6, 10e-6, 40e-6}) {
    const double pw = total_power(apply_scattering_burn(f, scattering_rate_map(p, g), t));
    CHECK(pw <= last);
    last = pw;
  }
  last = 2.0;
  for (double om : {0.0, 30e6, 72e6, 150e6}) {
    p.control_rabi = om;
    const double pw = total_power(apply_scattering_burn(f, scattering_rate_map(p, g), 20e-6));
    CHECK(pw <= last);
    last = pw;
  }
  CHECK_THROWS_AS(apply_scattering_burn(f, scattering_rate_map(p, g), -1.0), ConfigError);
}

TEST_CASE("uniform control gives a pure scalar decay") {
  auto p = MemoryParams::reference_setup();
  p.control_waist = INFINITY;
  const auto g = TransverseGrid::square(128, 12e-3);
  const auto f = modes::hermite_gauss({0, 0}, 1.5e-3, g);
  const auto map = scattering_rate_map(p, g);
  const double t = 48e-6;
  const auto out = storage_evolution(f, map, p.diffusion, t, true, 2);
  // Same per-step kernel on both sides: only the scalar decay is under test.
  auto expected = transport::apply_diffusion(transport::apply_diffusion(f, p.diffusion, t / 2), p.diffusion, t / 2);
  expected *= std::exp(-on_axis_scattering_rate(p) * t);
  CHECK(max_abs_diff(out, expected) < 1e-12 * std::abs(f(64, 64)));
}

TEST_CASE("control off storage is a single diffusion") {
  const auto p = MemoryParams::reference_setup();
  const auto g = TransverseGrid::square(128, 12e-3);
  const auto f = modes::hermite_gauss({1, 1}, 1.5e-3, g);
  const auto out = storage_evolution(f, scattering_rate_map(p, g), p.diffusion, 30e-6, false, 7);
  CHECK(max_abs_diff(out, transport::apply_diffusion(f, p.diffusion, 30e-6)) == 0.0);
}

TEST_CASE("Strang splitting converges at second order, Lie at first") {
  auto p = MemoryParams::reference_setup();
  p.control_rabi *= 2;  // stronger burn makes the splitting error visible
  const auto g = TransverseGrid::square(256, 8e-3);
  const auto f = modes::hermite_gauss({0, 0}, 1.2e-3, g);
  const auto map = scattering_rate_map(p, g);
  const double t = 20e-6;
  auto order = [&](SplitScheme s) {
    const auto u2 = storage_evolution(f, map, p.diffusion, t, true, 2, s);
    const auto u4 = storage_evolution(f, map, p.diffusion, t, true, 4, s);
    const auto u8 = storage_evolution(f, map, p.diffusion, t, true, 8, s);
    return std::log2(max_abs_diff(u2, u4) / max_abs_diff(u4, u8));
  };
  CHECK(order(SplitScheme::strang) == doctest::Approx(2.0).epsilon(0.1));
  CHECK(order(SplitScheme::diffusion_first) == doctest::Approx(1.0).epsilon(0.2));
  // The two Lie orderings differ by a first-order commutator term.
  const auto a = storage_evolution(f, map, p.diffusion, t, true, 4, SplitScheme::diffusion_first);
  const auto b = storage_evolution(f, map, p.diffusion, t, true, 4, SplitScheme::burn_first);
  const auto a2 = storage_evolution(f, map, p.diffusion, t, true, 8, SplitScheme::diffusion_first);
  const auto b2 = storage_evolution(f, map, p.diffusion, t, true, 8, SplitScheme::burn_first);
  CHECK(max_abs_diff(a, b) / max_abs_diff(a2, b2) == doctest::Approx(2.0).epsilon(0.1));
}

TEST_CASE("control masks") {
  const auto p = MemoryParams::reference_setup();
  const auto g = TransverseGrid::square(32, 12e-3);
  const auto map = scattering_rate_map(p, g);
  const auto full = masked_control_map(map, full_mask(g));
  CHECK(full.rates == map.rates);
  const auto left = half_plane_mask(g, modes::Half::left);
  const auto right = complement(left);
  for (int ix = 0; ix < 32; ++ix) {
    CHECK(left.transmission[g.index(ix, 3)] == (g.x(ix) < 0 ? 1.0 : 0.0));
    CHECK(right.transmission[g.index(ix, 3)] + left.transmission[g.index(ix, 3)] == 1.0);
  }
  const auto lm = masked_control_map(map, left);
  CHECK(lm.rates[g.index(31, 16)] == 0.0);
  CHECK(lm.rates[g.index(0, 16)] == map.rates[g.index(0, 16)]);
  ControlMask empty{g, std::vector<double>(g.size(), 0.0)};
  CHECK_THROWS_AS(masked_control_map(map, empty), ConfigError);

  const auto f = modes::hermite_gauss({1, 0}, 1.5e-3, TransverseGrid::square(32, 12e-3));
  const auto gl = gate_recall(f, left), gr = gate_recall(f, right);
  CHECK(total_power(gl) + total_power(gr) == doctest::Approx(total_power(f)));
  CHECK(total_power(gl) == doctest::Approx(0.5));
}
