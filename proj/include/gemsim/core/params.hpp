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

namespace gemsim {

/// Physical constants and rates of the three-level memory, all SI with rates
/// as angular frequencies (rad/s).
struct MemoryParams {
  double g = 1.0;                  // probe coupling, rad/s per unit field
  double density = 0.0;            // atoms per m^3
  double one_photon_detuning = 0;  // Delta
  double control_rabi = 0;         // Omega_c on axis
  double gamma = 0;                // excited-state decay
  double gamma0 = 0;               // ground-state dephasing
  double gammac = 0;               // population exchange
  double gradient = 0;             // eta, rad/s per metre of z
  double diffusion = 0;            // D, m^2/s
  double control_waist = 0;        // Wc (infinity: uniform control)
  double probe_waist = 0;          // Wp
  double wavenumber = 0;           // k0, rad/m (0 disables diffraction)
  double length = 0;               // L
  double two_photon_offset = 0;    // delta0: uniform part of the two-photon detuning

  /// Throws ConfigError on negative or non-finite values; warns when Delta < 10 gamma.
  void validate() const;

  /// Delta/gamma >= 10.
  bool raman_regime() const noexcept;

  /// Uniform frequency shift of the ground-state coherence while the control is
  /// on: the explicit Omega^2/Delta term plus the shift from eliminating rho13.
  double light_shift() const noexcept;

  /// Raman depth beta = g^2 n Omega^2 / (c Delta^2 |eta|); GEM recall
  /// efficiency without other losses is (1 - exp(-2 pi beta))^2.
  double raman_depth() const noexcept;

  /// Density that gives the requested Raman depth with the current g, Omega, Delta, eta.
  double density_for_raman_depth(double beta) const noexcept;

  /// Gamma_2 = gamma0 + gammac + Omega^2 gamma / Delta^2.
  double two_photon_linewidth() const noexcept;

  /// Reference geometry: Delta = 1.5e9, Omega_c = 72e6 (same-convention numbers),
  /// gamma = 2 pi 5.6 MHz, L = 200 mm, Wc = 3 mm, Wp = 1.5 mm, 795 nm probe,
  /// D = 13.2 cm^2/s, a 2 pi 4 MHz gradient bandwidth, Raman depth 1 and a
  /// two-photon offset that cancels the light shift.
  static MemoryParams reference_setup();
};

}  // namespace gemsim
