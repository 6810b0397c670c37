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

// Independent reference computations used as test oracles. Nothing here calls
// into the library's numerics.

#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

/// Composite Simpson rule on [a, b] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 2000) {
  if (n % 2) ++n;
  const double h = (b - a) / n;
  double s = f(a) + f(b);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
  return s * h / 3.0;
}

/// Hermite polynomial from its explicit series.
inline double hermite_explicit(int n, double x) {
  double s = 0;
  for (int m = 0; m <= n / 2; ++m) {
    const double sign = (m % 2) ? -1.0 : 1.0;
    s += sign * std::tgamma(n + 1.0) / (std::tgamma(m + 1.0) * std::tgamma(n - 2.0 * m + 1.0)) *
         std::pow(2.0 * x, n - 2 * m);
  }
  return s;
}

/// Unit-power 1D Hermite-Gauss amplitude, normalized by quadrature.
inline std::function<double(double)> hg_1d(int m, double w) {
  auto raw = [m, w](double x) { return hermite_explicit(m, std::sqrt(2.0) * x / w) * std::exp(-x * x / (w * w)); };
  const double lim = 8.0 * w;
  const double norm = std::sqrt(simpson([&](double x) { return raw(x) * raw(x); }, -lim, lim, 20000));
  return [raw, norm](double x) { return raw(x) / norm; };
}

/// Single Lorentzian Raman line averaged over z in [-L/2, L/2] by Simpson.
inline cplx raman_line_average(double delta, double gamma2, double eta, double length) {
  auto line = [&](double z) { return gamma2 / cplx(gamma2, -(delta - eta * z)); };
  const double re = simpson([&](double z) { return line(z).real(); }, -0.5 * length, 0.5 * length, 20000);
  const double im = simpson([&](double z) { return line(z).imag(); }, -0.5 * length, 0.5 * length, 20000);
  return cplx(re, im) / length;
}

/// Direct (O(N^2)) non-periodic convolution of a complex field with a
/// normalized Gaussian of variance s2 per axis on the same lattice.
inline std::vector<cplx> direct_gaussian_convolution(const std::vector<cplx>& f, int nx, int ny, double dx, double dy,
                                                     double s2) {
  const int rx = nx, ry = ny;
  std::vector<double> kx(2 * rx + 1), ky(2 * ry + 1);
  double sx = 0, sy = 0;
  for (int i = -rx; i <= rx; ++i) sx += kx[i + rx] = std::exp(-(i * dx) * (i * dx) / (2 * s2));
  for (int i = -ry; i <= ry; ++i) sy += ky[i + ry] = std::exp(-(i * dy) * (i * dy) / (2 * s2));
  std::vector<cplx> out(f.size(), 0.0);
  for (int oy = 0; oy < ny; ++oy)
    for (int ox = 0; ox < nx; ++ox) {
      cplx acc = 0;
      for (int iy = 0; iy < ny; ++iy)
        for (int ix = 0; ix < nx; ++ix) acc += f[iy * nx + ix] * kx[ox - ix + rx] * ky[oy - iy + ry];
      out[oy * nx + ox] = acc / (sx * sy);
    }
  return out;
}

/// Coarse reference integrator for the adiabatic longitudinal Maxwell-Bloch
/// system: method of lines, classical RK4 on rho (no integrating factor),
/// field by cumulative trapezoid. Uniform control; gradient flips at `flip`.
struct CoarseEcho {
  std::vector<double> t;
  std::vector<cplx> out;
  double efficiency = 0;  // output energy after `flip` over input energy
};

struct CoarseParams {
  double g, density, delta, omega, gamma, gradient, length, offset;
};

inline CoarseEcho coarse_echo(const CoarseParams& p, const std::function<cplx(double)>& input, double flip,
                              double t_end, int nz, double dt) {
  constexpr double c = 299792458.0;
  const cplx I(0, 1);
  const cplx d13(p.delta, p.gamma);
  const cplx a = -I * p.g * p.g * p.density / (c * d13);
  const cplx b = -I * p.g * p.density * p.omega / (c * d13);
  const cplx s = -I * p.omega * p.g / d13;
  const double dz = p.length / (nz - 1);
  std::vector<double> z(nz);
  for (int j = 0; j < nz; ++j) z[j] = -0.5 * p.length + j * dz;
  auto field = [&](cplx e0, const std::vector<cplx>& rho) {
    std::vector<cplx> e(nz);
    e[0] = e0;
    for (int j = 0; j + 1 < nz; ++j) {
      // dE/dz = a E + b rho, trapezoid in both terms (implicit in E, solved exactly).
      const cplx rhs = e[j] * (1.0 + 0.5 * dz * a) + 0.5 * dz * b * (rho[j] + rho[j + 1]);
      e[j + 1] = rhs / (1.0 - 0.5 * dz * a);
    }
    return e;
  };
  auto deriv = [&](double t, const std::vector<cplx>& rho, std::vector<cplx>* e_out) {
    const double eta = t < flip ? p.gradient : -p.gradient;
    const auto e = field(input(t), rho);
    if (e_out) *e_out = e;
    std::vector<cplx> d(nz);
    const double om2 = p.omega * p.omega;
    for (int j = 0; j < nz; ++j) {
      const cplx lin = I * (p.offset + eta * z[j]) - I * om2 / p.delta - I * om2 / d13;
      d[j] = lin * rho[j] + s * e[j];
    }
    return d;
  };
  CoarseEcho r;
  std::vector<cplx> rho(nz, 0.0), tmp(nz);
  const long steps = static_cast<long>(std::ceil(t_end / dt));
  const double h = t_end / steps;
  double e_in = 0, e_out = 0;
  for (long k = 0; k <= steps; ++k) {
    const double t = k * h;
    std::vector<cplx> e;
    const auto k1 = deriv(t, rho, &e);
    r.t.push_back(t);
    r.out.push_back(e.back());
    const double w = (k == 0 || k == steps) ? 0.5 * h : h;
    e_in += w * std::norm(input(t));
    if (t >= flip) e_out += w * std::norm(e.back());
    if (k == steps) break;
    for (int j = 0; j < nz; ++j) tmp[j] = rho[j] + 0.5 * h * k1[j];
    const auto k2 = deriv(t + 0.5 * h, tmp, nullptr);
    for (int j = 0; j < nz; ++j) tmp[j] = rho[j] + 0.5 * h * k2[j];
    const auto k3 = deriv(t + 0.5 * h, tmp, nullptr);
    for (int j = 0; j < nz; ++j) tmp[j] = rho[j] + h * k3[j];
    const auto k4 = deriv(t + h, tmp, nullptr);
    for (int j = 0; j < nz; ++j) rho[j] += h / 6.0 * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
  }
  r.efficiency = e_out / e_in;
  return r;
}

}  // namespace oracle
