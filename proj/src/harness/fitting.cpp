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

#include "gemsim/harness/fitting.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "gemsim/core/error.hpp"

namespace gemsim::harness {
namespace {

// Least squares on a polynomial basis of the given degree; returns
// coefficients and their standard errors.
struct PolyFit {
  Eigen::VectorXd coef;
  Eigen::VectorXd stderr_;
  Eigen::VectorXd residuals;
};

PolyFit poly_fit(const Eigen::VectorXd& t, const Eigen::VectorXd& y, int degree) {
  const auto n = t.size();
  // Centre and scale t so the normal equations stay well conditioned.
  const double mid = 0.5 * (t.maxCoeff() + t.minCoeff());
  const double half = std::max(0.5 * (t.maxCoeff() - t.minCoeff()), std::numeric_limits<double>::min());
  Eigen::MatrixXd a(n, degree + 1);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double u = (t(i) - mid) / half;
    double p = 1.0;
    for (int d = 0; d <= degree; ++d, p *= u) a(i, d) = p;
  }
  const Eigen::MatrixXd ata = a.transpose() * a;
  const Eigen::LDLT<Eigen::MatrixXd> ldlt(ata);
  Eigen::VectorXd c = ldlt.solve(a.transpose() * y);
  if (ldlt.info() != Eigen::Success || !c.allFinite())
    throw NumericalError("least-squares fit overflowed or is singular");
  PolyFit f;
  f.residuals = y - a * c;
  const auto dof = n - (degree + 1);
  const double s2 = dof > 0 ? f.residuals.squaredNorm() / static_cast<double>(dof) : 0.0;
  const Eigen::MatrixXd cov = ldlt.solve(Eigen::MatrixXd::Identity(degree + 1, degree + 1)) * s2;
  // Back to the unscaled polynomial in (t - mid).
  f.coef.resize(degree + 1);
  f.stderr_.resize(degree + 1);
  for (int d = 0; d <= degree; ++d) {
    const double s = std::pow(half, d);
    f.coef(d) = c(d) / s;
    f.stderr_(d) = std::sqrt(std::max(cov(d, d), 0.0)) / s;
  }
  // Intercept at t = 0 rather than at mid for degree 1.
  if (degree == 1) {
    f.coef(0) -= f.coef(1) * mid;
  }
  return f;
}

void require_distinct_times(std::span<const std::pair<double, double>> s) {
  for (const auto& p : s)
    if (p.first != s.front().first) return;
  throw ConfigError("fit needs at least two distinct times");
}

}  // namespace

ExponentialFit fit_exponential_decay(std::span<const std::pair<double, double>> series) {
  if (series.size() < 3) throw ConfigError("exponential fit needs at least 3 points");
  require_distinct_times(series);
  const auto n = static_cast<Eigen::Index>(series.size());
  Eigen::VectorXd t(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& [ti, yi] = series[i];
    if (!(yi > 0.0) || !std::isfinite(yi) || !std::isfinite(ti))
      throw ConfigError("exponential fit needs finite, strictly positive values");
    t(i) = ti;
    y(i) = std::log(yi);
  }
  const auto lin = poly_fit(t, y, 1);
  ExponentialFit f;
  f.amplitude = std::exp(lin.coef(0));
  f.tau = lin.coef(1) == 0.0 ? std::numeric_limits<double>::infinity() : -1.0 / lin.coef(1);
  f.residuals.assign(lin.residuals.data(), lin.residuals.data() + n);
  f.residual_rms = std::sqrt(lin.residuals.squaredNorm() / static_cast<double>(n));
  if (n >= 4) {
    const auto quad = poly_fit(t, y, 2);
    f.curvature = quad.coef(2);
    const double span = t.maxCoeff() - t.minCoeff();
    const double size = std::abs(f.curvature) * span * span / 8.0;  // sagitta in log units
    f.curvature_t = quad.stderr_(2) > 0.0 ? std::abs(f.curvature) / quad.stderr_(2)
                                           : (size > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    f.curvature_flagged = f.curvature_t > 3.0 && size > 1e-6;
  }
  return f;
}

LinearFit fit_linear(std::span<const std::pair<double, double>> series) {
  if (series.size() < 2) throw ConfigError("linear fit needs at least 2 points");
  require_distinct_times(series);
  const auto n = static_cast<Eigen::Index>(series.size());
  Eigen::VectorXd t(n), y(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t(i) = series[i].first;
    y(i) = series[i].second;
    if (!std::isfinite(t(i)) || !std::isfinite(y(i))) throw ConfigError("linear fit needs finite values");
  }
  const auto f = poly_fit(t, y, 1);
  LinearFit out;
  out.intercept = f.coef(0);
  out.slope = f.coef(1);
  out.slope_stderr = f.stderr_(1);
  const double ss_res = f.residuals.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();
  out.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  out.residual_rms = std::sqrt(ss_res / static_cast<double>(n));
  return out;
}

}  // namespace gemsim::harness
