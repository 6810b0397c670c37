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

#include "gemsim/modes/gaussian_fit.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"
#include "gemsim/modes/analysis.hpp"

namespace gemsim::modes {
namespace {

using Vec7 = Eigen::Matrix<double, 7, 1>;
using Mat7 = Eigen::Matrix<double, 7, 7>;

// Parameters in normalized units: coordinates relative to the moment centroid
// in units of `scale`, intensity in units of the data maximum.
// p = [A, x0, y0, a, b, c, offset]; model = A exp(-(a u^2 + 2 b u v + c v^2)/2) + offset.
struct Problem {
  std::vector<double> u, v, data;

  double cost(const Vec7& p) const {
    double acc = 0;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double r = data[i] - model(p, u[i], v[i]);
      acc += r * r;
    }
    return acc;
  }

  static double model(const Vec7& p, double uu, double vv) {
    const double du = uu - p[1], dv = vv - p[2];
    return p[0] * std::exp(-0.5 * (p[3] * du * du + 2.0 * p[4] * du * dv + p[5] * dv * dv)) + p[6];
  }

  void normal_equations(const Vec7& p, Mat7& jtj, Vec7& jtr) const {
    jtj.setZero();
    jtr.setZero();
    Vec7 j;
    for (std::size_t i = 0; i < data.size(); ++i) {
      const double du = u[i] - p[1], dv = v[i] - p[2];
      const double e = std::exp(-0.5 * (p[3] * du * du + 2.0 * p[4] * du * dv + p[5] * dv * dv));
      const double ae = p[0] * e;
      j << e, ae * (p[3] * du + p[4] * dv), ae * (p[4] * du + p[5] * dv), -0.5 * ae * du * du, -ae * du * dv,
          -0.5 * ae * dv * dv, 1.0;
      const double r = data[i] - (ae + p[6]);
      jtj.selfadjointView<Eigen::Lower>().rankUpdate(j);
      jtr += j * r;
    }
    jtj = jtj.selfadjointView<Eigen::Lower>();
  }
};

bool admissible(const Vec7& p) { return p[3] > 0 && p[5] > 0 && p[3] * p[5] - p[4] * p[4] > 0; }

}  // namespace

GaussianFit fit_gaussian_2d(const Intensity& in, const FitOptions& options) {
  const auto& g = in.grid;
  const double peak = *std::max_element(in.values.begin(), in.values.end());
  if (!(peak > 0.0)) throw ConfigError("fit_gaussian_2d: no positive samples");
  const double floor_value = std::max(0.0, *std::min_element(in.values.begin(), in.values.end()));

  // Moment seed on the offset-subtracted map.
  Intensity shifted{g, in.values};
  for (auto& w : shifted.values) w = std::max(0.0, w - floor_value);
  const BeamStats seed = intensity_moments(shifted);
  const double scale = std::sqrt(std::max(seed.mean_var(), 1e-300));

  Problem prob;
  prob.u.reserve(g.size());
  prob.v.reserve(g.size());
  prob.data.reserve(g.size());
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      prob.u.push_back((g.x(ix) - seed.centroid_x) / scale);
      prob.v.push_back((g.y(iy) - seed.centroid_y) / scale);
      prob.data.push_back(in(ix, iy) / peak);
    }
  }

  const double sxx = seed.var_x / (scale * scale), syy = seed.var_y / (scale * scale),
               sxy = seed.cov_xy / (scale * scale);
  const double det = std::max(sxx * syy - sxy * sxy, 1e-12);
  Vec7 p;
  p << (peak - floor_value) / peak, 0.0, 0.0, syy / det, -sxy / det, sxx / det, floor_value / peak;
  const Vec7 seed_params = p;

  double cost = prob.cost(p);
  double lambda = 1e-3;
  bool converged = false;
  int iter = 0;
  Mat7 jtj;
  Vec7 jtr;
  for (; iter < options.max_iterations && !converged; ++iter) {
    prob.normal_equations(p, jtj, jtr);
    bool accepted = false;
    while (!accepted && lambda < 1e12) {
      Mat7 damped = jtj;
      damped.diagonal() += lambda * jtj.diagonal().cwiseMax(1e-12);
      const Vec7 step = damped.ldlt().solve(jtr);
      const Vec7 trial = p + step;
      const double trial_cost = admissible(trial) ? prob.cost(trial) : INFINITY;
      if (trial_cost <= cost) {
        const double rel = step.norm() / (p.norm() + 1e-30);
        p = trial;
        const double prev = cost;
        cost = trial_cost;
        lambda = std::max(lambda * 0.1, 1e-12);
        accepted = true;
        if (rel < options.step_tolerance || prev - cost <= 1e-30 * std::max(prev, 1e-300)) converged = true;
      } else {
        lambda *= 10.0;
      }
    }
    if (!accepted) {
      // Even heavy damping cannot lower the cost: stationary to working precision.
      converged = true;
      break;
    }
  }

  GaussianFit fit;
  fit.iterations = iter;
  fit.converged = converged;
  if (!converged) {
    p = seed_params;
    fit.diagnostic = "Levenberg-Marquardt hit the iteration cap; returning the moment-based estimate";
  }

  const double s2 = scale * scale;
  const double idet = 1.0 / (p[3] * p[5] - p[4] * p[4]);
  fit.var_x = p[5] * idet * s2;
  fit.var_y = p[3] * idet * s2;
  fit.cov_xy = -p[4] * idet * s2;
  const double tr = fit.var_x + fit.var_y;
  const double disc = std::sqrt(std::max(0.0, 0.25 * (fit.var_x - fit.var_y) * (fit.var_x - fit.var_y) +
                                                  fit.cov_xy * fit.cov_xy));
  fit.var_major = 0.5 * tr + disc;
  fit.var_minor = 0.5 * tr - disc;
  fit.angle = 0.5 * std::atan2(2.0 * fit.cov_xy, fit.var_x - fit.var_y);
  fit.amplitude = p[0] * peak;
  fit.offset = p[6] * peak;
  fit.centroid_x = seed.centroid_x + p[1] * scale;
  fit.centroid_y = seed.centroid_y + p[2] * scale;

  double resid = 0, total = 0;
  for (std::size_t i = 0; i < prob.data.size(); ++i) {
    resid += std::abs(prob.data[i] - Problem::model(p, prob.u[i], prob.v[i]));
    total += prob.data[i];
  }
  fit.residual_norm = resid * peak * g.cell_area();
  fit.relative_residual = total > 0 ? resid / total : 0.0;
  return fit;
}

}  // namespace gemsim::modes
