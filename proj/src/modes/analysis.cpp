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

#include "gemsim/modes/analysis.hpp"

#include <algorithm>
#include <cmath>

namespace gemsim::modes {

BeamStats intensity_moments(const TransverseField& field) { return intensity_moments(intensity(field)); }

BeamStats intensity_moments(const Intensity& in) {
  const auto& g = in.grid;
  double s0 = 0, sx = 0, sy = 0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    for (int ix = 0; ix < g.nx(); ++ix) {
      const double w = in(ix, iy);
      s0 += w;
      sx += w * g.x(ix);
      sy += w * g.y(iy);
    }
  }
  if (!(s0 > 0.0)) throw ConfigError("intensity_moments: zero-power field");
  BeamStats st;
  st.power = s0 * g.cell_area();
  st.centroid_x = sx / s0;
  st.centroid_y = sy / s0;
  double sxx = 0, syy = 0, sxy = 0;
  for (int iy = 0; iy < g.ny(); ++iy) {
    const double dy = g.y(iy) - st.centroid_y;
    for (int ix = 0; ix < g.nx(); ++ix) {
      const double dx = g.x(ix) - st.centroid_x;
      const double w = in(ix, iy);
      sxx += w * dx * dx;
      syy += w * dy * dy;
      sxy += w * dx * dy;
    }
  }
  st.var_x = sxx / s0;
  st.var_y = syy / s0;
  st.cov_xy = sxy / s0;
  return st;
}

std::vector<double> smooth_three_point(std::span<const double> s) {
  const std::size_t n = s.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i == 0 ? 0 : i - 1;
    const std::size_t hi = std::min(n - 1, i + 1);
    double acc = 0;
    for (std::size_t k = lo; k <= hi; ++k) acc += s[k];
    out[i] = acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

std::vector<double> centroid_row_cut(const Intensity& in) {
  const auto& g = in.grid;
  const BeamStats st = intensity_moments(in);
  const double fy = std::clamp(st.centroid_y / g.dy() + 0.5 * (g.ny() - 1), 0.0, g.ny() - 1.0);
  const int r0 = std::min(static_cast<int>(std::floor(fy)), g.ny() - 1);
  const int r1 = std::min(r0 + 1, g.ny() - 1);
  const double w1 = fy - r0;
  std::vector<double> cut(g.nx());
  for (int ix = 0; ix < g.nx(); ++ix) cut[ix] = (1.0 - w1) * in(ix, r0) + w1 * in(ix, r1);
  return cut;
}

double tem20_peak_ratio(const Intensity& in) {
  const auto cut = smooth_three_point(centroid_row_cut(in));
  const auto& g = in.grid;
  const double top = *std::max_element(cut.begin(), cut.end());
  if (!(top > 0.0)) throw PeakDetectionError("tem20_peak_ratio: empty intensity cut");

  struct Peak {
    double pos;  // fractional sample index
    double height;
  };
  std::vector<Peak> peaks;
  for (std::size_t i = 1; i + 1 < cut.size(); ++i) {
    const double a = cut[i - 1], b = cut[i], c = cut[i + 1];
    if (!(b > a && b >= c) || b < 1e-3 * top) continue;
    const double curv = a - 2.0 * b + c;
    double off = 0.0, h = b;
    if (curv < 0.0) {
      off = 0.5 * (a - c) / curv;
      h = b - 0.125 * (a - c) * (a - c) / curv;
    }
    peaks.push_back({static_cast<double>(i) + off, h});
  }
  if (peaks.size() < 3) throw PeakDetectionError("tem20_peak_ratio: fewer than three peaks (over-diffused profile?)");

  const double centre = intensity_moments(in).centroid_x / g.dx() + 0.5 * (g.nx() - 1);
  auto central = std::min_element(peaks.begin(), peaks.end(), [&](const Peak& p, const Peak& q) {
    return std::abs(p.pos - centre) < std::abs(q.pos - centre);
  });
  double left = -1.0, right = -1.0;
  for (auto it = peaks.begin(); it != peaks.end(); ++it) {
    if (it == central) continue;
    if (it->pos < central->pos) left = std::max(left, it->height);
    else right = std::max(right, it->height);
  }
  if (left < 0.0 || right < 0.0) throw PeakDetectionError("tem20_peak_ratio: missing an outer peak");
  return central->height / (0.5 * (left + right));
}

}  // namespace gemsim::modes
