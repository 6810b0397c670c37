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

#include "gemsim/modes/image_mask.hpp"

#include <algorithm>
#include <cmath>

#include "gemsim/core/error.hpp"
#include "gemsim/modes/hermite_gauss.hpp"

namespace gemsim::modes {

std::vector<double> resample_transmission(const GrayImage& image, const TransverseGrid& grid) {
  if (image.width <= 0 || image.height <= 0 || image.pixels.empty()) throw IoError("mask image is empty");
  std::vector<double> out(grid.size());
  const double inv_max = 1.0 / image.maxval;
  for (int iy = 0; iy < grid.ny(); ++iy) {
    // Grid sample centres map onto pixel centres; row 0 is the top (largest y).
    const double fy = std::clamp((grid.ny() - 1 - iy + 0.5) * image.height / grid.ny() - 0.5, 0.0,
                                 image.height - 1.0);
    const int r0 = static_cast<int>(fy);
    const int r1 = std::min(r0 + 1, image.height - 1);
    const double wy = fy - r0;
    for (int ix = 0; ix < grid.nx(); ++ix) {
      const double fx = std::clamp((ix + 0.5) * image.width / grid.nx() - 0.5, 0.0, image.width - 1.0);
      const int c0 = static_cast<int>(fx);
      const int c1 = std::min(c0 + 1, image.width - 1);
      const double wx = fx - c0;
      const double top = (1 - wx) * image.at(c0, r0) + wx * image.at(c1, r0);
      const double bottom = (1 - wx) * image.at(c0, r1) + wx * image.at(c1, r1);
      out[grid.index(ix, iy)] = ((1 - wy) * top + wy * bottom) * inv_max;
    }
  }
  return out;
}

TransverseField masked_carrier(const GrayImage& image, double carrier_waist, const TransverseGrid& grid) {
  if (!(carrier_waist > 0.0)) throw ConfigError("carrier waist must be positive");
  const auto transmission = resample_transmission(image, grid);
  TransverseField field = hermite_gauss({0, 0}, carrier_waist, grid);
  auto v = field.values();
  for (std::size_t i = 0; i < v.size(); ++i) v[i] *= std::sqrt(transmission[i]);
  return field;
}

TransverseField load_image_mask(const GrayImage& image, double carrier_waist, const TransverseGrid& grid) {
  TransverseField field = masked_carrier(image, carrier_waist, grid);
  const double p = total_power(field);
  if (!(p > 0.0)) throw ConfigError("mask blocks the whole carrier (all-black image)");
  field *= 1.0 / std::sqrt(p);
  return field;
}

TransverseField load_image_mask(const std::filesystem::path& path, double carrier_waist,
                                const TransverseGrid& grid) {
  return load_image_mask(read_pgm(path), carrier_waist, grid);
}

GrayImage checkerboard(int width, int height, int period_px) {
  if (width <= 0 || height <= 0 || period_px < 2 || period_px % 2 != 0)
    throw ConfigError("checkerboard needs positive size and an even period >= 2");
  GrayImage img{width, height, 255, std::vector<std::uint16_t>(static_cast<std::size_t>(width) * height)};
  const int half = period_px / 2;
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c)
      img.pixels[static_cast<std::size_t>(r) * width + c] = ((r / half + c / half) % 2 == 0) ? 255 : 0;
  return img;
}

GrayImage half_plane(int width, int height, Half keep) {
  GrayImage img{width, height, 255, std::vector<std::uint16_t>(static_cast<std::size_t>(width) * height)};
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const bool left = 2 * c < width;
      img.pixels[static_cast<std::size_t>(r) * width + c] = (left == (keep == Half::left)) ? 255 : 0;
    }
  }
  return img;
}

}  // namespace gemsim::modes
