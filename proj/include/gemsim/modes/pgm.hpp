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

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <vector>

#include "gemsim/core/field.hpp"

namespace gemsim::modes {

/// Grayscale raster, row 0 at the top. Pixel values in [0, maxval].
struct GrayImage {
  int width = 0;
  int height = 0;
  int maxval = 255;
  std::vector<std::uint16_t> pixels;

  std::uint16_t at(int col, int row) const { return pixels[static_cast<std::size_t>(row) * width + col]; }
};

/// Reads P2 (ASCII) or P5 (binary) PGM with 8- or 16-bit samples. Throws IoError.
GrayImage read_pgm(std::istream& in);
GrayImage read_pgm(const std::filesystem::path& path);

/// Writes binary P5; samples are two bytes big-endian when maxval > 255.
void write_pgm(std::ostream& out, const GrayImage& image);
void write_pgm(const std::filesystem::path& path, const GrayImage& image);

/// 16-bit rendering of an intensity map scaled so that `norm` maps to 65535
/// (norm <= 0 means the map's own maximum). Grid row ny-1 (largest y) becomes
/// image row 0.
GrayImage render_intensity(const Intensity& intensity, double norm = 0.0);

}  // namespace gemsim::modes
