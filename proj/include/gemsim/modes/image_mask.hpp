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

#include <filesystem>
#include <vector>

#include "gemsim/core/field.hpp"
#include "gemsim/modes/pgm.hpp"

namespace gemsim::modes {

/// Transmission in [0, 1] of `image` resampled onto `grid` by bilinear
/// interpolation. The image spans the full grid extent, pixel centres mapped
/// to evenly spaced positions; image row 0 is the largest y.
std::vector<double> resample_transmission(const GrayImage& image, const TransverseGrid& grid);

/// sqrt(transmission) times a unit-power TEM-00 carrier, not renormalized.
TransverseField masked_carrier(const GrayImage& image, double carrier_waist, const TransverseGrid& grid);

/// masked_carrier renormalized to unit power. Throws IoError for an empty
/// image and ConfigError for an all-black mask or a non-positive waist.
TransverseField load_image_mask(const GrayImage& image, double carrier_waist, const TransverseGrid& grid);
TransverseField load_image_mask(const std::filesystem::path& path, double carrier_waist, const TransverseGrid& grid);

/// Binary checkerboard with the given full period in pixels (squares of period/2).
GrayImage checkerboard(int width, int height, int period_px);

enum class Half { left, right };

/// White on the kept half, black on the other.
GrayImage half_plane(int width, int height, Half keep);

}  // namespace gemsim::modes
