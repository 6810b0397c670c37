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

#include "gemsim/core/field.hpp"

#include <cmath>
#include <string>

#include "gemsim/core/error.hpp"
#include "gemsim/core/fft.hpp"
#include "gemsim/kernels/kernels.hpp"

namespace gemsim {

TransverseField::TransverseField(TransverseGrid grid) : grid_(grid), values_(grid.size()) {}

TransverseField::TransverseField(TransverseGrid grid, std::vector<cplx> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.size()) throw ConfigError("field sample count does not match its grid");
}

TransverseField& TransverseField::operator*=(cplx s) {
  for (auto& v : values_) v *= s;
  return *this;
}

Intensity intensity(const TransverseField& field) {
  Intensity out{field.grid(), std::vector<double>(field.grid().size())};
  const auto v = field.values();
  for (std::size_t i = 0; i < v.size(); ++i) out.values[i] = std::norm(v[i]);
  return out;
}

double total_power(const TransverseField& field) {
  return kernels::sum_norm(field.values()) * field.grid().cell_area();
}

double spectral_power(const TransverseField& field) {
  const auto& g = field.grid();
  std::vector<cplx> spectrum(field.values().begin(), field.values().end());
  Fft2d(g.nx(), g.ny()).forward(spectrum);
  return kernels::sum_norm(spectrum) * g.cell_area() / static_cast<double>(g.size());
}

void require_same_grid(const TransverseGrid& a, const TransverseGrid& b, const char* what) {
  if (!(a == b)) throw ConfigError(std::string(what) + ": grid mismatch");
}

}  // namespace gemsim
