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

#include <complex>
#include <memory>
#include <span>

namespace gemsim {

/// In-place unnormalized 2D complex DFT over an nx-by-ny row-major array
/// (FFTW backend). Plans are cached per shape and shared between instances;
/// transforms may run concurrently.
class Fft2d {
 public:
  Fft2d(int nx, int ny);

  int nx() const noexcept { return nx_; }
  int ny() const noexcept { return ny_; }

  void forward(std::span<std::complex<double>> data) const;
  /// Unnormalized: forward followed by inverse scales by nx*ny.
  void inverse(std::span<std::complex<double>> data) const;

  struct Plans;

 private:
  int nx_;
  int ny_;
  std::shared_ptr<const Plans> plans_;
};

}  // namespace gemsim
