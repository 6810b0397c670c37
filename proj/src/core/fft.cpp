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

#include "gemsim/core/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

#include "gemsim/core/error.hpp"

namespace gemsim {

struct Fft2d::Plans {
  fftw_plan forward = nullptr;
  fftw_plan inverse = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (forward) fftw_destroy_plan(forward);
    if (inverse) fftw_destroy_plan(inverse);
  }
  static std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
  }
};

namespace {

std::shared_ptr<const Fft2d::Plans> plans_for(int nx, int ny) {
  // Mutex first so it outlives the cache during static destruction.
  auto& mutex = Fft2d::Plans::planner_mutex();
  static std::map<std::pair<int, int>, std::shared_ptr<const Fft2d::Plans>> cache;
  std::lock_guard lock(mutex);
  auto it = cache.find({nx, ny});
  if (it != cache.end()) return it->second;

  auto plans = std::make_shared<Fft2d::Plans>();
  auto* buf = fftw_alloc_complex(static_cast<std::size_t>(nx) * ny);
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  plans->forward = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_FORWARD, flags);
  plans->inverse = fftw_plan_dft_2d(ny, nx, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
  if (!plans->forward || !plans->inverse) throw NumericalError("FFTW failed to create a plan");
  cache.emplace(std::pair{nx, ny}, plans);
  return plans;
}

fftw_complex* as_fftw(std::span<std::complex<double>> data) {
  return reinterpret_cast<fftw_complex*>(data.data());
}

}  // namespace

Fft2d::Fft2d(int nx, int ny) : nx_(nx), ny_(ny) {
  if (nx < 1 || ny < 1) throw ConfigError("FFT shape must be positive");
  plans_ = plans_for(nx, ny);
}

void Fft2d::forward(std::span<std::complex<double>> data) const {
  if (data.size() != static_cast<std::size_t>(nx_) * ny_) throw ConfigError("FFT buffer size mismatch");
  fftw_execute_dft(plans_->forward, as_fftw(data), as_fftw(data));
}

void Fft2d::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != static_cast<std::size_t>(nx_) * ny_) throw ConfigError("FFT buffer size mismatch");
  fftw_execute_dft(plans_->inverse, as_fftw(data), as_fftw(data));
}

}  // namespace gemsim
