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

#include <atomic>

#include "gemsim/core/error.hpp"
#include "tables.hpp"

namespace gemsim::kernels {
namespace {

Backend detect() noexcept { return avx2_supported() ? Backend::avx2 : Backend::scalar; }

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> ptr{&table(detect())};
  return ptr;
}

std::atomic<Backend>& current_backend() {
  static std::atomic<Backend> backend{detect()};
  return backend;
}

inline const KernelTable& active() { return *current().load(std::memory_order_relaxed); }

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
  return backend == Backend::avx2 ? "avx2" : "scalar";
}

bool avx2_supported() noexcept {
#if GEMSIM_HAVE_AVX2
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok;
#else
  return false;
#endif
}

const KernelTable& table(Backend backend) {
  if (backend == Backend::avx2) {
#if GEMSIM_HAVE_AVX2
    if (avx2_supported()) return detail::avx2_table;
#endif
    throw ConfigError("AVX2 kernels are not available on this host");
  }
  return detail::scalar_table;
}

Backend active_backend() noexcept { return current_backend().load(); }

void set_backend(Backend backend) {
  current().store(&table(backend));
  current_backend().store(backend);
}

double sum_norm(std::span<const cplx> a) { return active().sum_norm(a.data(), a.size()); }

cplx dot(std::span<const cplx> a, std::span<const cplx> b) {
  if (!(a.size() == b.size())) throw ConfigError("kernel spans differ in length");
  return active().dot(a.data(), b.data(), a.size());
}

void multiply(std::span<cplx> a, std::span<const cplx> b) {
  if (!(a.size() == b.size())) throw ConfigError("kernel spans differ in length");
  active().multiply(a.data(), b.data(), a.size());
}

void scale(std::span<cplx> a, std::span<const double> s) {
  if (!(a.size() == s.size())) throw ConfigError("kernel spans differ in length");
  active().scale(a.data(), s.data(), a.size());
}

void multiply_add(std::span<cplx> y, std::span<const cplx> a, std::span<const cplx> x) {
  if (!(y.size() == a.size() && y.size() == x.size())) throw ConfigError("kernel spans differ in length");
  active().multiply_add(y.data(), a.data(), x.data(), y.size());
}

void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x) {
  if (!(y.size() == x.size())) throw ConfigError("kernel spans differ in length");
  active().axpy(y.data(), alpha, x.data(), y.size());
}

}  // namespace gemsim::kernels
