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
#include <span>
#include <string_view>

namespace gemsim::kernels {

using cplx = std::complex<double>;

enum class Backend { scalar, avx2 };

std::string_view backend_name(Backend backend) noexcept;

/// True when the CPU and the build both support the AVX2+FMA variants.
bool avx2_supported() noexcept;

/// Backend used by the free functions below. Chosen on first use: AVX2 when
/// supported, scalar otherwise.
Backend active_backend() noexcept;

/// Forces a backend; throws ConfigError if it is not supported here.
void set_backend(Backend backend);

// All spans passed to one call must have equal length.

/// sum |a_i|^2
double sum_norm(std::span<const cplx> a);
/// sum conj(a_i) b_i
cplx dot(std::span<const cplx> a, std::span<const cplx> b);
/// a_i *= b_i
void multiply(std::span<cplx> a, std::span<const cplx> b);
/// a_i *= s_i
void scale(std::span<cplx> a, std::span<const double> s);
/// y_i += a_i x_i
void multiply_add(std::span<cplx> y, std::span<const cplx> a, std::span<const cplx> x);
/// y_i += alpha x_i
void axpy(std::span<cplx> y, cplx alpha, std::span<const cplx> x);

struct KernelTable {
  double (*sum_norm)(const cplx*, std::size_t);
  cplx (*dot)(const cplx*, const cplx*, std::size_t);
  void (*multiply)(cplx*, const cplx*, std::size_t);
  void (*scale)(cplx*, const double*, std::size_t);
  void (*multiply_add)(cplx*, const cplx*, const cplx*, std::size_t);
  void (*axpy)(cplx*, cplx, const cplx*, std::size_t);
};

/// Direct access to one backend's table, for equivalence testing.
const KernelTable& table(Backend backend);

}  // namespace gemsim::kernels
