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

#include "tables.hpp"

namespace gemsim::kernels::detail {
namespace {

double sum_norm(const cplx* a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return acc;
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void multiply(cplx* a, const cplx* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    a[i] = {re, im};
  }
}

void scale(cplx* a, const double* s, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) a[i] *= s[i];
}

void multiply_add(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = a[i].real() * x[i].real() - a[i].imag() * x[i].imag();
    const double im = a[i].real() * x[i].imag() + a[i].imag() * x[i].real();
    y[i] += cplx{re, im};
  }
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] += cplx{re, im};
  }
}

}  // namespace

const KernelTable scalar_table{sum_norm, dot, multiply, scale, multiply_add, axpy};

}  // namespace gemsim::kernels::detail
