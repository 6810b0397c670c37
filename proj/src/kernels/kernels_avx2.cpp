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

#if GEMSIM_HAVE_AVX2

#include <immintrin.h>

namespace gemsim::kernels::detail {
namespace {

// Two interleaved complex doubles per register: [re0, im0, re1, im1].

inline __m256d load(const cplx* p) { return _mm256_loadu_pd(reinterpret_cast<const double*>(p)); }
inline void store(cplx* p, __m256d v) { _mm256_storeu_pd(reinterpret_cast<double*>(p), v); }

inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d ar = _mm256_movedup_pd(a);
  const __m256d ai = _mm256_permute_pd(a, 0xF);
  const __m256d bs = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double sum_norm(const cplx* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = load(a + i);
    const __m256d v1 = load(a + i + 2);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  for (; i + 2 <= n; i += 2) {
    const __m256d v = load(a + i);
    acc0 = _mm256_fmadd_pd(v, v, acc0);
  }
  double total = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) total += a[i].real() * a[i].real() + a[i].imag() * a[i].imag();
  return total;
}

cplx dot(const cplx* a, const cplx* b, std::size_t n) {
  __m256d acc_re = _mm256_setzero_pd();
  __m256d acc_im = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = load(a + i);
    const __m256d vb = load(b + i);
    acc_re = _mm256_fmadd_pd(va, vb, acc_re);
    acc_im = _mm256_fmadd_pd(va, _mm256_permute_pd(vb, 0x5), acc_im);
  }
  alignas(32) double im_lanes[4];
  _mm256_store_pd(im_lanes, acc_im);
  double re = hsum(acc_re);
  double im = im_lanes[0] - im_lanes[1] + im_lanes[2] - im_lanes[3];
  for (; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void multiply(cplx* a, const cplx* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(a + i, cmul(load(a + i), load(b + i)));
  for (; i < n; ++i) {
    const double re = a[i].real() * b[i].real() - a[i].imag() * b[i].imag();
    const double im = a[i].real() * b[i].imag() + a[i].imag() * b[i].real();
    a[i] = {re, im};
  }
}

void scale(cplx* a, const double* s, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d pair = _mm_loadu_pd(s + i);
    const __m256d spread = _mm256_permute4x64_pd(_mm256_castpd128_pd256(pair), 0x50);
    store(a + i, _mm256_mul_pd(load(a + i), spread));
  }
  for (; i < n; ++i) a[i] *= s[i];
}

void multiply_add(cplx* y, const cplx* a, const cplx* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(y + i, _mm256_add_pd(load(y + i), cmul(load(a + i), load(x + i))));
  for (; i < n; ++i) {
    const double re = a[i].real() * x[i].real() - a[i].imag() * x[i].imag();
    const double im = a[i].real() * x[i].imag() + a[i].imag() * x[i].real();
    y[i] += cplx{re, im};
  }
}

void axpy(cplx* y, cplx alpha, const cplx* x, std::size_t n) {
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) store(y + i, _mm256_add_pd(load(y + i), cmul(va, load(x + i))));
  for (; i < n; ++i) {
    const double re = alpha.real() * x[i].real() - alpha.imag() * x[i].imag();
    const double im = alpha.real() * x[i].imag() + alpha.imag() * x[i].real();
    y[i] += cplx{re, im};
  }
}

}  // namespace

const KernelTable avx2_table{sum_norm, dot, multiply, scale, multiply_add, axpy};

}  // namespace gemsim::kernels::detail

#endif  // GEMSIM_HAVE_AVX2
