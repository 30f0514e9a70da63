// Copyright 2026 The qssma Authors. All Rights Reserved.
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

// Compiled with -mavx2. Nothing in this file may run before the dispatcher has
// confirmed AVX2 support.

#include <immintrin.h>

#include "qssma/simd/kernels.hpp"

namespace qssma::simd::avx2 {
namespace {

// Complex<double> is laid out as {re, im}; one __m256d holds two samples.
// Real weights are broadcast pairwise: {w0, w0, w1, w1}.
inline __m256d pair_weights(const double* w) {
  const __m128d two = _mm_loadu_pd(w);
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(two), 0b01010000);
}

void scale_real(Complex* x, const double* w, std::size_t n) {
  auto* p = reinterpret_cast<double*>(x);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(p + 2 * i, _mm256_mul_pd(v, pair_weights(w + i)));
  }
  for (; i < n; ++i) x[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
}

void scale_real_to(const Complex* x, const double* w, Complex* out, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  auto* q = reinterpret_cast<double*>(out);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(p + 2 * i);
    _mm256_storeu_pd(q + 2 * i, _mm256_mul_pd(v, pair_weights(w + i)));
  }
  for (; i < n; ++i) out[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

double norm_sq(const Complex* x, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(p + 2 * i);
    const __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
    acc0 = _mm256_add_pd(acc0, _mm256_mul_pd(a, a));
    acc1 = _mm256_add_pd(acc1, _mm256_mul_pd(b, b));
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return sum;
}

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
  const auto* pa = reinterpret_cast<const double*>(a);
  const auto* pb = reinterpret_cast<const double*>(b);
  // re accumulates {ar*br, ai*bi}; im accumulates {ar*bi, -ai*br} lane-wise.
  __m256d re = _mm256_setzero_pd();
  __m256d im = _mm256_setzero_pd();
  const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(pa + 2 * i);
    const __m256d vb = _mm256_loadu_pd(pb + 2 * i);
    re = _mm256_add_pd(re, _mm256_mul_pd(va, vb));
    const __m256d vb_swapped = _mm256_permute_pd(vb, 0b0101);
    im = _mm256_add_pd(im, _mm256_mul_pd(_mm256_mul_pd(va, vb_swapped), sign));
  }
  double sre = hsum(re);
  double sim = hsum(im);
  for (; i < n; ++i) {
    sre += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    sim += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {sre, sim};
}

void accumulate_abs2(const Complex* x, double* acc, std::size_t n) {
  const auto* p = reinterpret_cast<const double*>(x);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(p + 2 * i);
    const __m256d b = _mm256_loadu_pd(p + 2 * i + 4);
    const __m256d a2 = _mm256_mul_pd(a, a);
    const __m256d b2 = _mm256_mul_pd(b, b);
    // hadd gives {a0, b0, a1, b1} pair sums; reorder to {a0, a1, b0, b1}.
    const __m256d sums = _mm256_permute4x64_pd(_mm256_hadd_pd(a2, b2), 0b11011000);
    _mm256_storeu_pd(acc + i, _mm256_add_pd(_mm256_loadu_pd(acc + i), sums));
  }
  for (; i < n; ++i) acc[i] += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

constexpr KernelTable kAvx2{Isa::avx2, scale_real, scale_real_to, norm_sq, dot, accumulate_abs2};

}  // namespace

const KernelTable& table() noexcept { return kAvx2; }

}  // namespace qssma::simd::avx2
