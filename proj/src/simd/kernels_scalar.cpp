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

#include "qssma/simd/kernels.hpp"

namespace qssma::simd {
namespace {

void scale_real(Complex* x, const double* w, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
}

void scale_real_to(const Complex* x, const double* w, Complex* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = Complex(x[i].real() * w[i], x[i].imag() * w[i]);
}

double norm_sq(const Complex* x, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return sum;
}

Complex dot(const Complex* a, const Complex* b, std::size_t n) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

void accumulate_abs2(const Complex* x, double* acc, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) acc[i] += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

constexpr KernelTable kScalar{Isa::scalar, scale_real, scale_real_to, norm_sq, dot, accumulate_abs2};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace qssma::simd
