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

#pragma once

// Data-parallel inner loops shared by the signal, optics and network layers.
//
// Every kernel has a scalar reference implementation and, on x86-64, an AVX2
// variant. The active table is chosen once, on first use, from the CPU's
// feature bits; QSSMA_SIMD=scalar in the environment forces the reference
// path. Element-wise kernels are bit-identical across variants. Reductions
// use a different summation order and agree to rounding only.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace qssma::simd {

using Complex = std::complex<double>;

enum class Isa { scalar, avx2 };

struct KernelTable {
  Isa isa;
  // x[i] *= w[i]
  void (*scale_real)(Complex* x, const double* w, std::size_t n);
  // out[i] = x[i] * w[i]
  void (*scale_real_to)(const Complex* x, const double* w, Complex* out, std::size_t n);
  // sum |x[i]|^2
  double (*norm_sq)(const Complex* x, std::size_t n);
  // sum conj(a[i]) * b[i]
  Complex (*dot)(const Complex* a, const Complex* b, std::size_t n);
  // acc[i] += |x[i]|^2
  void (*accumulate_abs2)(const Complex* x, double* acc, std::size_t n);
};

const KernelTable& scalar_kernels() noexcept;
// Null when the running CPU (or the build) lacks AVX2.
const KernelTable* avx2_kernels() noexcept;

// The dispatch table used by the rest of the library.
const KernelTable& active() noexcept;
std::string_view isa_name(Isa isa) noexcept;

inline void scale_real(std::span<Complex> x, std::span<const double> w) {
  active().scale_real(x.data(), w.data(), x.size());
}
inline void scale_real_to(std::span<const Complex> x, std::span<const double> w,
                          std::span<Complex> out) {
  active().scale_real_to(x.data(), w.data(), out.data(), x.size());
}
inline double norm_sq(std::span<const Complex> x) { return active().norm_sq(x.data(), x.size()); }
inline Complex dot(std::span<const Complex> a, std::span<const Complex> b) {
  return active().dot(a.data(), b.data(), a.size());
}
inline void accumulate_abs2(std::span<const Complex> x, std::span<double> acc) {
  active().accumulate_abs2(x.data(), acc.data(), x.size());
}

}  // namespace qssma::simd
