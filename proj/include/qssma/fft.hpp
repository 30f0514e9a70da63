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

// Unitary DFT pair over a TimeGrid. Backed by FFTW with FFTW_ESTIMATE plans
// so that the same input always yields the same bits.

#include "qssma/signal.hpp"

namespace qssma::signal {

// Spectrum of an envelope. Bin k holds (1/sqrt(L)) sum_n x_n exp(-2 pi i k n / L),
// so sum |X|^2 dt equals the time-domain norm.
class SampledSpectrum {
 public:
  SampledSpectrum(const TimeGrid& grid, ComplexVector bins);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> bins() const noexcept { return bins_; }
  std::span<Complex> bins() noexcept { return bins_; }
  ComplexVector& storage() noexcept { return bins_; }
  double frequency_at(std::size_t k) const noexcept { return grid_.frequency_at(k); }

 private:
  TimeGrid grid_;
  ComplexVector bins_;
};

SampledSpectrum to_frequency(const SampledEnvelope& env);
SampledEnvelope to_time(const SampledSpectrum& spectrum);
double norm_sq(const SampledSpectrum& spectrum);

namespace fft {

// In-place unitary transforms on aligned buffers; used by the hot paths that
// avoid reallocating envelopes.
void forward(ComplexVector& data);
void inverse(ComplexVector& data);

}  // namespace fft

}  // namespace qssma::signal
