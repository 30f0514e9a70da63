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

#include "qssma/fft.hpp"

#include <fftw3.h>

#include <cmath>
#include <map>
#include <mutex>

#include "qssma/error.hpp"
#include "qssma/simd/kernels.hpp"

namespace qssma::signal {

namespace fft {
namespace {

struct PlanPair {
  fftw_plan forward;
  fftw_plan inverse;
};

// FFTW planning is not thread-safe; execution of an existing plan on new
// arrays is. Plans live until process exit.
class PlanCache {
 public:
  const PlanPair& get(std::size_t n) {
    std::lock_guard lock(mutex_);
    auto it = plans_.find(n);
    if (it != plans_.end()) return it->second;
    fftw_complex* scratch = fftw_alloc_complex(n);
    const int len = static_cast<int>(n);
    PlanPair pair{fftw_plan_dft_1d(len, scratch, scratch, FFTW_FORWARD, FFTW_ESTIMATE),
                  fftw_plan_dft_1d(len, scratch, scratch, FFTW_BACKWARD, FFTW_ESTIMATE)};
    fftw_free(scratch);
    if (pair.forward == nullptr || pair.inverse == nullptr) {
      fail(ErrorCategory::unsupported, "FFTW could not plan a transform of length " + std::to_string(n));
    }
    return plans_.emplace(n, pair).first->second;
  }

 private:
  std::mutex mutex_;
  std::map<std::size_t, PlanPair> plans_;
};

PlanCache& cache() {
  static PlanCache instance;
  return instance;
}

void run(fftw_plan plan, ComplexVector& data) {
  auto* p = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(plan, p, p);
  const double scale = 1.0 / std::sqrt(static_cast<double>(data.size()));
  for (auto& x : data) x *= scale;
}

}  // namespace

void forward(ComplexVector& data) { run(cache().get(data.size()).forward, data); }
void inverse(ComplexVector& data) { run(cache().get(data.size()).inverse, data); }

}  // namespace fft

SampledSpectrum::SampledSpectrum(const TimeGrid& grid, ComplexVector bins) : grid_(grid), bins_(std::move(bins)) {
  require(bins_.size() == grid_.size(), "SampledSpectrum: bin count does not match the grid");
}

SampledSpectrum to_frequency(const SampledEnvelope& env) {
  ComplexVector data(env.samples().begin(), env.samples().end());
  fft::forward(data);
  return SampledSpectrum(env.grid(), std::move(data));
}

SampledEnvelope to_time(const SampledSpectrum& spectrum) {
  ComplexVector data(spectrum.bins().begin(), spectrum.bins().end());
  fft::inverse(data);
  return SampledEnvelope(spectrum.grid(), std::move(data));
}

double norm_sq(const SampledSpectrum& spectrum) {
  return simd::norm_sq(spectrum.bins()) * spectrum.grid().dt();
}

}  // namespace qssma::signal
