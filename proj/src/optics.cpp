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

#include "qssma/optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qssma/error.hpp"
#include "qssma/simd/kernels.hpp"

namespace qssma::optics {

namespace {

void check_grid(const TimeGrid& expected, const TimeGrid& actual, const char* what) {
  require(expected == actual, std::string(what) + ": envelope grid differs from the component's grid");
}

}  // namespace

FbgSpec FbgSpec::standard(double bin_duration) {
  return FbgSpec{signal::default_sigma_filt(bin_duration), 0.0, false};
}

FbgSpec FbgSpec::all_pass() { return FbgSpec{1.0, 0.0, true}; }

double fbg_reflect_amplitude(const FbgSpec& spec, double f) {
  if (spec.transparent) return 0.0;
  const double d = (f - spec.center_offset) / spec.sigma_filt;
  return std::exp(-0.5 * d * d);
}

double fbg_transmit_amplitude(const FbgSpec& spec, double f) {
  const double r = fbg_reflect_amplitude(spec, f);
  // (1 - r)(1 + r) keeps precision where r is close to 1.
  return std::sqrt(std::max(0.0, (1.0 - r) * (1.0 + r)));
}

// ---------------------------------------------------------------------------

Modulator::Modulator(const TimeGrid& grid, const ModulatorSpec& spec)
    : grid_(grid), spec_(spec), waveform_(grid.samples_per_bin()) {
  require(spec.code.size() == grid.chips_per_bin(),
          "Modulator: code length " + std::to_string(spec.code.size()) + " does not match " +
              std::to_string(grid.chips_per_bin()) + " chips per bin");
  require(std::abs(spec.bin_duration - grid.bin_duration()) <= 1e-12 * grid.bin_duration(),
          "Modulator: bin duration differs from the grid");
  require(spec.transition_time >= 0.0 && spec.transition_time < grid.chip_duration(),
          "Modulator: transition time must lie in [0, T/S)");
  for (std::size_t j = 0; j < waveform_.size(); ++j) {
    waveform_[j] = waveform_at((static_cast<double>(j) + 0.5) * grid.dt());
  }
}

double Modulator::waveform_at(double t) const {
  const std::size_t s = spec_.code.size();
  const double tc = grid_.chip_duration();
  const auto chip = std::min(static_cast<std::size_t>(t / tc), s - 1);
  const double value = spec_.code[chip];
  const double tau = spec_.transition_time;
  if (tau <= 0.0) return value;

  // Nearest chip boundary; the one at t = 0 (and t = T) joins the last chip of
  // the previous bin to the first chip of this one.
  const double local = t - static_cast<double>(chip) * tc;
  double from = 0.0;
  double to = 0.0;
  double delta = 0.0;  // t minus the boundary time
  if (local < 0.5 * tc) {
    from = spec_.code[(chip + s - 1) % s];
    to = value;
    delta = local;
  } else {
    from = value;
    to = spec_.code[(chip + 1) % s];
    delta = local - tc;
  }
  if (std::abs(delta) >= 0.5 * tau) return value;
  const double phase = std::numbers::pi * (delta + 0.5 * tau) / tau;
  return from + (to - from) * 0.5 * (1.0 - std::cos(phase));
}

void Modulator::apply(ComplexVector& samples) const {
  require(samples.size() == grid_.size(), "Modulator: sample count does not match the grid");
  const std::size_t block = waveform_.size();
  for (std::size_t offset = 0; offset < samples.size(); offset += block) {
    simd::scale_real(std::span<Complex>(samples).subspan(offset, block), waveform_);
  }
  if (spec_.convention == PhaseConvention::plus_minus_half) {
    for (auto& x : samples) x = Complex(-x.imag(), x.real());
  }
}

SampledEnvelope Modulator::apply(const SampledEnvelope& env) const {
  check_grid(grid_, env.grid(), "modulate");
  ComplexVector data(env.samples().begin(), env.samples().end());
  apply(data);
  return SampledEnvelope(grid_, std::move(data));
}

// ---------------------------------------------------------------------------

Grating::Grating(const TimeGrid& grid, const FbgSpec& spec)
    : grid_(grid), spec_(spec), reflect_(grid.size()), transmit_(grid.size()) {
  require(spec.transparent || (spec.sigma_filt > 0.0 && std::isfinite(spec.sigma_filt)),
          "FbgSpec: sigma_filt must be positive");
  for (std::size_t k = 0; k < reflect_.size(); ++k) {
    const double f = grid.frequency_at(k);
    reflect_[k] = fbg_reflect_amplitude(spec, f);
    transmit_[k] = fbg_transmit_amplitude(spec, f);
  }
}

void Grating::filter(ComplexVector& samples, const RealVector& table) const {
  require(samples.size() == grid_.size(), "Grating: sample count does not match the grid");
  signal::fft::forward(samples);
  simd::scale_real(samples, table);
  signal::fft::inverse(samples);
}

void Grating::reflect(ComplexVector& samples) const { filter(samples, reflect_); }
void Grating::transmit(ComplexVector& samples) const { filter(samples, transmit_); }

void Grating::split(const ComplexVector& samples, ComplexVector& reflected, ComplexVector& transmitted) const {
  require(samples.size() == grid_.size(), "Grating: sample count does not match the grid");
  ComplexVector spectrum(samples);
  signal::fft::forward(spectrum);
  reflected.resize(spectrum.size());
  transmitted.resize(spectrum.size());
  simd::scale_real_to(spectrum, reflect_, reflected);
  simd::scale_real_to(spectrum, transmit_, transmitted);
  signal::fft::inverse(reflected);
  signal::fft::inverse(transmitted);
}

SampledEnvelope Grating::reflect(const SampledEnvelope& env) const {
  check_grid(grid_, env.grid(), "fbg_reflect");
  ComplexVector data(env.samples().begin(), env.samples().end());
  reflect(data);
  return SampledEnvelope(grid_, std::move(data));
}

SampledEnvelope Grating::transmit(const SampledEnvelope& env) const {
  check_grid(grid_, env.grid(), "fbg_transmit");
  ComplexVector data(env.samples().begin(), env.samples().end());
  transmit(data);
  return SampledEnvelope(grid_, std::move(data));
}

// ---------------------------------------------------------------------------

SampledEnvelope modulate(const SampledEnvelope& env, const ModulatorSpec& spec) {
  return Modulator(env.grid(), spec).apply(env);
}

SampledEnvelope fbg_reflect(const SampledEnvelope& env, const FbgSpec& spec) {
  return Grating(env.grid(), spec).reflect(env);
}

SampledEnvelope fbg_transmit(const SampledEnvelope& env, const FbgSpec& spec) {
  return Grating(env.grid(), spec).transmit(env);
}

SampledEnvelope mux_old_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg) {
  check_grid(code.grid(), env.grid(), "mux_old_path");
  check_grid(fbg.grid(), env.grid(), "mux_old_path");
  ComplexVector data(env.samples().begin(), env.samples().end());
  code.apply(data);
  fbg.transmit(data);
  code.apply(data);
  return SampledEnvelope(env.grid(), std::move(data));
}

SampledEnvelope mux_new_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg) {
  check_grid(code.grid(), env.grid(), "mux_new_path");
  check_grid(fbg.grid(), env.grid(), "mux_new_path");
  ComplexVector data(env.samples().begin(), env.samples().end());
  fbg.reflect(data);
  code.apply(data);
  return SampledEnvelope(env.grid(), std::move(data));
}

SampledEnvelope demux_drop_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg) {
  check_grid(code.grid(), env.grid(), "demux_drop_path");
  check_grid(fbg.grid(), env.grid(), "demux_drop_path");
  ComplexVector data(env.samples().begin(), env.samples().end());
  code.apply(data);
  fbg.reflect(data);
  return SampledEnvelope(env.grid(), std::move(data));
}

SampledEnvelope demux_through_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg) {
  check_grid(code.grid(), env.grid(), "demux_through_path");
  check_grid(fbg.grid(), env.grid(), "demux_through_path");
  ComplexVector data(env.samples().begin(), env.samples().end());
  code.apply(data);
  fbg.transmit(data);
  code.apply(data);
  return SampledEnvelope(env.grid(), std::move(data));
}

SampledEnvelope mux_old_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg) {
  return mux_old_path(env, Modulator(env.grid(), code), Grating(env.grid(), fbg));
}
SampledEnvelope mux_new_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg) {
  return mux_new_path(env, Modulator(env.grid(), code), Grating(env.grid(), fbg));
}
SampledEnvelope demux_drop_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg) {
  return demux_drop_path(env, Modulator(env.grid(), code), Grating(env.grid(), fbg));
}
SampledEnvelope demux_through_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg) {
  return demux_through_path(env, Modulator(env.grid(), code), Grating(env.grid(), fbg));
}

double band_energy_fraction(const SampledEnvelope& env, double center, double half_width) {
  const auto spectrum = signal::to_frequency(env);
  double inside = 0.0;
  double total = 0.0;
  const auto bins = spectrum.bins();
  for (std::size_t k = 0; k < bins.size(); ++k) {
    const double p = std::norm(bins[k]);
    total += p;
    if (std::abs(spectrum.frequency_at(k) - center) <= half_width) inside += p;
  }
  return total > 0.0 ? inside / total : 0.0;
}

}  // namespace qssma::optics
