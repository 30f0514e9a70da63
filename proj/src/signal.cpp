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

#include "qssma/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "qssma/error.hpp"
#include "qssma/simd/kernels.hpp"

namespace qssma::signal {

namespace {

bool is_mersenne_length(std::size_t s) {
  const std::size_t m = s + 1;
  return s >= 3 && (m & (m - 1)) == 0;
}

void require_same_grid(const TimeGrid& a, const TimeGrid& b, const char* op) {
  require(a == b, std::string(op) + ": envelopes live on different time grids");
}

}  // namespace

TimeGrid::TimeGrid(double bin_duration, std::size_t chips_per_bin, std::size_t data_bins,
                   std::size_t samples_per_chip, std::size_t guard_bins)
    : bin_duration_(bin_duration),
      chips_per_bin_(chips_per_bin),
      samples_per_chip_(samples_per_chip),
      data_bins_(data_bins),
      guard_bins_(guard_bins),
      dt_(0.0) {
  require(std::isfinite(bin_duration) && bin_duration > 0.0, "TimeGrid: bin duration must be positive");
  require(is_mersenne_length(chips_per_bin),
          "TimeGrid: chips per bin must be 2^n - 1 with n >= 2, got " + std::to_string(chips_per_bin));
  require(samples_per_chip >= 2, "TimeGrid: need at least 2 samples per chip");
  require(data_bins >= 1, "TimeGrid: need at least one data bin");
  dt_ = bin_duration / static_cast<double>(chips_per_bin * samples_per_chip);
}

double TimeGrid::time_at(std::size_t k) const noexcept {
  const double offset = static_cast<double>(guard_bins_ * samples_per_bin());
  return (static_cast<double>(k) - offset + 0.5) * dt_;
}

double TimeGrid::span_begin() const noexcept { return -static_cast<double>(guard_bins_) * bin_duration_; }

double TimeGrid::span_end() const noexcept {
  return static_cast<double>(data_bins_ + guard_bins_) * bin_duration_;
}

double TimeGrid::frequency_at(std::size_t k) const noexcept {
  const std::size_t n = size();
  const double df = frequency_step();
  return k < (n + 1) / 2 ? static_cast<double>(k) * df : -static_cast<double>(n - k) * df;
}

bool TimeGrid::operator==(const TimeGrid& other) const noexcept {
  return bin_duration_ == other.bin_duration_ && chips_per_bin_ == other.chips_per_bin_ &&
         samples_per_chip_ == other.samples_per_chip_ && data_bins_ == other.data_bins_ &&
         guard_bins_ == other.guard_bins_;
}

SampledEnvelope::SampledEnvelope(const TimeGrid& grid) : grid_(grid), samples_(grid.size()) {}

SampledEnvelope::SampledEnvelope(const TimeGrid& grid, ComplexVector samples)
    : grid_(grid), samples_(std::move(samples)) {
  require(samples_.size() == grid_.size(), "SampledEnvelope: sample count does not match the grid");
}

SampledEnvelope& SampledEnvelope::operator+=(const SampledEnvelope& other) {
  require_same_grid(grid_, other.grid_, "envelope sum");
  for (std::size_t i = 0; i < samples_.size(); ++i) samples_[i] += other.samples_[i];
  return *this;
}

SampledEnvelope& SampledEnvelope::operator*=(Complex factor) {
  for (auto& s : samples_) s *= factor;
  return *this;
}

SampledEnvelope operator+(SampledEnvelope a, const SampledEnvelope& b) { return a += b; }
SampledEnvelope operator*(Complex factor, SampledEnvelope a) { return a *= factor; }

PacketSpec PacketSpec::standard(std::size_t bin, double bin_duration, double global_phase) {
  return PacketSpec{bin, kPacketSigmaFraction * bin_duration, global_phase, 1.0};
}

SampledEnvelope gaussian_packet(const TimeGrid& grid, const PacketSpec& spec) {
  require(spec.bin_index < grid.data_bins(), "gaussian_packet: bin " + std::to_string(spec.bin_index) +
                                                 " outside a word of " + std::to_string(grid.data_bins()) +
                                                 " bins");
  require(spec.sigma > 0.0 && std::isfinite(spec.sigma), "gaussian_packet: sigma must be positive");

  const double center = (static_cast<double>(spec.bin_index) + 0.5) * grid.bin_duration();
  const double inv_four_var = 1.0 / (4.0 * spec.sigma * spec.sigma);
  ComplexVector samples(grid.size());
  double raw_norm = 0.0;
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double d = grid.time_at(k) - center;
    const double a = std::exp(-d * d * inv_four_var);
    samples[k] = Complex(a, 0.0);
    raw_norm += a * a;
  }
  raw_norm *= grid.dt();

  const Complex scale = std::polar(spec.amplitude / std::sqrt(raw_norm), spec.global_phase);
  for (auto& s : samples) s *= scale;
  return SampledEnvelope(grid, std::move(samples));
}

Complex inner_product(const SampledEnvelope& a, const SampledEnvelope& b) {
  require_same_grid(a.grid(), b.grid(), "inner_product");
  return simd::dot(a.samples(), b.samples()) * a.grid().dt();
}

double norm_sq(const SampledEnvelope& a) { return simd::norm_sq(a.samples()) * a.grid().dt(); }

double integrate_window(const SampledEnvelope& a, double t0, double t1) {
  const TimeGrid& g = a.grid();
  constexpr double kSlack = 1e-9;
  require(t0 < t1, "integrate_window: empty or reversed window");
  require(t0 >= g.span_begin() - kSlack * g.bin_duration() && t1 <= g.span_end() + kSlack * g.bin_duration(),
          "integrate_window: window outside the grid span");
  // Sample k covers [t_k - dt/2, t_k + dt/2); include it when its midpoint is in [t0, t1).
  const double origin = g.span_begin();
  auto first_at_or_after = [&](double t) {
    const double x = std::ceil((t - origin) / g.dt() - 0.5 - 1e-9);
    return static_cast<std::size_t>(std::clamp(x, 0.0, static_cast<double>(g.size())));
  };
  const std::size_t k0 = first_at_or_after(t0);
  const std::size_t k1 = first_at_or_after(t1);
  if (k1 <= k0) return 0.0;
  return simd::norm_sq(a.samples().subspan(k0, k1 - k0)) * g.dt();
}

double packet_spectral_width(double sigma_t) {
  require(sigma_t > 0.0, "packet_spectral_width: sigma must be positive");
  return 1.0 / (2.0 * std::numbers::pi * sigma_t);
}

double default_sigma_filt(double bin_duration) {
  return 8.0 * std::numbers::pi / 5.0 * packet_spectral_width(kPacketSigmaFraction * bin_duration);
}

}  // namespace qssma::signal
