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

// Sampled complex baseband envelopes of single-photon wavefunctions.
//
// Envelopes are baseband relative to the grating centre frequency, and
// |psi(t)|^2 is a probability density: sum |psi|^2 dt is a detection
// probability.

#include <cstddef>
#include <span>

#include "qssma/aligned.hpp"

namespace qssma::signal {

// Uniform sampling of a word of time bins. Every bin carries S chips of q
// samples each. One or more zero guard bins on each side keep the circular
// FFT from wrapping filter tails across the word.
//
// Time zero is the start of the first data bin; sample k sits at the midpoint
// of its interval, t_k = (k - guard_bins*S*q + 1/2) dt.
class TimeGrid {
 public:
  static constexpr std::size_t kDefaultSamplesPerChip = 4;

  TimeGrid(double bin_duration, std::size_t chips_per_bin, std::size_t data_bins,
           std::size_t samples_per_chip = kDefaultSamplesPerChip, std::size_t guard_bins = 1);

  double bin_duration() const noexcept { return bin_duration_; }
  std::size_t chips_per_bin() const noexcept { return chips_per_bin_; }
  std::size_t samples_per_chip() const noexcept { return samples_per_chip_; }
  std::size_t data_bins() const noexcept { return data_bins_; }
  std::size_t guard_bins() const noexcept { return guard_bins_; }
  std::size_t total_bins() const noexcept { return data_bins_ + 2 * guard_bins_; }
  std::size_t samples_per_bin() const noexcept { return chips_per_bin_ * samples_per_chip_; }
  std::size_t size() const noexcept { return total_bins() * samples_per_bin(); }
  double chip_duration() const noexcept { return bin_duration_ / static_cast<double>(chips_per_bin_); }
  double dt() const noexcept { return dt_; }

  double time_at(std::size_t k) const noexcept;
  double span_begin() const noexcept;
  double span_end() const noexcept;
  // Index of the first sample of data bin `data_bin`.
  std::size_t data_bin_offset(std::size_t data_bin) const noexcept {
    return (guard_bins_ + data_bin) * samples_per_bin();
  }

  // Baseband frequency of DFT bin k in Hz (negative frequencies in the upper half).
  double frequency_at(std::size_t k) const noexcept;
  double frequency_step() const noexcept { return 1.0 / (static_cast<double>(size()) * dt_); }

  bool operator==(const TimeGrid& other) const noexcept;

 private:
  double bin_duration_;
  std::size_t chips_per_bin_;
  std::size_t samples_per_chip_;
  std::size_t data_bins_;
  std::size_t guard_bins_;
  double dt_;
};

class SampledEnvelope {
 public:
  explicit SampledEnvelope(const TimeGrid& grid);  // all zeros
  SampledEnvelope(const TimeGrid& grid, ComplexVector samples);

  const TimeGrid& grid() const noexcept { return grid_; }
  std::span<const Complex> samples() const noexcept { return samples_; }
  std::span<Complex> samples() noexcept { return samples_; }
  ComplexVector& storage() noexcept { return samples_; }
  std::size_t size() const noexcept { return samples_.size(); }

  SampledEnvelope& operator+=(const SampledEnvelope& other);
  SampledEnvelope& operator*=(Complex factor);

 private:
  TimeGrid grid_;
  ComplexVector samples_;
};

SampledEnvelope operator+(SampledEnvelope a, const SampledEnvelope& b);
SampledEnvelope operator*(Complex factor, SampledEnvelope a);

struct PacketSpec {
  std::size_t bin_index = 0;
  double sigma = 0.0;  // standard deviation of |psi|^2, seconds
  double global_phase = 0.0;
  double amplitude = 1.0;

  // sigma = 0.1 T, centred in `bin`.
  static PacketSpec standard(std::size_t bin, double bin_duration, double global_phase = 0.0);
};

constexpr double kPacketSigmaFraction = 0.1;

// Amplitude Gaussian exp(-(t - tc)^2 / (4 sigma^2)) rescaled so that
// norm_sq equals amplitude^2 on this grid.
SampledEnvelope gaussian_packet(const TimeGrid& grid, const PacketSpec& spec);

// sum conj(a) b dt
Complex inner_product(const SampledEnvelope& a, const SampledEnvelope& b);
double norm_sq(const SampledEnvelope& a);
// sum of |a|^2 dt over samples with t in [t0, t1)
double integrate_window(const SampledEnvelope& a, double t0, double t1);

// Standard deviation, in Hz, of the amplitude spectrum of a packet whose
// |psi|^2 has time standard deviation `sigma_t`: 1 / (2 pi sigma_t).
double packet_spectral_width(double sigma_t);

// Grating width used by default: 8 pi / 5 times the packet spectral width of
// a sigma = 0.1 T packet, which is exactly 8 / T.
double default_sigma_filt(double bin_duration);

}  // namespace qssma::signal
