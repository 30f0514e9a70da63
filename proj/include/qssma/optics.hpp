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

// Transfer-function models of the phase modulator and the fibre Bragg grating,
// and the four signal paths through multiplexer and demultiplexer nodes.
//
// Circulators are ideal routers and appear only as the fixed order of
// operations inside each path.

#include "qssma/codes.hpp"
#include "qssma/fft.hpp"
#include "qssma/signal.hpp"

namespace qssma::optics {

using signal::SampledEnvelope;
using signal::TimeGrid;

enum class PhaseConvention {
  zero_pi,         // phase 0 for chip +1, pi for chip -1: multiplier m(t)
  plus_minus_half, // phase +-pi/2: multiplier i m(t), differs by a global phase
};

struct ModulatorSpec {
  codes::SpreadingCode code;
  double bin_duration = 1.0;
  double transition_time = 0.0;  // raised-cosine ramp width; 0 = abrupt
  PhaseConvention convention = PhaseConvention::zero_pi;
};

// Gaussian reflection band R(f) = exp(-(f - c)^2 / (2 sigma^2)) with
// transmission T(f) = sqrt(1 - R^2). `transparent` models a grating that
// reflects nothing (R = 0, T = 1).
struct FbgSpec {
  double sigma_filt = 8.0;  // Hz
  double center_offset = 0.0;
  bool transparent = false;

  static FbgSpec standard(double bin_duration);
  static FbgSpec all_pass();
};

double fbg_reflect_amplitude(const FbgSpec& spec, double f);
double fbg_transmit_amplitude(const FbgSpec& spec, double f);

// Modulation waveform for one bin, precomputed for a grid. The code restarts
// at every bin boundary, guard bins included, so the waveform is T-periodic.
class Modulator {
 public:
  Modulator(const TimeGrid& grid, const ModulatorSpec& spec);

  const TimeGrid& grid() const noexcept { return grid_; }
  const ModulatorSpec& spec() const noexcept { return spec_; }
  std::span<const double> bin_waveform() const noexcept { return waveform_; }
  // m(t) at time t relative to the start of a bin, t in [0, T).
  double waveform_at(double t_in_bin) const;

  void apply(ComplexVector& samples) const;
  SampledEnvelope apply(const SampledEnvelope& env) const;

 private:
  TimeGrid grid_;
  ModulatorSpec spec_;
  RealVector waveform_;
};

// Reflection and transmission amplitudes tabulated on a grid's DFT bins.
// Read-only after construction and safe to share across threads.
class Grating {
 public:
  Grating(const TimeGrid& grid, const FbgSpec& spec);

  const TimeGrid& grid() const noexcept { return grid_; }
  const FbgSpec& spec() const noexcept { return spec_; }
  std::span<const double> reflect_table() const noexcept { return reflect_; }
  std::span<const double> transmit_table() const noexcept { return transmit_; }

  void reflect(ComplexVector& samples) const;
  void transmit(ComplexVector& samples) const;
  // Split a time-domain signal into reflected and transmitted parts with one
  // forward transform.
  void split(const ComplexVector& samples, ComplexVector& reflected, ComplexVector& transmitted) const;

  SampledEnvelope reflect(const SampledEnvelope& env) const;
  SampledEnvelope transmit(const SampledEnvelope& env) const;

 private:
  void filter(ComplexVector& samples, const RealVector& table) const;

  TimeGrid grid_;
  FbgSpec spec_;
  RealVector reflect_;
  RealVector transmit_;
};

SampledEnvelope modulate(const SampledEnvelope& env, const ModulatorSpec& spec);
SampledEnvelope fbg_reflect(const SampledEnvelope& env, const FbgSpec& spec);
SampledEnvelope fbg_transmit(const SampledEnvelope& env, const FbgSpec& spec);

// Multiplexer, photons already in the fibre: modulate -> transmit -> modulate.
SampledEnvelope mux_old_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg);
// Multiplexer, the user's own photon from port 1: reflect -> modulate.
SampledEnvelope mux_new_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg);
// Demultiplexer, towards the receiver at port 3: modulate -> reflect.
SampledEnvelope demux_drop_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg);
// Demultiplexer, back into the fibre: modulate -> transmit -> modulate.
SampledEnvelope demux_through_path(const SampledEnvelope& env, const Modulator& code, const Grating& fbg);

// Convenience overloads that build the modulator and grating tables on the fly.
SampledEnvelope mux_old_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg);
SampledEnvelope mux_new_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg);
SampledEnvelope demux_drop_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg);
SampledEnvelope demux_through_path(const SampledEnvelope& env, const ModulatorSpec& code, const FbgSpec& fbg);

// Fraction of an envelope's spectral energy with |f - center| <= half_width.
double band_energy_fraction(const SampledEnvelope& env, double center, double half_width);

}  // namespace qssma::optics
