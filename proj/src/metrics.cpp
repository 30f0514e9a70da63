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

#include "qssma/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qssma/error.hpp"

namespace qssma::metrics {

std::string_view cow_label_name(CowLabel label) noexcept {
  switch (label) {
    case CowLabel::zero:
      return "zero";
    case CowLabel::one:
      return "one";
    case CowLabel::plus:
      return "plus";
    case CowLabel::minus:
      return "minus";
  }
  return "unknown";
}

CowState cow_state(const TimeGrid& grid, CowLabel label) {
  require(grid.data_bins() >= 2, "cow_state: needs at least two data bins");
  const double t = grid.bin_duration();
  const auto zero = signal::gaussian_packet(grid, signal::PacketSpec::standard(0, t));
  const auto one = signal::gaussian_packet(grid, signal::PacketSpec::standard(1, t));
  // Neighbouring packets overlap by exp(-T^2 / (8 sigma^2)), so the
  // superpositions are rescaled to unit norm rather than taken as 1/sqrt(2).
  auto unit = [](SampledEnvelope env) {
    env *= Complex(1.0 / std::sqrt(signal::norm_sq(env)));
    return env;
  };
  switch (label) {
    case CowLabel::zero:
      return {label, zero};
    case CowLabel::one:
      return {label, one};
    case CowLabel::plus:
      return {label, unit(zero + one)};
    case CowLabel::minus:
      return {label, unit(zero + Complex(-1.0) * one)};
  }
  fail(ErrorCategory::invalid_argument, "cow_state: unknown label");
}

double loss_probability(const PhotonTrace& trace) { return 1.0 - signal::norm_sq(trace.envelope); }

double crosstalk_probability(network::UserId receiver, std::span<const PhotonTrace> foreign) {
  double total = 0.0;
  for (const PhotonTrace& t : foreign) {
    require(t.receiver == receiver, "crosstalk_probability: trace delivered to a different receiver");
    require(t.source != receiver, "crosstalk_probability: receiver's own photon is not crosstalk");
    total += signal::norm_sq(t.envelope);
  }
  return total;
}

double fidelity(const SampledEnvelope& psi_in, const SampledEnvelope& psi_out, bool normalize) {
  const double in_norm = signal::norm_sq(psi_in);
  require(std::abs(in_norm - 1.0) <= 1e-6, "fidelity: input state is not normalized");
  double scale = 1.0;
  if (normalize) {
    const double out_norm = signal::norm_sq(psi_out);
    require(out_norm > 0.0, "fidelity: cannot normalize a zero output state");
    scale = 1.0 / out_norm;
  }
  const double f = std::norm(signal::inner_product(psi_out, psi_in)) * scale;
  return std::clamp(f, 0.0, 1.0);
}

std::vector<double> per_bin_detection(const DensitySeries& density) {
  const TimeGrid& g = density.grid;
  require(density.values.size() == g.size(), "per_bin_detection: density length does not match the grid");
  std::vector<double> out(g.data_bins());
  for (std::size_t b = 0; b < out.size(); ++b) {
    const auto first = density.values.begin() + static_cast<std::ptrdiff_t>(g.data_bin_offset(b));
    out[b] = std::accumulate(first, first + static_cast<std::ptrdiff_t>(g.samples_per_bin()), 0.0) * g.dt();
  }
  return out;
}

std::vector<double> per_bin_detection(const SampledEnvelope& env) {
  const TimeGrid& g = env.grid();
  std::vector<double> out(g.data_bins());
  const double t = g.bin_duration();
  for (std::size_t b = 0; b < out.size(); ++b) {
    out[b] = signal::integrate_window(env, static_cast<double>(b) * t, static_cast<double>(b + 1) * t);
  }
  return out;
}

}  // namespace qssma::metrics
