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

#include <span>
#include <string_view>
#include <vector>

#include "qssma/network.hpp"
#include "qssma/signal.hpp"

namespace qssma::metrics {

using network::DensitySeries;
using network::PhotonTrace;
using signal::SampledEnvelope;
using signal::TimeGrid;

// The four coherent-one-way states over data bins 0 and 1.
enum class CowLabel { zero, one, plus, minus };

inline constexpr CowLabel kAllCowLabels[] = {CowLabel::zero, CowLabel::one, CowLabel::plus, CowLabel::minus};

std::string_view cow_label_name(CowLabel label) noexcept;

struct CowState {
  CowLabel label;
  SampledEnvelope envelope;
};

// Needs a grid with at least two data bins. plus/minus are
// (|0> +- |1>) / sqrt(2) built from unit packets.
CowState cow_state(const TimeGrid& grid, CowLabel label);

// 1 - norm_sq of the amplitude delivered to the matched receiver.
double loss_probability(const PhotonTrace& trace);

// Summed detection probability of foreign photons at `receiver`.
double crosstalk_probability(network::UserId receiver, std::span<const PhotonTrace> foreign);

// |<psi_out, psi_in>|^2, with psi_out rescaled to unit norm first when
// `normalize` is set.
double fidelity(const SampledEnvelope& psi_in, const SampledEnvelope& psi_out, bool normalize);

// Integral of the density over each data bin.
std::vector<double> per_bin_detection(const DensitySeries& density);

// Same, straight from an amplitude.
std::vector<double> per_bin_detection(const SampledEnvelope& env);

}  // namespace qssma::metrics
