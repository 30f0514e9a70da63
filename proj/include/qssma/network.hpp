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

// Add-drop chains. The network is linear and passive and photons never
// interact, so every photon's amplitude is evolved on its own and densities
// of distinct photons add.

#include <cstdint>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "qssma/codes.hpp"
#include "qssma/optics.hpp"
#include "qssma/signal.hpp"

namespace qssma::network {

using signal::SampledEnvelope;
using signal::TimeGrid;
using UserId = std::size_t;  // users are numbered from 1

struct UserChannel {
  UserId user_id = 0;
  codes::SpreadingCode code;
  std::vector<std::uint8_t> bits;  // 1 = one Gaussian packet in that bin
  double global_phase = 0.0;
};

struct Stage {
  enum class Kind { add, drop };
  Kind kind;
  UserId user;

  static Stage add(UserId u) { return {Kind::add, u}; }
  static Stage drop(UserId u) { return {Kind::drop, u}; }
  bool operator==(const Stage&) const = default;
};

struct NetworkPlan {
  TimeGrid grid;
  optics::FbgSpec fbg;
  std::vector<Stage> stages;
  std::map<UserId, codes::SpreadingCode> codes;
  double transition_time = 0.0;
  optics::PhaseConvention convention = optics::PhaseConvention::zero_pi;

  // Add(1..N) followed by Drop(1..N); user i gets codes[i - 1].
  static NetworkPlan add_then_drop(const TimeGrid& grid, const optics::FbgSpec& fbg,
                                   std::span<const codes::SpreadingCode> codes, double transition_time = 0.0);
};

// Throws unless every staged user has a code, exactly one Add, at most one
// Drop, and its Drop comes after its Add.
void validate(const NetworkPlan& plan);

struct PhotonTrace {
  UserId source = 0;
  UserId receiver = 0;
  SampledEnvelope envelope;
};

struct DensitySeries {
  TimeGrid grid;
  std::vector<double> values;  // photon-number density per sample, 1/s
};

// A validated plan with its modulator waveforms and grating tables built once.
// All methods are const and may be called concurrently.
class Network {
 public:
  explicit Network(NetworkPlan plan);

  const NetworkPlan& plan() const noexcept { return plan_; }
  const TimeGrid& grid() const noexcept { return plan_.grid; }
  const optics::Grating& grating() const noexcept { return grating_; }
  const optics::Modulator& modulator(UserId user) const;
  bool has_drop(UserId user) const { return drop_index_.contains(user); }
  std::vector<UserId> receivers() const;

  // Unspread photon of a channel: its packets times exp(i phase).
  SampledEnvelope source_photon(const UserChannel& channel) const;

  // Amplitude delivered at `target`'s drop port.
  PhotonTrace propagate_photon(const UserChannel& source, UserId target) const;
  SampledEnvelope propagate_envelope(const SampledEnvelope& photon, UserId source, UserId target) const;

  // Every channel to every receiver, sorted by (source, receiver).
  std::vector<PhotonTrace> propagate_all(std::span<const UserChannel> channels) const;

  using DropSink = std::function<void(UserId receiver, const SampledEnvelope& delivered)>;
  // Inserts `photon` at the source's Add and walks the whole plan, handing the
  // drop-port amplitude of every later Drop to `sink`. Same arithmetic as
  // propagate_envelope, so the results agree bit for bit.
  void propagate_fanout(const SampledEnvelope& photon, UserId source, const DropSink& sink) const;

 private:
  void check_channel(const UserChannel& channel) const;
  void walk(ComplexVector& data, UserId source, const UserId* target, const DropSink* sink) const;

  NetworkPlan plan_;
  optics::Grating grating_;
  std::map<UserId, optics::Modulator> modulators_;
  std::map<UserId, std::size_t> add_index_;
  std::map<UserId, std::size_t> drop_index_;
};

PhotonTrace propagate_photon(const UserChannel& source, UserId target, const NetworkPlan& plan);
std::vector<PhotonTrace> propagate_all(std::span<const UserChannel> channels, const NetworkPlan& plan);

// Photon-number density at one receiver: sum over sources of |psi_source(t)|^2.
// Only the additive mode exists; coherent = true is rejected.
DensitySeries receiver_density(std::span<const PhotonTrace> traces, bool coherent = false);

}  // namespace qssma::network
