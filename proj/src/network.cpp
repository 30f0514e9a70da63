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

#include "qssma/network.hpp"

#include <algorithm>
#include <string>

#include "qssma/error.hpp"
#include "qssma/simd/kernels.hpp"

namespace qssma::network {

NetworkPlan NetworkPlan::add_then_drop(const TimeGrid& grid, const optics::FbgSpec& fbg,
                                       std::span<const codes::SpreadingCode> codes, double transition_time) {
  NetworkPlan plan{grid, fbg, {}, {}, transition_time, optics::PhaseConvention::zero_pi};
  for (std::size_t i = 0; i < codes.size(); ++i) {
    plan.codes.emplace(i + 1, codes[i]);
    plan.stages.push_back(Stage::add(i + 1));
  }
  for (std::size_t i = 0; i < codes.size(); ++i) plan.stages.push_back(Stage::drop(i + 1));
  return plan;
}

void validate(const NetworkPlan& plan) {
  std::map<UserId, std::size_t> adds;
  std::map<UserId, std::size_t> drops;
  for (std::size_t i = 0; i < plan.stages.size(); ++i) {
    const Stage& s = plan.stages[i];
    const std::string who = "user " + std::to_string(s.user);
    require(plan.codes.contains(s.user), "NetworkPlan: " + who + " is staged but has no code");
    if (s.kind == Stage::Kind::add) {
      require(!adds.contains(s.user), "NetworkPlan: " + who + " has more than one Add");
      adds[s.user] = i;
    } else {
      require(!drops.contains(s.user), "NetworkPlan: " + who + " has more than one Drop");
      require(adds.contains(s.user), "NetworkPlan: " + who + " is dropped before it is added");
      drops[s.user] = i;
    }
  }
  for (const auto& [user, code] : plan.codes) {
    require(code.size() == plan.grid.chips_per_bin(),
            "NetworkPlan: code of user " + std::to_string(user) + " does not match the grid's chip count");
  }
}

Network::Network(NetworkPlan plan) : plan_(std::move(plan)), grating_(plan_.grid, plan_.fbg) {
  validate(plan_);
  for (const auto& [user, code] : plan_.codes) {
    optics::ModulatorSpec spec{code, plan_.grid.bin_duration(), plan_.transition_time, plan_.convention};
    modulators_.emplace(user, optics::Modulator(plan_.grid, spec));
  }
  for (std::size_t i = 0; i < plan_.stages.size(); ++i) {
    const Stage& s = plan_.stages[i];
    (s.kind == Stage::Kind::add ? add_index_ : drop_index_)[s.user] = i;
  }
}

const optics::Modulator& Network::modulator(UserId user) const {
  auto it = modulators_.find(user);
  require(it != modulators_.end(), "Network: no code for user " + std::to_string(user));
  return it->second;
}

std::vector<UserId> Network::receivers() const {
  std::vector<UserId> out;
  for (const auto& [user, index] : drop_index_) out.push_back(user);
  return out;
}

void Network::check_channel(const UserChannel& channel) const {
  const std::string who = "user " + std::to_string(channel.user_id);
  auto it = plan_.codes.find(channel.user_id);
  require(it != plan_.codes.end(), "Network: " + who + " is not part of the plan");
  require(it->second == channel.code, "Network: " + who + " carries a code that differs from the plan");
  require(channel.bits.size() == plan_.grid.data_bins(),
          "Network: " + who + " sends " + std::to_string(channel.bits.size()) + " bits on a " +
              std::to_string(plan_.grid.data_bins()) + "-bin grid");
}

SampledEnvelope Network::source_photon(const UserChannel& channel) const {
  check_channel(channel);
  SampledEnvelope photon(plan_.grid);
  const double t = plan_.grid.bin_duration();
  for (std::size_t b = 0; b < channel.bits.size(); ++b) {
    if (channel.bits[b] == 0) continue;
    photon += signal::gaussian_packet(plan_.grid, signal::PacketSpec::standard(b, t, channel.global_phase));
  }
  return photon;
}

void Network::walk(ComplexVector& data, UserId source, const UserId* target, const DropSink* sink) const {
  auto add_it = add_index_.find(source);
  require(add_it != add_index_.end(), "propagate: user " + std::to_string(source) + " has no Add stage");
  if (target != nullptr) {
    require(drop_index_.contains(*target), "propagate: user " + std::to_string(*target) + " has no Drop stage");
  }

  ComplexVector reflected;
  ComplexVector transmitted;
  for (std::size_t i = add_it->second; i < plan_.stages.size(); ++i) {
    const Stage& stage = plan_.stages[i];
    const optics::Modulator& m = modulators_.at(stage.user);
    if (stage.kind == Stage::Kind::add) {
      if (stage.user == source) {
        grating_.reflect(data);
        m.apply(data);
      } else {
        m.apply(data);
        grating_.transmit(data);
        m.apply(data);
      }
      continue;
    }
    m.apply(data);
    if (target != nullptr && stage.user == *target) {
      grating_.reflect(data);
      return;
    }
    if (sink != nullptr) {
      grating_.split(data, reflected, transmitted);
      (*sink)(stage.user, SampledEnvelope(plan_.grid, reflected));
      data.swap(transmitted);
    } else {
      grating_.transmit(data);
    }
    m.apply(data);
  }
  if (target != nullptr) {
    // Target's Drop precedes the source's Add: nothing arrives.
    std::fill(data.begin(), data.end(), Complex{});
  }
}

SampledEnvelope Network::propagate_envelope(const SampledEnvelope& photon, UserId source, UserId target) const {
  require(photon.grid() == plan_.grid, "propagate: photon grid differs from the plan's grid");
  ComplexVector data(photon.samples().begin(), photon.samples().end());
  walk(data, source, &target, nullptr);
  return SampledEnvelope(plan_.grid, std::move(data));
}

PhotonTrace Network::propagate_photon(const UserChannel& source, UserId target) const {
  return PhotonTrace{source.user_id, target, propagate_envelope(source_photon(source), source.user_id, target)};
}

void Network::propagate_fanout(const SampledEnvelope& photon, UserId source, const DropSink& sink) const {
  require(photon.grid() == plan_.grid, "propagate: photon grid differs from the plan's grid");
  ComplexVector data(photon.samples().begin(), photon.samples().end());
  walk(data, source, nullptr, &sink);
}

std::vector<PhotonTrace> Network::propagate_all(std::span<const UserChannel> channels) const {
  std::vector<PhotonTrace> traces;
  const auto users = receivers();
  for (const UserChannel& channel : channels) {
    const SampledEnvelope photon = source_photon(channel);
    std::map<UserId, SampledEnvelope> delivered;
    const bool silent = std::all_of(channel.bits.begin(), channel.bits.end(), [](auto b) { return b == 0; });
    if (!silent) {
      propagate_fanout(photon, channel.user_id,
                       [&](UserId r, const SampledEnvelope& env) { delivered.insert_or_assign(r, env); });
    } else {
      require(add_index_.contains(channel.user_id),
              "propagate: user " + std::to_string(channel.user_id) + " has no Add stage");
    }
    for (UserId r : users) {
      auto it = delivered.find(r);
      traces.push_back(PhotonTrace{channel.user_id, r, it != delivered.end() ? it->second : SampledEnvelope(grid())});
    }
  }
  std::sort(traces.begin(), traces.end(), [](const PhotonTrace& a, const PhotonTrace& b) {
    return std::pair(a.source, a.receiver) < std::pair(b.source, b.receiver);
  });
  return traces;
}

PhotonTrace propagate_photon(const UserChannel& source, UserId target, const NetworkPlan& plan) {
  return Network(plan).propagate_photon(source, target);
}

std::vector<PhotonTrace> propagate_all(std::span<const UserChannel> channels, const NetworkPlan& plan) {
  return Network(plan).propagate_all(channels);
}

DensitySeries receiver_density(std::span<const PhotonTrace> traces, bool coherent) {
  if (coherent) fail(ErrorCategory::unsupported, "receiver_density: only the additive mode is implemented");
  require(!traces.empty(), "receiver_density: no traces given");
  const TimeGrid& grid = traces.front().envelope.grid();
  const UserId receiver = traces.front().receiver;
  DensitySeries out{grid, std::vector<double>(grid.size(), 0.0)};
  for (const PhotonTrace& t : traces) {
    require(t.envelope.grid() == grid, "receiver_density: traces live on different grids");
    require(t.receiver == receiver, "receiver_density: traces belong to different receivers");
    simd::accumulate_abs2(t.envelope.samples(), out.values);
  }
  return out;
}

}  // namespace qssma::network
