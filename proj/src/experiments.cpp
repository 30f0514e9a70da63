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

#include "qssma/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <set>
#include <string>
#include <thread>

#include "qssma/codes.hpp"
#include "qssma/error.hpp"
#include "qssma/rng.hpp"
#include "qssma/simd/kernels.hpp"

namespace qssma::experiments {

using network::Network;
using network::NetworkPlan;
using network::UserId;
using signal::TimeGrid;

std::string_view kind_name(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::loss:
      return "loss";
    case ExperimentKind::crosstalk:
      return "crosstalk";
    case ExperimentKind::fidelity:
      return "fidelity";
    case ExperimentKind::trace:
      return "trace";
  }
  return "unknown";
}

std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept {
  for (auto k : {ExperimentKind::loss, ExperimentKind::crosstalk, ExperimentKind::fidelity, ExperimentKind::trace}) {
    if (kind_name(k) == name) return k;
  }
  return std::nullopt;
}

std::size_t default_trials(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::loss:
      return 50;
    case ExperimentKind::crosstalk:
      return 32;
    case ExperimentKind::fidelity:
      return 64;
    case ExperimentKind::trace:
      return 1;
  }
  return 1;
}

std::size_t full_scale_trials(ExperimentKind kind) noexcept {
  switch (kind) {
    case ExperimentKind::loss:
      return 200;
    case ExperimentKind::crosstalk:
      return 128;
    case ExperimentKind::fidelity:
      return 200;
    case ExperimentKind::trace:
      return 1;
  }
  return 1;
}

ScenarioConfig ScenarioConfig::defaults(ExperimentKind kind) {
  ScenarioConfig c;
  c.kind = kind;
  c.trials = default_trials(kind);
  switch (kind) {
    case ExperimentKind::loss:
    case ExperimentKind::crosstalk:
      c.users = {5, 20, 50};
      c.registers = {8, 10, 12, 14};
      break;
    case ExperimentKind::fidelity:
      c.users = {5, 20, 50};
      c.registers = {10};
      break;
    case ExperimentKind::trace:
      c.users = {5};
      c.registers = {15};
      break;
  }
  return c;
}

double ScenarioConfig::resolved_sigma_filt() const {
  return sigma_filt.value_or(signal::default_sigma_filt(bin_duration));
}

namespace {

[[noreturn]] void config_error(const std::string& field, const std::string& what) {
  fail(ErrorCategory::config, "config field '" + field + "': " + what);
}

std::size_t chips_for(unsigned registers) { return (std::size_t{1} << registers) - 1; }

std::uint64_t stream_tag(ExperimentKind kind, unsigned registers, std::size_t users) {
  return rng::fnv1a(std::string(kind_name(kind)) + "/n=" + std::to_string(registers) + "/N=" + std::to_string(users));
}

struct Summary {
  double mean;
  double std_error;
};

Summary summarize(const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0)) / std::sqrt(n)};
}

// Add(1..N) then Drop(1..N) plan for one (n, N) cell.
NetworkPlan make_plan(const ScenarioConfig& c, unsigned registers, std::size_t users, std::size_t data_bins) {
  const TimeGrid grid(c.bin_duration, chips_for(registers), data_bins, c.samples_per_chip);
  const auto family = codes::user_codes(registers, users);
  optics::FbgSpec fbg{c.resolved_sigma_filt(), 0.0, false};
  return NetworkPlan::add_then_drop(grid, fbg, family, c.transition_time);
}

}  // namespace

void validate(const ScenarioConfig& c) {
  if (c.trials < 1) config_error("trials", "must be at least 1");
  if (!(c.bin_duration > 0.0) || !std::isfinite(c.bin_duration)) config_error("bin_duration", "must be positive");
  if (c.samples_per_chip < 2) config_error("samples_per_chip", "must be at least 2");
  if (c.sigma_filt && !(*c.sigma_filt > 0.0 && std::isfinite(*c.sigma_filt))) {
    config_error("sigma_filt", "must be positive");
  }
  if (c.users.empty()) config_error("users", "needs at least one user count");
  if (c.registers.empty()) config_error("n_registers", "needs at least one register count");
  for (unsigned n : c.registers) {
    if (!codes::is_supported(n)) {
      std::string list;
      for (unsigned s : codes::supported_registers()) list += (list.empty() ? "" : ",") + std::to_string(s);
      config_error("n_registers", "n=" + std::to_string(n) + " is not supported (supported: " + list + ")");
    }
    const std::size_t s = chips_for(n);
    const double chip = c.bin_duration / static_cast<double>(s);
    if (!(c.transition_time >= 0.0) || c.transition_time >= chip) {
      config_error("transition_time", "must lie in [0, T/S) = [0, " + std::to_string(chip) + ") for n=" +
                                          std::to_string(n));
    }
    for (std::size_t users : c.users) {
      if (users > s) {
        config_error("users", std::to_string(users) + " users exceed the " + std::to_string(s) +
                                  " distinct codes for n=" + std::to_string(n));
      }
    }
  }
  for (std::size_t users : c.users) {
    if (users < 1) config_error("users", "user counts must be at least 1");
    if (c.kind == ExperimentKind::crosstalk && users < 2) {
      config_error("users", "crosstalk needs at least 2 users");
    }
  }
  if ((c.kind == ExperimentKind::crosstalk || c.kind == ExperimentKind::trace) && c.bits_per_user < 1) {
    config_error("bits_per_user", "must be at least 1");
  }
  if (c.kind == ExperimentKind::trace && (c.users.size() != 1 || c.registers.size() != 1)) {
    config_error(c.users.size() != 1 ? "users" : "n_registers", "trace runs take a single value");
  }
  if (!c.bits.empty()) {
    if (c.kind != ExperimentKind::trace) config_error("bits", "only trace runs take fixed words");
    if (c.users.size() != 1 || c.bits.size() != c.users.front()) {
      config_error("bits", "needs exactly one word per user");
    }
    for (const auto& word : c.bits) {
      if (word.size() != c.bits_per_user) {
        config_error("bits", "every word must have bits_per_user = " + std::to_string(c.bits_per_user) + " bits");
      }
      for (auto b : word) {
        if (b > 1) config_error("bits", "bits must be 0 or 1");
      }
    }
  }
}

const MetricCell* MetricsReport::find(unsigned registers, std::size_t users, std::string_view state) const {
  for (const MetricCell& c : cells) {
    if (c.registers == registers && c.users == users && c.state == state) return &c;
  }
  return nullptr;
}

void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> workers;
    for (std::size_t w = 0; w < threads; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            fn(i);
          } catch (...) {
            std::lock_guard lock(error_mutex);
            if (!error) error = std::current_exception();
            next = count;
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

// ---------------------------------------------------------------------------
// Loss: one occupied channel per trial, matched receiver.

MetricsReport run_loss(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  MetricsReport report{config, {}};
  for (unsigned n : config.registers) {
    for (std::size_t users : config.users) {
      const Network net(make_plan(config, n, users, 1));
      const auto tag = stream_tag(ExperimentKind::loss, n, users);
      std::vector<UserId> occupied(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        rng::Stream stream(config.rng_seed, tag, t);
        occupied[t] = 1 + stream.uniform_index(users);
      }

      // The network is deterministic, so the loss depends only on which
      // channel is occupied.
      const std::set<UserId> distinct(occupied.begin(), occupied.end());
      const std::vector<UserId> sources(distinct.begin(), distinct.end());
      std::vector<double> loss_of(sources.size());
      const auto photon =
          signal::gaussian_packet(net.grid(), signal::PacketSpec::standard(0, config.bin_duration));
      parallel_for(sources.size(), options.threads, [&](std::size_t i) {
        const auto delivered = net.propagate_envelope(photon, sources[i], sources[i]);
        loss_of[i] = 1.0 - signal::norm_sq(delivered);
      });

      std::vector<double> values(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        const auto pos = std::lower_bound(sources.begin(), sources.end(), occupied[t]) - sources.begin();
        values[t] = loss_of[static_cast<std::size_t>(pos)];
      }
      const Summary s = summarize(values);
      report.cells.push_back({n, chips_for(n), users, "", s.mean, s.std_error, config.trials});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Crosstalk

CrosstalkEvaluator::CrosstalkEvaluator(const Network& net, std::size_t threads) : bins_(net.grid().data_bins()) {
  std::vector<UserId> sources;
  for (const auto& [user, code] : net.plan().codes) sources.push_back(user);
  const TimeGrid& grid = net.grid();
  const std::size_t length = grid.size();
  const std::size_t block = grid.samples_per_bin();
  const double dt = grid.dt();
  const auto photon = signal::gaussian_packet(grid, signal::PacketSpec::standard(0, grid.bin_duration()));

  std::vector<std::map<UserId, std::vector<Complex>>> per_source(sources.size());
  parallel_for(sources.size(), threads, [&](std::size_t i) {
    net.propagate_fanout(photon, sources[i], [&](UserId receiver, const signal::SampledEnvelope& h) {
      const auto x = h.samples();
      std::vector<Complex> lags(bins_);
      for (std::size_t d = 0; d < bins_; ++d) {
        const std::size_t s = d * block;
        Complex c = simd::dot(x.subspan(s), x.first(length - s));
        if (s > 0) c += simd::dot(x.first(s), x.subspan(length - s));
        lags[d] = c * dt;
      }
      per_source[i][receiver] = std::move(lags);
    });
  });
  for (std::size_t i = 0; i < sources.size(); ++i) lags_[sources[i]] = std::move(per_source[i]);
}

double CrosstalkEvaluator::word_probability(
    UserId receiver, const std::vector<std::pair<UserId, std::vector<std::uint8_t>>>& words) const {
  double total = 0.0;
  for (const auto& [source, bits] : words) {
    require(source != receiver, "word_probability: the receiver's own word is not crosstalk");
    require(bits.size() == bins_, "word_probability: word length does not match the grid");
    auto s = lags_.find(source);
    if (s == lags_.end()) continue;
    auto r = s->second.find(receiver);
    if (r == s->second.end()) continue;
    const std::vector<Complex>& c = r->second;
    for (std::size_t j = 0; j < bins_; ++j) {
      if (bits[j] == 0) continue;
      double row = c[0].real();
      for (std::size_t k = j + 1; k < bins_; ++k) {
        if (bits[k] != 0) row += 2.0 * c[k - j].real();
      }
      total += row;
    }
  }
  return total;
}

MetricsReport run_crosstalk(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  MetricsReport report{config, {}};
  const double scale = config.crosstalk_normalization == CrosstalkNormalization::per_bin
                           ? 1.0 / static_cast<double>(config.bits_per_user)
                           : 1.0;
  for (unsigned n : config.registers) {
    for (std::size_t users : config.users) {
      const Network net(make_plan(config, n, users, config.bits_per_user));
      const CrosstalkEvaluator evaluator(net, options.threads);
      const auto tag = stream_tag(ExperimentKind::crosstalk, n, users);
      std::vector<double> values(config.trials);
      for (std::size_t t = 0; t < config.trials; ++t) {
        rng::Stream stream(config.rng_seed, tag, t);
        const UserId empty = 1 + stream.uniform_index(users);
        std::vector<std::pair<UserId, std::vector<std::uint8_t>>> words;
        for (UserId u = 1; u <= users; ++u) {
          if (u == empty) continue;
          std::vector<std::uint8_t> bits(config.bits_per_user);
          for (auto& b : bits) b = stream.coin() ? 1 : 0;
          // Global phases are drawn to keep the stream layout fixed; densities
          // of distinct photons add, so they do not enter the probability.
          (void)stream.uniform01();
          words.emplace_back(u, std::move(bits));
        }
        values[t] = evaluator.word_probability(empty, words) * scale;
      }
      const Summary s = summarize(values);
      report.cells.push_back({n, chips_for(n), users, "", s.mean, s.std_error, config.trials});
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Fidelity: one photon, random insertion and extraction points, other users
// silent. All four COW states go through the same sampled plan.

MetricsReport run_fidelity(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  MetricsReport report{config, {}};
  for (unsigned n : config.registers) {
    for (std::size_t users : config.users) {
      const NetworkPlan base = make_plan(config, n, users, 2);
      std::vector<metrics::CowState> states;
      for (auto label : metrics::kAllCowLabels) states.push_back(metrics::cow_state(base.grid, label));
      const auto tag = stream_tag(ExperimentKind::fidelity, n, users);

      std::vector<std::vector<double>> infidelity(states.size(), std::vector<double>(config.trials));
      parallel_for(config.trials, options.threads, [&](std::size_t t) {
        rng::Stream stream(config.rng_seed, tag, t);
        std::vector<UserId> add_order(users);
        std::vector<UserId> drop_order(users);
        for (std::size_t i = 0; i < users; ++i) add_order[i] = drop_order[i] = i + 1;
        stream.shuffle(std::span(add_order));
        stream.shuffle(std::span(drop_order));
        const UserId photon_user = 1 + stream.uniform_index(users);

        NetworkPlan plan = base;
        plan.stages.clear();
        for (UserId u : add_order) plan.stages.push_back(network::Stage::add(u));
        for (UserId u : drop_order) plan.stages.push_back(network::Stage::drop(u));
        const Network net(std::move(plan));
        for (std::size_t s = 0; s < states.size(); ++s) {
          const auto out = net.propagate_envelope(states[s].envelope, photon_user, photon_user);
          infidelity[s][t] = 1.0 - metrics::fidelity(states[s].envelope, out, true);
        }
      });
      for (std::size_t s = 0; s < states.size(); ++s) {
        const Summary sum = summarize(infidelity[s]);
        report.cells.push_back({n, chips_for(n), users, std::string(metrics::cow_label_name(states[s].label)),
                                sum.mean, sum.std_error, config.trials});
      }
    }
  }
  return report;
}

MetricsReport run_report(const ScenarioConfig& config, const RunOptions& options) {
  switch (config.kind) {
    case ExperimentKind::loss:
      return run_loss(config, options);
    case ExperimentKind::crosstalk:
      return run_crosstalk(config, options);
    case ExperimentKind::fidelity:
      return run_fidelity(config, options);
    case ExperimentKind::trace:
      break;
  }
  fail(ErrorCategory::config, "config field 'kind': trace runs produce time series, not a metrics report");
}

// ---------------------------------------------------------------------------

TraceResult run_trace(const ScenarioConfig& config, const RunOptions& options) {
  validate(config);
  const unsigned n = config.registers.front();
  const std::size_t users = config.users.front();
  const Network net(make_plan(config, n, users, config.bits_per_user));
  rng::Stream stream(config.rng_seed, stream_tag(ExperimentKind::trace, n, users), 0);

  std::vector<network::UserChannel> channels;
  for (UserId u = 1; u <= users; ++u) {
    network::UserChannel ch{u, net.plan().codes.at(u), std::vector<std::uint8_t>(config.bits_per_user), 0.0};
    if (config.bits.empty()) {
      for (auto& b : ch.bits) b = stream.coin() ? 1 : 0;
    } else {
      ch.bits = config.bits[u - 1];
    }
    ch.global_phase = 2.0 * std::numbers::pi * stream.uniform01();
    channels.push_back(std::move(ch));
  }

  // One fan-out per source, sources in parallel.
  std::vector<std::vector<network::PhotonTrace>> per_source(users);
  parallel_for(users, options.threads, [&](std::size_t i) {
    per_source[i] = net.propagate_all(std::span(&channels[i], 1));
  });

  TraceResult result{config, net.grid(), channels, {}, {}};
  for (UserId r = 1; r <= users; ++r) {
    std::vector<network::PhotonTrace> at_receiver;
    for (const auto& traces : per_source) {
      for (const auto& t : traces) {
        if (t.receiver == r) at_receiver.push_back(t);
      }
    }
    auto density = network::receiver_density(at_receiver);
    result.detection.push_back(metrics::per_bin_detection(density));
    result.densities.push_back(std::move(density));
  }
  return result;
}

std::vector<BoundRow> ideal_bound_comparison(const MetricsReport& loss_report) {
  std::vector<BoundRow> rows;
  for (const MetricCell& c : loss_report.cells) {
    const double bound = (2.0 * static_cast<double>(c.users) - 2.0) / static_cast<double>(c.chips);
    rows.push_back({c.registers, c.chips, c.users, c.mean, bound});
  }
  return rows;
}

}  // namespace qssma::experiments
