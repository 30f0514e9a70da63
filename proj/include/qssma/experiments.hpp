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

// Seeded Monte Carlo scenarios: photon loss, crosstalk and fidelity grids over
// (code length, number of users), and single-word time traces.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qssma/metrics.hpp"
#include "qssma/network.hpp"

namespace qssma::experiments {

enum class ExperimentKind { loss, crosstalk, fidelity, trace };

std::string_view kind_name(ExperimentKind kind) noexcept;
std::optional<ExperimentKind> parse_kind(std::string_view name) noexcept;

// How a crosstalk run's integrated density is reported: divided by the
// number of bits in the word (per_bin) or as the raw word integral.
enum class CrosstalkNormalization { per_bin, word };

struct ScenarioConfig {
  ExperimentKind kind = ExperimentKind::loss;
  std::vector<std::size_t> users;
  std::vector<unsigned> registers;
  std::size_t trials = 0;
  std::size_t bits_per_user = 8;
  std::size_t samples_per_chip = 4;
  std::optional<double> sigma_filt;  // Hz; default 8 / T
  double transition_time = 0.0;      // seconds
  double bin_duration = 1.0;         // seconds
  std::uint64_t rng_seed = 20150901;
  CrosstalkNormalization crosstalk_normalization = CrosstalkNormalization::per_bin;
  // Trace runs only: fixed words, one per user. Empty means random words.
  std::vector<std::vector<std::uint8_t>> bits;

  // Grid, trial count and word length used by default for each kind.
  static ScenarioConfig defaults(ExperimentKind kind);
  double resolved_sigma_filt() const;
};

std::size_t default_trials(ExperimentKind kind) noexcept;
std::size_t full_scale_trials(ExperimentKind kind) noexcept;

// Throws Error(config) with the offending field named.
void validate(const ScenarioConfig& config);

struct MetricCell {
  unsigned registers = 0;
  std::size_t chips = 0;  // S = 2^n - 1
  std::size_t users = 0;
  std::string state;      // COW label for fidelity cells, empty otherwise
  double mean = 0.0;
  double std_error = 0.0;
  std::size_t trials = 0;
};

struct MetricsReport {
  ScenarioConfig config;
  std::vector<MetricCell> cells;

  const MetricCell* find(unsigned registers, std::size_t users, std::string_view state = {}) const;
};

struct RunOptions {
  std::size_t threads = 0;  // 0 = hardware concurrency
};

MetricsReport run_loss(const ScenarioConfig& config, const RunOptions& options = {});
MetricsReport run_crosstalk(const ScenarioConfig& config, const RunOptions& options = {});
MetricsReport run_fidelity(const ScenarioConfig& config, const RunOptions& options = {});
MetricsReport run_report(const ScenarioConfig& config, const RunOptions& options = {});

struct TraceResult {
  ScenarioConfig config;
  signal::TimeGrid grid;
  std::vector<network::UserChannel> channels;
  std::vector<network::DensitySeries> densities;    // one per receiver, user order
  std::vector<std::vector<double>> detection;       // per receiver, per data bin
};

TraceResult run_trace(const ScenarioConfig& config, const RunOptions& options = {});

// Measured loss next to the (2N - 2)/S worst case of ideal elements.
struct BoundRow {
  unsigned registers;
  std::size_t chips;
  std::size_t users;
  double measured;
  double ideal_bound;
};

std::vector<BoundRow> ideal_bound_comparison(const MetricsReport& loss_report);

// Fast evaluator for crosstalk words. The network is periodic in the bin
// length and the grating acts circularly, so a packet in bin j delivers the
// bin-0 response shifted by j bins. Each (source, receiver) pair is propagated
// once and the word norm is read off the bin-lag autocorrelation of that
// response.
class CrosstalkEvaluator {
 public:
  CrosstalkEvaluator(const network::Network& net, std::size_t threads);

  // Probability of detecting a photon at `receiver` when each source sends the
  // given word (sources absent from `words` are silent).
  double word_probability(network::UserId receiver,
                          const std::vector<std::pair<network::UserId, std::vector<std::uint8_t>>>& words) const;

 private:
  std::size_t bins_;
  // lags_[source][receiver][d] = <h, shift_d h>, d = 0 .. bins - 1
  std::map<network::UserId, std::map<network::UserId, std::vector<Complex>>> lags_;
};

// Runs fn(i) for i in [0, count) on up to `threads` workers. Rethrows the
// first exception after all workers stop.
void parallel_for(std::size_t count, std::size_t threads, const std::function<void(std::size_t)>& fn);

}  // namespace qssma::experiments
