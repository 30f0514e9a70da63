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

// Text serializations of reports and traces. Every artifact opens with a
// '#'-prefixed header block: artifact version, config hash, seed.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "qssma/experiments.hpp"

namespace qssma::report_io {

struct Header {
  std::string version;
  std::string config_hash;  // 16 hex digits
  std::uint64_t seed = 0;
  std::string description;  // one line, optional

  static Header for_config(const experiments::ScenarioConfig& config, std::string description = {});
  // Artifacts without a scenario (code dumps) hash their parameter string.
  static Header for_parameters(std::string_view parameters, std::string description = {});
};

std::string header_block(const Header& header);

// Shortest decimal that round-trips to the same double.
std::string format_double(double value);

// Columns S,N,mean,stderr,trials; fidelity reports add a state column after N.
std::string report_csv(const experiments::MetricsReport& report);
std::string report_json(const experiments::MetricsReport& report);

// Two columns t/T,density. Densities are box-averaged over runs of samples so
// that each bin holds at most `points_per_bin` rows; 0 keeps every sample.
std::string trace_csv(const experiments::TraceResult& trace, std::size_t receiver_index,
                      std::size_t points_per_bin = 256);
// Columns user,bin_0..bin_{B-1}; transmitted bits, then per-bin detection at
// that user's receiver.
std::string bits_csv(const experiments::TraceResult& trace);

// Rows are users, columns are chips, entries +1/-1.
std::string codes_csv(unsigned registers, std::size_t count);

std::string bound_csv(const experiments::MetricsReport& loss_report);

// Throws Error(io) on failure.
void write_file(const std::filesystem::path& path, std::string_view contents);

}  // namespace qssma::report_io
