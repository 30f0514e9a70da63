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

// JSON scenario files. Every field is optional; absent fields take the
// defaults of the experiment kind.
//
//   {"kind": "loss", "users": [5, 20], "n_registers": [8, 10], "trials": 50}

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "qssma/experiments.hpp"

namespace qssma::config {

// Parses and validates. `origin` names the source in error messages. Errors
// are Error(config) and carry line/column or the field name.
experiments::ScenarioConfig parse(std::string_view text, std::string_view origin = "<config>");
experiments::ScenarioConfig load(const std::filesystem::path& path);

// Sorted-key, fully resolved JSON. sigma_filt is written out even when it
// came from the default, so a dump round-trips to the same run.
std::string canonical_json(const experiments::ScenarioConfig& config);

// FNV-1a of canonical_json.
std::uint64_t config_hash(const experiments::ScenarioConfig& config);
std::string hash_hex(std::uint64_t hash);

}  // namespace qssma::config
