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

#include "qssma/config.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "json.hpp"
#include "qssma/error.hpp"
#include "qssma/rng.hpp"

namespace qssma::config {

using experiments::CrosstalkNormalization;
using experiments::ExperimentKind;
using experiments::ScenarioConfig;
using nlohmann::json;

namespace {

constexpr std::string_view kFields[] = {
    "bin_duration", "bits",  "bits_per_user",   "crosstalk_normalization", "kind",           "n_registers",
    "rng_seed",     "sigma_filt", "samples_per_chip", "transition_time",     "trials",         "users",
};

struct Position {
  std::size_t line = 1;
  std::size_t column = 1;
};

Position position_of(std::string_view text, std::size_t offset) {
  Position p;
  offset = std::min(offset, text.size());
  for (std::size_t i = 0; i < offset; ++i) {
    if (text[i] == '\n') {
      ++p.line;
      p.column = 1;
    } else {
      ++p.column;
    }
  }
  return p;
}

class Reader {
 public:
  Reader(std::string_view text, std::string_view origin) : text_(text), origin_(origin) {}

  [[noreturn]] void field_error(std::string_view field, const std::string& what) const {
    std::string where(origin_);
    // First occurrence of the quoted key; good enough for flat documents.
    const std::string quoted = "\"" + std::string(field) + "\"";
    if (auto at = text_.find(quoted); at != std::string_view::npos) {
      where += ":" + std::to_string(position_of(text_, at).line);
    }
    fail(ErrorCategory::config, where + ": config field '" + std::string(field) + "': " + what);
  }

  std::uint64_t unsigned_value(std::string_view field, const json& v) const {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return static_cast<std::uint64_t>(v.get<std::int64_t>());
    field_error(field, "expected a non-negative integer, got " + v.dump());
  }

  double number_value(std::string_view field, const json& v) const {
    if (!v.is_number()) field_error(field, "expected a number, got " + v.dump());
    return v.get<double>();
  }

  template <class T>
  std::vector<T> unsigned_list(std::string_view field, const json& v) const {
    std::vector<T> out;
    if (v.is_number()) {
      out.push_back(narrow<T>(field, unsigned_value(field, v)));
    } else if (v.is_array()) {
      for (const json& e : v) out.push_back(narrow<T>(field, unsigned_value(field, e)));
    } else {
      field_error(field, "expected an integer or a list of integers, got " + v.dump());
    }
    return out;
  }

  template <class T>
  T narrow(std::string_view field, std::uint64_t value) const {
    if (value > std::numeric_limits<T>::max()) field_error(field, "value " + std::to_string(value) + " is too large");
    return static_cast<T>(value);
  }

  std::string_view origin() const { return origin_; }
  std::string_view text() const { return text_; }

 private:
  std::string_view text_;
  std::string_view origin_;
};

}  // namespace

ScenarioConfig parse(std::string_view text, std::string_view origin) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    const Position p = position_of(text, e.byte == 0 ? 0 : e.byte - 1);
    fail(ErrorCategory::config, std::string(origin) + ":" + std::to_string(p.line) + ":" + std::to_string(p.column) +
                                    ": malformed JSON (" + e.what() + ")");
  }
  const Reader r(text, origin);
  if (!doc.is_object()) fail(ErrorCategory::config, std::string(origin) + ": top level must be a JSON object");

  for (const auto& [key, value] : doc.items()) {
    if (std::find(std::begin(kFields), std::end(kFields), key) == std::end(kFields)) {
      r.field_error(key, "unknown field");
    }
  }

  ExperimentKind kind = ExperimentKind::loss;
  if (doc.contains("kind")) {
    const json& k = doc["kind"];
    auto parsed = k.is_string() ? experiments::parse_kind(k.get<std::string>()) : std::nullopt;
    if (!parsed) r.field_error("kind", "expected one of loss, crosstalk, fidelity, trace; got " + k.dump());
    kind = *parsed;
  }
  ScenarioConfig c = ScenarioConfig::defaults(kind);

  if (doc.contains("users")) c.users = r.unsigned_list<std::size_t>("users", doc["users"]);
  if (doc.contains("n_registers")) c.registers = r.unsigned_list<unsigned>("n_registers", doc["n_registers"]);
  if (doc.contains("trials")) c.trials = r.narrow<std::size_t>("trials", r.unsigned_value("trials", doc["trials"]));
  if (doc.contains("bits_per_user")) {
    c.bits_per_user = r.narrow<std::size_t>("bits_per_user", r.unsigned_value("bits_per_user", doc["bits_per_user"]));
  }
  if (doc.contains("samples_per_chip")) {
    c.samples_per_chip =
        r.narrow<std::size_t>("samples_per_chip", r.unsigned_value("samples_per_chip", doc["samples_per_chip"]));
  }
  if (doc.contains("sigma_filt") && !doc["sigma_filt"].is_null()) {
    c.sigma_filt = r.number_value("sigma_filt", doc["sigma_filt"]);
  }
  if (doc.contains("transition_time")) c.transition_time = r.number_value("transition_time", doc["transition_time"]);
  if (doc.contains("bin_duration")) c.bin_duration = r.number_value("bin_duration", doc["bin_duration"]);
  if (doc.contains("rng_seed")) c.rng_seed = r.unsigned_value("rng_seed", doc["rng_seed"]);
  if (doc.contains("crosstalk_normalization")) {
    const json& v = doc["crosstalk_normalization"];
    if (v == "per_bin") {
      c.crosstalk_normalization = CrosstalkNormalization::per_bin;
    } else if (v == "word") {
      c.crosstalk_normalization = CrosstalkNormalization::word;
    } else {
      r.field_error("crosstalk_normalization", "expected \"per_bin\" or \"word\", got " + v.dump());
    }
  }
  if (doc.contains("bits")) {
    const json& v = doc["bits"];
    if (!v.is_array()) r.field_error("bits", "expected a list of words");
    c.bits.clear();
    for (const json& word : v) {
      c.bits.push_back(r.unsigned_list<std::uint8_t>("bits", word));
    }
  }

  try {
    experiments::validate(c);
  } catch (const Error& e) {
    // Re-anchor the message to the file position of the field it names.
    std::string what = e.what();
    const auto open = what.find('\'');
    const auto close = what.find('\'', open + 1);
    if (open != std::string::npos && close != std::string::npos) {
      const std::string field = what.substr(open + 1, close - open - 1);
      if (doc.contains(field)) {
        r.field_error(field, what.substr(what.find(": ") + 2));
      }
    }
    fail(ErrorCategory::config, std::string(origin) + ": " + what);
  }
  return c;
}

ScenarioConfig load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCategory::io, "cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path.string());
}

std::string canonical_json(const ScenarioConfig& c) {
  // nlohmann's default object type keeps keys sorted.
  json doc;
  doc["kind"] = std::string(experiments::kind_name(c.kind));
  doc["users"] = c.users;
  doc["n_registers"] = c.registers;
  doc["trials"] = c.trials;
  doc["bits_per_user"] = c.bits_per_user;
  doc["samples_per_chip"] = c.samples_per_chip;
  doc["sigma_filt"] = c.resolved_sigma_filt();
  doc["transition_time"] = c.transition_time;
  doc["bin_duration"] = c.bin_duration;
  doc["rng_seed"] = c.rng_seed;
  doc["crosstalk_normalization"] = c.crosstalk_normalization == CrosstalkNormalization::per_bin ? "per_bin" : "word";
  if (!c.bits.empty()) doc["bits"] = c.bits;
  return doc.dump();
}

std::uint64_t config_hash(const ScenarioConfig& config) { return rng::fnv1a(canonical_json(config)); }

std::string hash_hex(std::uint64_t hash) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace qssma::config
