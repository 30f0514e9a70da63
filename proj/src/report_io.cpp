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

#include "qssma/report_io.hpp"

#include <charconv>
#include <fstream>

#include "json.hpp"
#include "qssma/codes.hpp"
#include "qssma/config.hpp"
#include "qssma/error.hpp"
#include "qssma/rng.hpp"

namespace qssma::report_io {

using experiments::ExperimentKind;
using experiments::MetricsReport;
using experiments::TraceResult;

Header Header::for_config(const experiments::ScenarioConfig& config, std::string description) {
  return {QSSMA_VERSION, config::hash_hex(config::config_hash(config)), config.rng_seed, std::move(description)};
}

Header Header::for_parameters(std::string_view parameters, std::string description) {
  return {QSSMA_VERSION, config::hash_hex(rng::fnv1a(parameters)), 0, std::move(description)};
}

std::string header_block(const Header& h) {
  std::string out = "# qssma " + h.version + "\n";
  out += "# config_hash " + h.config_hash + "\n";
  out += "# seed " + std::to_string(h.seed) + "\n";
  if (!h.description.empty()) out += "# " + h.description + "\n";
  return out;
}

std::string format_double(double value) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return ec == std::errc{} ? std::string(buf, end) : std::string("nan");
}

namespace {

std::string describe(const MetricsReport& r) { return "config " + config::canonical_json(r.config); }

}  // namespace

std::string report_csv(const MetricsReport& report) {
  const bool states = report.config.kind == ExperimentKind::fidelity;
  std::string out = header_block(Header::for_config(report.config, describe(report)));
  out += states ? "S,N,state,mean,stderr,trials\n" : "S,N,mean,stderr,trials\n";
  for (const auto& c : report.cells) {
    out += std::to_string(c.chips) + "," + std::to_string(c.users) + ",";
    if (states) out += c.state + ",";
    out += format_double(c.mean) + "," + format_double(c.std_error) + "," + std::to_string(c.trials) + "\n";
  }
  return out;
}

std::string report_json(const MetricsReport& report) {
  const Header h = Header::for_config(report.config);
  nlohmann::ordered_json doc;
  doc["header"] = {{"version", h.version}, {"config_hash", h.config_hash}, {"seed", h.seed}};
  doc["config"] = nlohmann::ordered_json::parse(config::canonical_json(report.config));
  auto cells = nlohmann::ordered_json::array();
  for (const auto& c : report.cells) {
    nlohmann::ordered_json cell;
    cell["n_registers"] = c.registers;
    cell["S"] = c.chips;
    cell["N"] = c.users;
    if (!c.state.empty()) cell["state"] = c.state;
    cell["mean"] = c.mean;
    cell["stderr"] = c.std_error;
    cell["trials"] = c.trials;
    cells.push_back(std::move(cell));
  }
  doc["cells"] = std::move(cells);
  return doc.dump(2) + "\n";
}

std::string trace_csv(const TraceResult& trace, std::size_t receiver_index, std::size_t points_per_bin) {
  require(receiver_index < trace.densities.size(), "trace_csv: receiver index out of range");
  const auto& grid = trace.grid;
  const auto& values = trace.densities[receiver_index].values;
  const std::size_t spb = grid.samples_per_bin();
  std::size_t group = 1;
  if (points_per_bin != 0 && spb > points_per_bin) {
    group = (spb + points_per_bin - 1) / points_per_bin;
    while (spb % group != 0) ++group;  // keep groups inside bins
  }

  std::string out = header_block(Header::for_config(
      trace.config, "receiver " + std::to_string(receiver_index + 1) + "; density in units of 1/T"));
  out += "t_over_T,density\n";
  const double T = grid.bin_duration();
  for (std::size_t k = 0; k + group <= values.size(); k += group) {
    double sum = 0.0;
    for (std::size_t j = 0; j < group; ++j) sum += values[k + j];
    const double t = 0.5 * (grid.time_at(k) + grid.time_at(k + group - 1));
    out += format_double(t / T) + "," + format_double(sum / static_cast<double>(group) * T) + "\n";
  }
  return out;
}

std::string bits_csv(const TraceResult& trace) {
  std::string out = header_block(Header::for_config(trace.config, "kind=bits rows are sent bits, kind=detected rows are per-bin detection"));
  out += "user,kind";
  const std::size_t bins = trace.grid.data_bins();
  for (std::size_t j = 0; j < bins; ++j) out += ",bin_" + std::to_string(j);
  out += "\n";
  for (std::size_t i = 0; i < trace.channels.size(); ++i) {
    const auto& ch = trace.channels[i];
    out += std::to_string(ch.user_id) + ",bits";
    for (auto b : ch.bits) out += "," + std::to_string(static_cast<int>(b));
    out += "\n";
    out += std::to_string(ch.user_id) + ",detected";
    for (double d : trace.detection[i]) out += "," + format_double(d);
    out += "\n";
  }
  return out;
}

std::string codes_csv(unsigned registers, std::size_t count) {
  const auto family = codes::user_codes(registers, count);
  const std::string params = "codes n=" + std::to_string(registers) + " count=" + std::to_string(count);
  std::string out = header_block(Header::for_parameters(params, params));
  for (const auto& code : family) {
    for (std::size_t k = 0; k < code.size(); ++k) {
      if (k) out += ",";
      out += code[k] > 0 ? "1" : "-1";
    }
    out += "\n";
  }
  return out;
}

std::string bound_csv(const MetricsReport& loss_report) {
  std::string out = header_block(Header::for_config(loss_report.config, "measured loss against the (2N-2)/S ideal worst case"));
  out += "S,N,measured,ideal_bound,ratio\n";
  for (const auto& row : experiments::ideal_bound_comparison(loss_report)) {
    out += std::to_string(row.chips) + "," + std::to_string(row.users) + "," + format_double(row.measured) + "," +
           format_double(row.ideal_bound) + "," +
           (row.ideal_bound > 0.0 ? format_double(row.measured / row.ideal_bound) : std::string("inf")) + "\n";
  }
  return out;
}

void write_file(const std::filesystem::path& path, std::string_view contents) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) fail(ErrorCategory::io, "cannot open '" + path.string() + "' for writing");
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  out.close();
  if (!out) fail(ErrorCategory::io, "short write to '" + path.string() + "'");
}

}  // namespace qssma::report_io
