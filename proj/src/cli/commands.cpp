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

#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qssma/cli.hpp"
#include "qssma/codes.hpp"
#include "qssma/config.hpp"
#include "qssma/experiments.hpp"
#include "qssma/report_io.hpp"

namespace qssma::cli {

namespace fs = std::filesystem;
using experiments::ExperimentKind;
using experiments::ScenarioConfig;

int exit_code(ErrorCategory category) noexcept {
  switch (category) {
    case ErrorCategory::invalid_argument:
      return 2;
    case ErrorCategory::config:
      return 3;
    case ErrorCategory::unsupported:
      return 4;
    case ErrorCategory::io:
      return 5;
  }
  return kInternalErrorExit;
}

namespace {

// Flags shared by the scenario subcommands. Unset flags leave the config alone.
struct Overrides {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::vector<unsigned> registers;
  std::vector<std::size_t> users;
  std::optional<std::size_t> samples_per_chip;
  std::optional<double> sigma_filt;
  std::optional<double> transition_time;
  bool full_scale = false;
  std::size_t threads = 0;

  void attach(CLI::App& app) {
    app.add_option("--config", config_path, "JSON scenario file");
    app.add_option("--seed", seed, "RNG seed");
    app.add_option("--trials", trials, "trials per grid cell");
    app.add_option("--n-registers", registers, "LFSR register counts")->delimiter(',');
    app.add_option("--users", users, "user counts")->delimiter(',');
    app.add_option("--samples-per-chip", samples_per_chip, "time samples per chip");
    app.add_option("--sigma-filt", sigma_filt, "grating width in Hz (default 8/T)");
    app.add_option("--transition-time", transition_time, "modulator transition time in seconds");
    app.add_flag("--full-scale", full_scale, "use the long trial counts");
    app.add_option("--threads", threads, "worker threads (0 = all cores)");
  }

  // Starts from the file when given, else the defaults of `kind`.
  ScenarioConfig resolve(ExperimentKind kind, bool kind_from_file) const {
    ScenarioConfig c = ScenarioConfig::defaults(kind);
    if (!config_path.empty()) {
      c = config::load(config_path);
      if (!kind_from_file && c.kind != kind) {
        fail(ErrorCategory::config, config_path + ": config field 'kind': expected " +
                                        std::string(experiments::kind_name(kind)) + " for this subcommand");
      }
    }
    if (full_scale) c.trials = experiments::full_scale_trials(c.kind);
    if (seed) c.rng_seed = *seed;
    if (trials) c.trials = *trials;
    if (!registers.empty()) c.registers = registers;
    if (!users.empty()) c.users = users;
    if (samples_per_chip) c.samples_per_chip = *samples_per_chip;
    if (sigma_filt) c.sigma_filt = *sigma_filt;
    if (transition_time) c.transition_time = *transition_time;
    experiments::validate(c);
    return c;
  }
};

void write_report(const experiments::MetricsReport& report, const fs::path& dir, std::ostream& out) {
  const std::string stem(experiments::kind_name(report.config.kind));
  report_io::write_file(dir / (stem + ".csv"), report_io::report_csv(report));
  report_io::write_file(dir / (stem + ".json"), report_io::report_json(report));
  out << "wrote " << (dir / (stem + ".csv")).string() << " and " << stem << ".json\n";
  if (report.config.kind == ExperimentKind::loss) {
    report_io::write_file(dir / "loss_bound.csv", report_io::bound_csv(report));
    out << "wrote " << (dir / "loss_bound.csv").string() << "\n";
  }
}

void write_traces(const ScenarioConfig& c, std::size_t threads, std::size_t points, const fs::path& dir,
                  std::ostream& out) {
  const auto trace = experiments::run_trace(c, {threads});
  for (std::size_t i = 0; i < trace.densities.size(); ++i) {
    const fs::path file = dir / ("receiver_" + std::to_string(i + 1) + ".csv");
    report_io::write_file(file, report_io::trace_csv(trace, i, points));
  }
  report_io::write_file(dir / "bits.csv", report_io::bits_csv(trace));
  out << "wrote " << trace.densities.size() << " receiver traces and bits.csv to " << dir.string() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantum spread-spectrum add-drop multiplexing simulator"};
  app.set_version_flag("--version", QSSMA_VERSION);
  app.require_subcommand(1);

  // codes
  auto* codes_cmd = app.add_subcommand("codes", "dump a user code family as CSV");
  unsigned code_n = 0;
  std::optional<std::size_t> code_count;
  std::string code_out;
  codes_cmd->add_option("--n-registers", code_n, "LFSR register count")->required();
  codes_cmd->add_option("--count", code_count, "number of users (default 2^n - 1)");
  codes_cmd->add_option("--out", code_out, "output file (default stdout)");

  // simulate
  auto* sim_cmd = app.add_subcommand("simulate", "run the scenario in a config file");
  Overrides sim;
  std::string sim_out = ".";
  std::size_t sim_points = 256;
  sim.attach(*sim_cmd);
  sim_cmd->get_option("--config")->required();
  sim_cmd->add_option("--out", sim_out, "output directory");
  sim_cmd->add_option("--points-per-bin", sim_points, "trace resolution (0 = every sample)");

  // tables
  auto* tab_cmd = app.add_subcommand("tables", "loss, crosstalk and fidelity grids");
  Overrides tab;
  std::string tab_out = ".";
  std::vector<std::string> tab_kinds{"loss", "crosstalk", "fidelity"};
  tab.attach(*tab_cmd);
  tab_cmd->add_option("--out", tab_out, "output directory");
  tab_cmd->add_option("--kind", tab_kinds, "subset of loss,crosstalk,fidelity")->delimiter(',');

  // traces
  auto* tr_cmd = app.add_subcommand("traces", "per-receiver density time series for one word");
  Overrides tr;
  std::string tr_out = ".";
  std::size_t tr_points = 256;
  tr.attach(*tr_cmd);
  tr_cmd->add_option("--out", tr_out, "output directory");
  tr_cmd->add_option("--points-per-bin", tr_points, "trace resolution (0 = every sample)");

  // validate
  auto* val_cmd = app.add_subcommand("validate", "check a config and echo it with defaults resolved");
  Overrides val;
  val.attach(*val_cmd);
  val_cmd->get_option("--config")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : exit_code(ErrorCategory::invalid_argument);
  }

  try {
    if (codes_cmd->parsed()) {
      if (!codes::is_supported(code_n)) {
        // Same category and wording as a config file naming n.
        std::string list;
        for (unsigned s : codes::supported_registers()) list += (list.empty() ? "" : ",") + std::to_string(s);
        fail(ErrorCategory::unsupported, "n=" + std::to_string(code_n) + " is not supported (supported: " + list + ")");
      }
      const std::size_t count = code_count.value_or((std::size_t{1} << code_n) - 1);
      const std::string csv = report_io::codes_csv(code_n, count);
      if (code_out.empty()) {
        out << csv;
      } else {
        report_io::write_file(code_out, csv);
      }
    } else if (sim_cmd->parsed()) {
      const ScenarioConfig c = sim.resolve(ExperimentKind::loss, true);
      if (c.kind == ExperimentKind::trace) {
        write_traces(c, sim.threads, sim_points, sim_out, out);
      } else {
        write_report(experiments::run_report(c, {sim.threads}), sim_out, out);
      }
    } else if (tab_cmd->parsed()) {
      std::vector<ScenarioConfig> configs;
      if (!tab.config_path.empty()) {
        configs.push_back(tab.resolve(ExperimentKind::loss, true));
        if (configs.back().kind == ExperimentKind::trace) {
          fail(ErrorCategory::config, "config field 'kind': tables take loss, crosstalk or fidelity");
        }
      } else {
        for (const auto& name : tab_kinds) {
          const auto kind = experiments::parse_kind(name);
          if (!kind || *kind == ExperimentKind::trace) {
            fail(ErrorCategory::invalid_argument, "--kind: unknown table '" + name + "'");
          }
          configs.push_back(tab.resolve(*kind, false));
        }
      }
      // Every config is validated above before the first run starts.
      for (const auto& c : configs) write_report(experiments::run_report(c, {tab.threads}), tab_out, out);
    } else if (tr_cmd->parsed()) {
      write_traces(tr.resolve(ExperimentKind::trace, false), tr.threads, tr_points, tr_out, out);
    } else if (val_cmd->parsed()) {
      const ScenarioConfig c = val.resolve(ExperimentKind::loss, true);
      out << "ok\n" << config::canonical_json(c) << "\nconfig_hash " << config::hash_hex(config::config_hash(c)) << "\n";
    }
  } catch (const Error& e) {
    err << "error[" << category_name(e.category()) << "]: " << e.what() << "\n";
    return exit_code(e.category());
  } catch (const std::exception& e) {
    err << "error[internal]: " << e.what() << "\n";
    return kInternalErrorExit;
  }
  return 0;
}

}  // namespace qssma::cli
