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

// Acceptance run: one PASS/FAIL line per criterion, details indented above
// it. Exit status is nonzero if any criterion fails.
//
//   QSSMA_ACCEPT_N14=1     add the n=14 column to the loss and crosstalk grids
//   QSSMA_FULL_SCALE=1    use the long trial counts

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdarg>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracle.hpp"
#include "qssma/codes.hpp"
#include "qssma/experiments.hpp"
#include "qssma/fft.hpp"
#include "qssma/metrics.hpp"
#include "qssma/optics.hpp"
#include "qssma/report_io.hpp"
#include "qssma/rng.hpp"

using namespace qssma;
using experiments::ExperimentKind;
using experiments::MetricsReport;
using experiments::ScenarioConfig;

namespace {

using Grid = std::map<std::pair<unsigned, std::size_t>, double>;

// Reference grids, keyed by (n, N).
const Grid kLoss = {
    {{8, 5}, 0.3240},  {{8, 20}, 0.8301},  {{8, 50}, 0.9893},  {{10, 5}, 0.1199}, {{10, 20}, 0.3723},
    {{10, 50}, 0.6729}, {{12, 5}, 0.0585}, {{12, 20}, 0.1339}, {{12, 50}, 0.2642}, {{14, 5}, 0.0426},
    {{14, 20}, 0.0620}, {{14, 50}, 0.0998},
};
const Grid kCrosstalk = {
    {{8, 5}, 0.0634},  {{8, 20}, 0.2244},  {{8, 50}, 0.3889},  {{10, 5}, 0.0185}, {{10, 20}, 0.0730},
    {{10, 50}, 0.1679}, {{12, 5}, 0.0043}, {{12, 20}, 0.0186}, {{12, 50}, 0.0483}, {{14, 5}, 0.0010},
    {{14, 20}, 0.0050}, {{14, 50}, 0.0127},
};
const std::map<std::string, std::map<std::size_t, double>> kInfidelity = {
    {"zero", {{5, 1.079e-3}, {20, 2.340e-3}, {50, 5.626e-3}}},
    {"one", {{5, 1.079e-3}, {20, 2.340e-3}, {50, 5.623e-3}}},
    {"plus", {{5, 1.079e-3}, {20, 2.342e-3}, {50, 5.632e-3}}},
    {"minus", {{5, 1.078e-3}, {20, 2.334e-3}, {50, 5.606e-3}}},
};

bool env_flag(const char* name) {
  const char* v = std::getenv(name);
  return v != nullptr && *v != '\0' && std::string(v) != "0";
}

int failures = 0;

void verdict(int id, const std::string& title, bool ok, const std::string& summary, double seconds) {
  std::printf("%s criterion %d: %s: %s (%.1f s)\n", ok ? "PASS" : "FAIL", id, title.c_str(), summary.c_str(),
              seconds);
  std::fflush(stdout);
  if (!ok) ++failures;
}

void detail(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
void detail(const char* fmt, ...) {
  std::printf("    ");
  va_list args;
  va_start(args, fmt);
  std::vprintf(fmt, args);
  va_end(args);
  std::printf("\n");
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

signal::SampledEnvelope random_envelope(const signal::TimeGrid& g, std::mt19937_64& eng) {
  std::normal_distribution<double> nd;
  ComplexVector v(g.size());
  for (auto& x : v) x = {nd(eng), nd(eng)};
  return signal::SampledEnvelope(g, std::move(v));
}

// ---------------------------------------------------------------------------

void exact_invariants() {
  Timer timer;
  std::mt19937_64 eng(1);
  double mod_inverse = 0, mod_norm = 0, fbg = 0, roundtrip = 0, parseval = 0, allpass = 0;
  for (unsigned n : {3u, 6u, 8u, 10u, 12u}) {
    const signal::TimeGrid g(1.0, (std::size_t{1} << n) - 1, 3);
    const auto x = random_envelope(g, eng);
    const double nx = signal::norm_sq(x);
    double scale = 0;
    for (auto v : x.samples()) scale = std::max(scale, std::abs(v));

    const optics::ModulatorSpec spec{codes::user_codes(n, 3).back(), 1.0};
    const optics::Modulator m(g, spec);
    const auto y = m.apply(x);
    mod_norm = std::max(mod_norm, rel_err(signal::norm_sq(y), nx));
    const auto z = m.apply(y);
    for (std::size_t k = 0; k < x.size(); ++k) {
      mod_inverse = std::max(mod_inverse, std::abs(z.samples()[k] - x.samples()[k]) / scale);
    }

    const optics::Grating grating(g, optics::FbgSpec::standard(1.0));
    fbg = std::max(fbg, rel_err(signal::norm_sq(grating.reflect(x)) + signal::norm_sq(grating.transmit(x)), nx));

    const auto X = signal::to_frequency(x);
    parseval = std::max(parseval, rel_err(signal::norm_sq(X), nx));
    const auto back = signal::to_time(X);
    for (std::size_t k = 0; k < x.size(); ++k) {
      roundtrip = std::max(roundtrip, std::abs(back.samples()[k] - x.samples()[k]) / scale);
    }

    // Spread, pass every other node of an all-pass chain, despread.
    const auto in = metrics::cow_state(g, metrics::CowLabel::plus).envelope;
    const auto family = codes::user_codes(n, 6);
    const auto ap = optics::FbgSpec::all_pass();
    auto photon = optics::modulate(in, {family[0], 1.0});
    for (std::size_t k = 1; k < family.size(); ++k) photon = optics::mux_old_path(photon, {family[k], 1.0}, ap);
    for (std::size_t k = 1; k < family.size(); ++k) photon = optics::demux_through_path(photon, {family[k], 1.0}, ap);
    photon = optics::modulate(photon, {family[0], 1.0});
    allpass = std::max(allpass, std::abs(1.0 - metrics::fidelity(in, photon, true)));
  }
  detail("modulator self-inverse max rel err %.2e, norm rel err %.2e", mod_inverse, mod_norm);
  detail("grating |R|^2+|T|^2 energy rel err %.2e", fbg);
  detail("Fourier roundtrip rel err %.2e, Parseval rel err %.2e", roundtrip, parseval);
  detail("spread/all-pass/despread 1-F %.2e", allpass);
  const double worst = std::max({mod_inverse, mod_norm, fbg, roundtrip, parseval, allpass});
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst %.2e against 1e-12", worst);
  verdict(1, "exact invariants", worst <= 1e-12, buf, timer.seconds());
}

// ---------------------------------------------------------------------------

void code_properties() {
  Timer timer;
  bool ok = true;
  std::string first_problem;
  auto check = [&](bool c, const std::string& what) {
    if (!c && ok) first_problem = what;
    ok = ok && c;
  };
  std::mt19937_64 eng(2);
  for (unsigned n = 2; n <= 16; ++n) {
    const auto spec = codes::builtin_lfsr(n);
    const long S = (1L << n) - 1;
    const std::string tag = "n=" + std::to_string(n);
    check(codes::lfsr_period(spec) == static_cast<std::uint64_t>(S), tag + " period");
    check(oracle::is_primitive(n, spec.taps), tag + " polynomial not primitive");
    const auto c = codes::msequence_code(spec);
    check(std::count(c.chips().begin(), c.chips().end(), -1) == (S + 1) / 2, tag + " balance");
    const bool exhaustive = n <= 10;
    std::uniform_int_distribution<long> lag(1, S - 1);
    const long lags = exhaustive ? S - 1 : 256;
    for (long i = 0; i < lags; ++i) {
      const long l = exhaustive ? i + 1 : lag(eng);
      if (codes::cyclic_autocorrelation(c, static_cast<std::size_t>(l)) != -1) {
        check(false, tag + " autocorrelation at lag " + std::to_string(l));
        break;
      }
    }
    // Pairwise inner products of shifted codes.
    if (exhaustive) {
      std::vector<codes::SpreadingCode> fam;
      for (long i = 0; i < S; ++i) fam.push_back(codes::shift_code(c, static_cast<std::size_t>(i)));
      for (long i = 0; i < S && ok; ++i) {
        check(codes::code_inner(fam[i], fam[i]) == S, tag + " self inner product");
        for (long j = i + 1; j < S; ++j) {
          if (codes::code_inner(fam[i], fam[j]) != -1) {
            check(false, tag + " inner product of shifts " + std::to_string(i) + "," + std::to_string(j));
            break;
          }
        }
      }
    } else {
      std::uniform_int_distribution<long> shift(0, S - 1);
      for (int k = 0; k < 64; ++k) {
        const long i = shift(eng), j = shift(eng);
        const long want = i == j ? S : -1;
        check(codes::code_inner(codes::shift_code(c, i), codes::shift_code(c, j)) == want,
              tag + " sampled inner product");
      }
    }
  }
  detail("n=2..10 exhaustive (all lags, all shift pairs); n=11..16 sampled (256 lags, 64 pairs)");
  verdict(2, "code properties", ok, ok ? "period, balance, autocorrelation, cross products hold" : first_problem,
          timer.seconds());
}

// ---------------------------------------------------------------------------

struct GridCheck {
  bool within = true;
  bool monotone = true;
  int cells = 0;
  int passed = 0;
};

GridCheck compare_grid(const MetricsReport& r, const Grid& reference, const std::vector<unsigned>& ns,
                       const std::vector<std::size_t>& users) {
  GridCheck g;
  for (unsigned n : ns) {
    for (std::size_t N : users) {
      const auto* cell = r.find(n, N);
      const double want = reference.at({n, N});
      const double tol = std::max(0.25 * want, 0.05);
      const bool ok = cell && std::abs(cell->mean - want) <= tol;
      ++g.cells;
      g.passed += ok;
      g.within = g.within && ok;
      detail("n=%-2u N=%-2zu mean %.4f +- %.4f (ref %.4f, tol %.4f, dev %+.1f%%) %s", n, N, cell ? cell->mean : NAN,
             cell ? cell->std_error : NAN, want, tol, cell ? 100.0 * (cell->mean - want) / want : NAN,
             ok ? "ok" : "OUT");
    }
  }
  for (unsigned n : ns) {
    for (std::size_t i = 1; i < users.size(); ++i) {
      if (!(r.find(n, users[i])->mean > r.find(n, users[i - 1])->mean)) {
        g.monotone = false;
        detail("not increasing in N at n=%u between N=%zu and N=%zu", n, users[i - 1], users[i]);
      }
    }
  }
  for (std::size_t N : users) {
    for (std::size_t i = 1; i < ns.size(); ++i) {
      if (!(r.find(ns[i], N)->mean < r.find(ns[i - 1], N)->mean)) {
        g.monotone = false;
        detail("not decreasing in S at N=%zu between n=%u and n=%u", N, ns[i - 1], ns[i]);
      }
    }
  }
  return g;
}

std::string grid_summary(const GridCheck& g) {
  return std::to_string(g.passed) + "/" + std::to_string(g.cells) + " cells within tolerance, monotonicity " +
         (g.monotone ? "holds" : "violated");
}

MetricsReport table_run(int id, const char* title, ExperimentKind kind, const Grid& reference, bool n14, bool full_scale) {
  Timer timer;
  ScenarioConfig c = ScenarioConfig::defaults(kind);
  c.registers = {8, 10, 12};
  if (n14) c.registers.push_back(14);
  if (full_scale) c.trials = experiments::full_scale_trials(kind);
  detail("%zu trials per cell, sigma_filt %.3g/T, seed %llu", c.trials, c.resolved_sigma_filt(),
         static_cast<unsigned long long>(c.rng_seed));
  const auto r = experiments::run_report(c);
  const auto g = compare_grid(r, reference, c.registers, c.users);
  verdict(id, title, g.within && g.monotone, grid_summary(g), timer.seconds());
  return r;
}

// ---------------------------------------------------------------------------

void fidelity_table(bool full_scale) {
  Timer timer;
  ScenarioConfig c = ScenarioConfig::defaults(ExperimentKind::fidelity);
  if (full_scale) c.trials = experiments::full_scale_trials(ExperimentKind::fidelity);
  detail("%zu trials per cell, n=10", c.trials);
  const auto r = experiments::run_fidelity(c);
  int cells = 0, passed = 0;
  bool agree = true, monotone = true;
  for (const auto& [state, row] : kInfidelity) {
    double prev = 0;
    for (const auto& [N, want] : row) {
      const auto* cell = r.find(10, N, state);
      const bool ok = cell && std::abs(cell->mean - want) <= 0.5 * want;
      ++cells;
      passed += ok;
      detail("%-5s N=%-2zu 1-F %.3e +- %.1e (ref %.3e, dev %+.0f%%) %s", state.c_str(), N, cell->mean,
             cell->std_error, want, 100.0 * (cell->mean - want) / want, ok ? "ok" : "OUT");
      if (!(cell->mean > prev)) monotone = false;
      prev = cell->mean;
    }
  }
  for (std::size_t N : c.users) {
    double lo = INFINITY, hi = 0;
    for (auto label : metrics::kAllCowLabels) {
      const double v = r.find(10, N, metrics::cow_label_name(label))->mean;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    const double spread = (hi - lo) / lo;
    detail("N=%zu states agree within %.2f%%", N, 100.0 * spread);
    agree = agree && spread <= 0.10;
  }
  const std::string summary = std::to_string(passed) + "/" + std::to_string(cells) + " cells within 50%, states " +
                              (agree ? "agree" : "disagree") + " within 10%, increasing in N " +
                              (monotone ? "holds" : "violated");
  verdict(5, "fidelity grid", passed == cells && agree && monotone, summary, timer.seconds());
}

// ---------------------------------------------------------------------------

void trace_checks() {
  Timer timer;
  ScenarioConfig c = ScenarioConfig::defaults(ExperimentKind::trace);
  const auto t15 = experiments::run_trace(c);
  double worst_one = 1.0, worst_zero = 0.0;
  for (std::size_t r = 0; r < t15.channels.size(); ++r) {
    for (std::size_t j = 0; j < t15.detection[r].size(); ++j) {
      const double d = t15.detection[r][j];
      if (t15.channels[r].bits[j]) {
        worst_one = std::min(worst_one, d);
      } else {
        worst_zero = std::max(worst_zero, d);
      }
    }
  }
  detail("n=15: lowest 1-bin %.4f (need >= 0.9), highest 0-bin %.2e (need <= 0.05)", worst_one, worst_zero);

  c.registers = {8};
  const auto t8 = experiments::run_trace(c);
  double max_zero8 = 0, min_one8 = 1;
  for (std::size_t r = 0; r < t8.channels.size(); ++r) {
    for (std::size_t j = 0; j < t8.detection[r].size(); ++j) {
      const double d = t8.detection[r][j];
      if (t8.channels[r].bits[j]) {
        min_one8 = std::min(min_one8, d);
      } else {
        max_zero8 = std::max(max_zero8, d);
      }
    }
  }
  detail("n=8: highest 0-bin %.3f (crosstalk visible if > 0.05), lowest 1-bin %.3f", max_zero8, min_one8);
  const bool ok = worst_one >= 0.9 && worst_zero <= 0.05 && max_zero8 > 0.05;
  verdict(6, "trace-level checks", ok, ok ? "n=15 clean, n=8 distorted" : "thresholds missed", timer.seconds());
}

// ---------------------------------------------------------------------------

void ideal_bound(const MetricsReport& loss) {
  Timer timer;
  std::vector<experiments::BoundRow> rows;
  for (const auto& row : experiments::ideal_bound_comparison(loss)) {
    if (row.users == 5) rows.push_back(row);
  }
  bool ok = rows.size() >= 2;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    detail("S=%-5zu N=5 measured %.4f bound (2N-2)/S %.5f ratio %.1f", rows[i].chips, rows[i].measured,
           rows[i].ideal_bound, rows[i].measured / rows[i].ideal_bound);
    if (i > 0) ok = ok && rows[i].measured < rows[i - 1].measured && rows[i].ideal_bound < rows[i - 1].ideal_bound;
  }
  verdict(7, "ideal-bound trend", ok, ok ? "measured loss and bound both fall with S" : "trend broken",
          timer.seconds());
}

// ---------------------------------------------------------------------------

void determinism() {
  Timer timer;
  std::vector<ScenarioConfig> configs;
  auto add = [&](ExperimentKind kind, std::vector<unsigned> ns, std::vector<std::size_t> users, std::size_t trials) {
    ScenarioConfig c = ScenarioConfig::defaults(kind);
    c.registers = std::move(ns);
    c.users = std::move(users);
    c.trials = trials;
    configs.push_back(c);
  };
  add(ExperimentKind::loss, {8, 10}, {5, 20}, 50);
  add(ExperimentKind::crosstalk, {8}, {5, 20}, 16);
  add(ExperimentKind::fidelity, {10}, {5}, 16);
  bool ok = true;
  for (const auto& c : configs) {
    const auto a = experiments::run_report(c, {1});
    const auto b = experiments::run_report(c, {0});
    const bool same = report_io::report_csv(a) == report_io::report_csv(b) &&
                      report_io::report_json(a) == report_io::report_json(b);
    detail("%s: CSV and JSON %s across 1 and all threads", std::string(experiments::kind_name(c.kind)).c_str(),
           same ? "identical" : "DIFFER");
    ok = ok && same;
  }
  ScenarioConfig t = ScenarioConfig::defaults(ExperimentKind::trace);
  t.registers = {8};
  const auto ta = experiments::run_trace(t, {1}), tb = experiments::run_trace(t, {0});
  bool same = report_io::bits_csv(ta) == report_io::bits_csv(tb);
  for (std::size_t r = 0; r < ta.densities.size(); ++r) {
    same = same && report_io::trace_csv(ta, r, 0) == report_io::trace_csv(tb, r, 0);
  }
  detail("trace: series and bit files %s", same ? "identical" : "DIFFER");
  ok = ok && same;
  verdict(8, "determinism", ok, ok ? "byte-identical outputs for a repeated seed" : "outputs differ", timer.seconds());
}

}  // namespace

int main() {
  const bool n14 = env_flag("QSSMA_ACCEPT_N14");
  const bool full_scale = env_flag("QSSMA_FULL_SCALE");
  std::printf("qssma %s acceptance (n=14 column %s, %s trial counts)\n", QSSMA_VERSION, n14 ? "on" : "off",
              full_scale ? "long" : "default");
  exact_invariants();
  code_properties();
  const auto loss = table_run(3, "loss grid", ExperimentKind::loss, kLoss, n14, full_scale);
  table_run(4, "crosstalk grid", ExperimentKind::crosstalk, kCrosstalk, n14, full_scale);
  fidelity_table(full_scale);
  trace_checks();
  ideal_bound(loss);
  determinism();
  std::printf("%d of 8 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
