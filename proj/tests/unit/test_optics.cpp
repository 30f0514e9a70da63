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

#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "oracle.hpp"
#include "qssma/codes.hpp"
#include "qssma/error.hpp"
#include "qssma/fft.hpp"
#include "qssma/metrics.hpp"
#include "qssma/optics.hpp"

using namespace qssma;
using namespace qssma::optics;
using signal::gaussian_packet;
using signal::norm_sq;
using signal::PacketSpec;
using signal::SampledEnvelope;
using signal::TimeGrid;

namespace {

TimeGrid grid_for(unsigned n, std::size_t bins = 1, std::size_t q = 4) {
  return TimeGrid(1.0, (std::size_t{1} << n) - 1, bins, q);
}

ModulatorSpec mod_spec(unsigned n, std::size_t shift, double tau = 0.0,
                       PhaseConvention conv = PhaseConvention::zero_pi) {
  return {codes::user_codes(n, shift).back(), 1.0, tau, conv};
}

SampledEnvelope random_envelope(const TimeGrid& g, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> nd;
  ComplexVector v(g.size());
  for (auto& x : v) x = {nd(eng), nd(eng)};
  return SampledEnvelope(g, std::move(v));
}

double max_abs_diff(const SampledEnvelope& a, const SampledEnvelope& b) {
  double e = 0;
  for (std::size_t k = 0; k < a.size(); ++k) e = std::max(e, std::abs(a.samples()[k] - b.samples()[k]));
  return e;
}

const double kPacketSpectralStd = 1.0 / (4.0 * std::numbers::pi * 0.1);

}  // namespace

TEST_SUITE("optics") {

TEST_CASE("grating amplitudes") {
  const FbgSpec s = FbgSpec::standard(1.0);
  CHECK(s.sigma_filt == doctest::Approx(8.0));
  CHECK(fbg_reflect_amplitude(s, 0.0) == 1.0);
  CHECK(fbg_transmit_amplitude(s, 0.0) == 0.0);
  CHECK(fbg_reflect_amplitude(s, 8.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  FbgSpec off = s;
  off.center_offset = 3.0;
  CHECK(fbg_reflect_amplitude(off, 3.0) == 1.0);
  CHECK(fbg_reflect_amplitude(off, 11.0) == doctest::Approx(std::exp(-0.5)).epsilon(1e-15));
  const FbgSpec ap = FbgSpec::all_pass();
  CHECK(fbg_reflect_amplitude(ap, 0.0) == 0.0);
  CHECK(fbg_transmit_amplitude(ap, 0.0) == 1.0);
}

TEST_CASE("property: R^2 + T^2 = 1 at any frequency") {
  std::mt19937_64 eng(5);
  std::uniform_real_distribution<double> f(-200.0, 200.0), w(0.5, 40.0);
  for (int i = 0; i < 2000; ++i) {
    const FbgSpec s{w(eng), f(eng) * 0.1, false};
    const double x = f(eng);
    const double r = fbg_reflect_amplitude(s, x), t = fbg_transmit_amplitude(s, x);
    REQUIRE(r * r + t * t == doctest::Approx(1.0).epsilon(1e-15));
    REQUIRE(r >= 0.0);
    REQUIRE(t >= 0.0);
  }
}

TEST_CASE("property: grating splits energy without loss") {
  for (unsigned n : {3u, 7u, 10u}) {
    const auto g = grid_for(n, 2);
    const Grating fbg(g, FbgSpec::standard(1.0));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto x = random_envelope(g, seed + 100 * n);
      const double total = norm_sq(fbg.reflect(x)) + norm_sq(fbg.transmit(x));
      CHECK(total == doctest::Approx(norm_sq(x)).epsilon(1e-12));
    }
  }
}

TEST_CASE("split agrees with separate reflect and transmit") {
  const auto g = grid_for(6, 2);
  const Grating fbg(g, FbgSpec::standard(1.0));
  const auto x = random_envelope(g, 4);
  ComplexVector r, t;
  fbg.split(ComplexVector(x.samples().begin(), x.samples().end()), r, t);
  const auto r2 = fbg.reflect(x), t2 = fbg.transmit(x);
  for (std::size_t k = 0; k < x.size(); ++k) {
    REQUIRE(r[k] == r2.samples()[k]);
    REQUIRE(t[k] == t2.samples()[k]);
  }
}

TEST_CASE("all-pass grating") {
  const auto g = grid_for(5, 1);
  const Grating fbg(g, FbgSpec::all_pass());
  const auto x = random_envelope(g, 1);
  CHECK(norm_sq(fbg.reflect(x)) == 0.0);
  CHECK(max_abs_diff(fbg.transmit(x), x) < 1e-13);
}

TEST_CASE("unspread packet is reflected almost entirely") {
  const double expected = 0.990249828601;  // quadrature of |psi_hat|^2 R^2
  const double quad = oracle::simpson(
      [](double f) { return oracle::packet_power_spectrum(f, 0.1) * std::exp(-f * f / 64.0); }, -11.0, 11.0, 4000);
  CHECK(quad == doctest::Approx(expected).epsilon(1e-10));
  const auto g = grid_for(8, 1);
  const auto p = gaussian_packet(g, PacketSpec::standard(0, 1.0));
  const double r = norm_sq(fbg_reflect(p, FbgSpec::standard(1.0)));
  CHECK(r >= 0.98);
  CHECK(r == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("spread packet is mostly transmitted") {
  const auto g = grid_for(10, 1);
  const auto spread = modulate(gaussian_packet(g, PacketSpec::standard(0, 1.0)), mod_spec(10, 1));
  const double S = 1023.0;
  const double r = norm_sq(fbg_reflect(spread, FbgSpec::standard(1.0)));
  const double t = norm_sq(fbg_transmit(spread, FbgSpec::standard(1.0)));
  CHECK(r > 1.0 / S);
  CHECK(r < 40.0 / S);
  CHECK(r + t == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("modulator waveform follows the code") {
  const auto g = grid_for(4, 2);
  const auto spec = mod_spec(4, 3);
  const Modulator m(g, spec);
  CHECK(m.bin_waveform().size() == g.samples_per_bin());
  for (std::size_t k = 0; k < 15; ++k) {
    CHECK(m.waveform_at((k + 0.5) / 15.0) == spec.code[k]);
    for (std::size_t j = 0; j < 4; ++j) CHECK(m.bin_waveform()[k * 4 + j] == spec.code[k]);
  }
}

TEST_CASE("property: abrupt modulator is norm preserving and self-inverse") {
  for (unsigned n : {2u, 5u, 9u}) {
    const auto g = grid_for(n, 3);
    const Modulator m(g, mod_spec(n, 1));
    for (std::uint64_t seed = 0; seed < 3; ++seed) {
      const auto x = random_envelope(g, seed);
      const auto y = m.apply(x);
      CHECK(norm_sq(y) == doctest::Approx(norm_sq(x)).epsilon(1e-12));
      const auto z = m.apply(y);
      for (std::size_t k = 0; k < x.size(); ++k) REQUIRE(z.samples()[k] == x.samples()[k]);
    }
  }
}

TEST_CASE("+-pi/2 convention differs by a global factor i") {
  const auto g = grid_for(5, 1);
  const auto x = random_envelope(g, 2);
  const auto a = modulate(x, mod_spec(5, 2));
  const auto b = modulate(x, mod_spec(5, 2, 0.0, PhaseConvention::plus_minus_half));
  for (std::size_t k = 0; k < x.size(); ++k) REQUIRE(std::abs(b.samples()[k] - Complex(0, 1) * a.samples()[k]) < 1e-15);
  // Twice through gives -x: a global phase, invisible to every metric.
  const auto bb = modulate(b, mod_spec(5, 2, 0.0, PhaseConvention::plus_minus_half));
  CHECK(max_abs_diff(bb, Complex(-1.0) * x) < 1e-15);
}

TEST_CASE("finite transition time") {
  const auto g = grid_for(4, 1, 32);
  const double chip = 1.0 / 15.0;
  const auto spec = mod_spec(4, 1, 0.4 * chip);
  const Modulator m(g, spec);
  for (double w : m.bin_waveform()) CHECK(std::abs(w) <= 1.0);
  for (std::size_t k = 0; k < 15; ++k) CHECK(m.waveform_at((k + 0.5) * chip) == doctest::Approx(spec.code[k]));
  // Continuous across chip boundaries: steps between samples are bounded.
  double worst = 0;
  for (std::size_t i = 1; i < m.bin_waveform().size(); ++i) {
    worst = std::max(worst, std::abs(m.bin_waveform()[i] - m.bin_waveform()[i - 1]));
  }
  CHECK(worst < 1.0);
  CHECK_THROWS_AS(Modulator(g, mod_spec(4, 1, chip)), Error);
  CHECK_THROWS_AS(Modulator(g, mod_spec(4, 1, -0.1 * chip)), Error);
  CHECK_THROWS_AS(Modulator(grid_for(5, 1), mod_spec(4, 1)), Error);
}

TEST_CASE("spreading moves spectral energy out of the packet band") {
  const auto g = grid_for(10, 1);
  const auto p = gaussian_packet(g, PacketSpec::standard(0, 1.0));
  const double band = 3.0 * kPacketSpectralStd;
  const double before = band_energy_fraction(p, 0.0, band);
  CHECK(before >= 0.99);
  CHECK(oracle::packet_band_fraction(0.1, band) == doctest::Approx(0.997300203937).epsilon(1e-10));
  // On the grid's own frequency samples the analytic spectrum gives a Riemann sum.
  double riemann = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    if (std::abs(g.frequency_at(k)) <= band) riemann += oracle::packet_power_spectrum(g.frequency_at(k), 0.1);
  }
  CHECK(before == doctest::Approx(riemann * g.frequency_step()).epsilon(1e-6));
  const double after = band_energy_fraction(modulate(p, mod_spec(10, 1)), 0.0, band);
  CHECK(after > 0.5 / 1023.0);
  CHECK(after < 20.0 / 1023.0);
}

TEST_CASE("composite paths equal their stepwise definitions") {
  const auto g = grid_for(6, 2);
  const auto mspec = mod_spec(6, 4);
  const auto fspec = FbgSpec::standard(1.0);
  const Modulator m(g, mspec);
  const Grating fbg(g, fspec);
  const auto x = random_envelope(g, 8);
  auto same = [](const SampledEnvelope& a, const SampledEnvelope& b) { return max_abs_diff(a, b) == 0.0; };
  CHECK(same(mux_old_path(x, m, fbg), m.apply(fbg.transmit(m.apply(x)))));
  CHECK(same(mux_new_path(x, m, fbg), m.apply(fbg.reflect(x))));
  CHECK(same(demux_drop_path(x, m, fbg), fbg.reflect(m.apply(x))));
  CHECK(same(demux_through_path(x, m, fbg), m.apply(fbg.transmit(m.apply(x)))));
  CHECK(same(mux_old_path(x, mspec, fspec), mux_old_path(x, m, fbg)));
  CHECK(same(demux_drop_path(x, mspec, fspec), demux_drop_path(x, m, fbg)));
}

TEST_CASE("passing photons lose little at a foreign node") {
  const auto g = grid_for(10, 1);
  const auto fspec = FbgSpec::standard(1.0);
  const auto photon = mux_new_path(gaussian_packet(g, PacketSpec::standard(0, 1.0)), mod_spec(10, 1), fspec);
  const double in = norm_sq(photon);
  CHECK(1.0 - norm_sq(mux_old_path(photon, mod_spec(10, 2), fspec)) / in <= 0.02);
  CHECK(1.0 - norm_sq(demux_through_path(photon, mod_spec(10, 3), fspec)) / in <= 0.02);
}

TEST_CASE("matched drop recovers the photon, a mismatched drop does not") {
  const auto g = grid_for(10, 1);
  const auto fspec = FbgSpec::standard(1.0);
  const auto photon = mux_new_path(gaussian_packet(g, PacketSpec::standard(0, 1.0)), mod_spec(10, 1), fspec);
  const double own = norm_sq(demux_drop_path(photon, mod_spec(10, 1), fspec));
  CHECK(own >= 0.95);
  const auto single = oracle::single_user(0.1, 8.0);
  CHECK(single.delivered == doctest::Approx(0.980779403919).epsilon(1e-10));
  CHECK(own == doctest::Approx(single.delivered).epsilon(1e-4));
  CHECK(norm_sq(demux_drop_path(photon, mod_spec(10, 7), fspec)) < 40.0 / 1023.0);
}

TEST_CASE("spread then despread through an all-pass node is the identity") {
  const auto g = grid_for(8, 2);
  const auto x = gaussian_packet(g, PacketSpec::standard(1, 1.0, 0.4));
  const auto spec = mod_spec(8, 5);
  const auto y = demux_drop_path(mux_old_path(x, spec, FbgSpec::all_pass()), spec, FbgSpec::all_pass());
  CHECK(norm_sq(y) == 0.0);  // the all-pass grating drops nothing
  const auto through = demux_through_path(modulate(x, spec), spec, FbgSpec::all_pass());
  CHECK(metrics::fidelity(x, modulate(through, spec), false) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(max_abs_diff(modulate(modulate(x, spec), spec), x) == 0.0);
}

TEST_CASE("zero in, zero out") {
  const auto g = grid_for(5, 1);
  const SampledEnvelope zero(g);
  const auto fspec = FbgSpec::standard(1.0);
  CHECK(norm_sq(mux_old_path(zero, mod_spec(5, 1), fspec)) == 0.0);
  CHECK(norm_sq(demux_drop_path(zero, mod_spec(5, 1), fspec)) == 0.0);
}

}  // TEST_SUITE
