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
#include "qssma/fft.hpp"
#include "qssma/signal.hpp"

using namespace qssma;
using namespace qssma::signal;

namespace {

SampledEnvelope random_envelope(const TimeGrid& g, std::uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::normal_distribution<double> nd;
  ComplexVector v(g.size());
  for (auto& x : v) x = {nd(eng), nd(eng)};
  return SampledEnvelope(g, std::move(v));
}

}  // namespace

TEST_SUITE("fft") {

TEST_CASE("matches the naive DFT") {
  const TimeGrid g(1.0, 7, 1, 4, 1);  // L = 84, not a power of two
  const auto x = random_envelope(g, 3);
  const auto X = to_frequency(x);
  const auto ref = oracle::naive_dft({x.samples().begin(), x.samples().end()}, false);
  double err = 0;
  for (std::size_t k = 0; k < ref.size(); ++k) err = std::max(err, std::abs(X.bins()[k] - ref[k]));
  CHECK(err < 1e-12);

  const auto back = oracle::naive_dft({X.bins().begin(), X.bins().end()}, true);
  err = 0;
  for (std::size_t k = 0; k < back.size(); ++k) err = std::max(err, std::abs(back[k] - x.samples()[k]));
  CHECK(err < 1e-12);
}

TEST_CASE("roundtrip and Parseval, property over random inputs") {
  for (unsigned n : {2u, 5u, 8u, 10u}) {
    const TimeGrid g(1.0, (1u << n) - 1, 2);
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
      const auto x = random_envelope(g, seed * 31 + n);
      const auto X = to_frequency(x);
      CHECK(norm_sq(X) == doctest::Approx(norm_sq(x)).epsilon(1e-12));
      const auto y = to_time(X);
      double err = 0, scale = 0;
      for (std::size_t k = 0; k < x.size(); ++k) {
        err = std::max(err, std::abs(y.samples()[k] - x.samples()[k]));
        scale = std::max(scale, std::abs(x.samples()[k]));
      }
      CHECK(err <= 1e-12 * scale);
    }
  }
}

TEST_CASE("Gaussian packet spectrum has the analytic width") {
  // |psi_hat|^2 is normal with std 1 / (4 pi sigma_t).
  const TimeGrid g(1.0, 255, 1);
  const auto X = to_frequency(gaussian_packet(g, PacketSpec::standard(0, 1.0)));
  double m2 = 0, total = 0;
  for (std::size_t k = 0; k < g.size(); ++k) {
    const double f = g.frequency_at(k);
    const double p = std::norm(X.bins()[k]);
    m2 += f * f * p;
    total += p;
  }
  const double expected = 1.0 / (4.0 * std::numbers::pi * 0.1);
  CHECK(std::sqrt(m2 / total) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("in-place transforms agree with the envelope API") {
  const TimeGrid g(1.0, 31, 1);
  const auto x = random_envelope(g, 9);
  ComplexVector buf(x.samples().begin(), x.samples().end());
  signal::fft::forward(buf);
  const auto X = to_frequency(x);
  for (std::size_t k = 0; k < buf.size(); ++k) CHECK(buf[k] == X.bins()[k]);
  signal::fft::inverse(buf);
  for (std::size_t k = 0; k < buf.size(); ++k) CHECK(std::abs(buf[k] - x.samples()[k]) < 1e-12);
}

TEST_CASE("transforms are deterministic") {
  const TimeGrid g(1.0, 1023, 1);
  const auto x = random_envelope(g, 1);
  const auto a = to_frequency(x), b = to_frequency(x);
  for (std::size_t k = 0; k < g.size(); ++k) REQUIRE(a.bins()[k] == b.bins()[k]);
}

}  // TEST_SUITE
