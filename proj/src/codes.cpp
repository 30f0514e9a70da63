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

#include "qssma/codes.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cstdlib>
#include <string>

#include "qssma/error.hpp"

namespace qssma::codes {

namespace {

// Exponents of primitive trinomials/pentanomials, one per register count.
// None is trusted: lfsr_sequence() rejects any entry whose period is short and
// the unit tests run that check over the whole table.
const std::array<std::vector<unsigned>, kMaxRegisters + 1> kTapTable = {{
    {},
    {},
    {2, 1},
    {3, 2},
    {4, 3},
    {5, 3},
    {6, 5},
    {7, 6},
    {8, 6, 5, 4},
    {9, 5},
    {10, 7},
    {11, 9},
    {12, 6, 4, 1},
    {13, 4, 3, 1},
    {14, 5, 3, 1},
    {15, 14},
    {16, 15, 13, 4},
    {17, 14},
    {18, 11},
    {19, 6, 2, 1},
    {20, 17},
}};

std::uint32_t feedback_mask(const LfsrSpec& spec) {
  std::uint32_t mask = 1u;  // constant term: register 0
  for (unsigned e : spec.taps) {
    if (e > 0 && e < spec.registers) mask |= std::uint32_t{1} << e;
  }
  return mask;
}

void validate_shape(const LfsrSpec& spec) {
  require(spec.registers >= kMinRegisters && spec.registers <= kMaxRegisters,
          "LFSR: register count " + std::to_string(spec.registers) + " outside [2, 20]");
  require(std::find(spec.taps.begin(), spec.taps.end(), spec.registers) != spec.taps.end(),
          "LFSR: taps must include the leading exponent n");
  for (unsigned e : spec.taps) {
    require(e >= 1 && e <= spec.registers, "LFSR: tap exponent " + std::to_string(e) + " outside [1, n]");
  }
  require((spec.seed & spec.state_mask()) != 0, "LFSR: seed must not be all zeros");
  require((spec.seed & ~spec.state_mask()) == 0, "LFSR: seed has bits beyond the register length");
}

// State holds a_t .. a_{t+n-1} in bits 0..n-1; a_{t+n} = XOR of the masked bits.
inline std::uint32_t step(std::uint32_t state, std::uint32_t mask, unsigned n) {
  const std::uint32_t next = std::popcount(state & mask) & 1u;
  return (state >> 1) | (next << (n - 1));
}

}  // namespace

LfsrSpec builtin_lfsr(unsigned registers) {
  if (!is_supported(registers)) {
    std::string list;
    for (unsigned n : supported_registers()) list += (list.empty() ? "" : ",") + std::to_string(n);
    fail(ErrorCategory::unsupported,
         "no built-in taps for n=" + std::to_string(registers) + " (supported: " + list + ")");
  }
  LfsrSpec spec;
  spec.registers = registers;
  spec.taps = kTapTable[registers];
  spec.seed = spec.state_mask();
  return spec;
}

std::vector<unsigned> supported_registers() {
  std::vector<unsigned> out;
  for (unsigned n = kMinRegisters; n <= kMaxRegisters; ++n) out.push_back(n);
  return out;
}

bool is_supported(unsigned registers) noexcept {
  return registers >= kMinRegisters && registers <= kMaxRegisters && !kTapTable[registers].empty();
}

std::uint64_t lfsr_period(const LfsrSpec& spec) {
  validate_shape(spec);
  const std::uint32_t mask = feedback_mask(spec);
  const std::uint64_t limit = std::uint64_t{1} << spec.registers;
  std::uint32_t state = spec.seed;
  for (std::uint64_t t = 1; t <= limit; ++t) {
    state = step(state, mask, spec.registers);
    if (state == spec.seed) return t;
  }
  // Unreachable for an invertible feedback map; kept for malformed input.
  return 0;
}

std::vector<std::uint8_t> lfsr_sequence(const LfsrSpec& spec) {
  const std::uint64_t expected = (std::uint64_t{1} << spec.registers) - 1;
  const std::uint64_t period = lfsr_period(spec);
  require(period == expected, "LFSR: taps are not maximal for n=" + std::to_string(spec.registers) +
                                  " (period " + std::to_string(period) + ", expected " +
                                  std::to_string(expected) + ")");
  const std::uint32_t mask = feedback_mask(spec);
  std::vector<std::uint8_t> bits(expected);
  std::uint32_t state = spec.seed;
  for (auto& b : bits) {
    b = static_cast<std::uint8_t>(state & 1u);
    state = step(state, mask, spec.registers);
  }
  return bits;
}

SpreadingCode::SpreadingCode(std::vector<std::int8_t> chips, std::size_t family_shift)
    : chips_(std::move(chips)), family_shift_(family_shift) {
  require(!chips_.empty(), "SpreadingCode: empty chip sequence");
  for (auto c : chips_) require(c == 1 || c == -1, "SpreadingCode: chips must be +1 or -1");
}

SpreadingCode SpreadingCode::negated() const {
  std::vector<std::int8_t> out(chips_.begin(), chips_.end());
  for (auto& c : out) c = static_cast<std::int8_t>(-c);
  return SpreadingCode(std::move(out), family_shift_);
}

SpreadingCode msequence_code(const LfsrSpec& spec) {
  const auto bits = lfsr_sequence(spec);
  std::vector<std::int8_t> chips(bits.size());
  std::transform(bits.begin(), bits.end(), chips.begin(),
                 [](std::uint8_t b) { return static_cast<std::int8_t>(1 - 2 * b); });
  return SpreadingCode(std::move(chips), 0);
}

SpreadingCode shift_code(const SpreadingCode& code, std::size_t i) {
  const std::size_t s = code.size();
  const std::size_t r = i % s;
  std::vector<std::int8_t> out(s);
  for (std::size_t k = 0; k < s; ++k) out[k] = code[(k + r) % s];
  return SpreadingCode(std::move(out), (code.family_shift() + r) % s);
}

long code_inner(const SpreadingCode& a, const SpreadingCode& b) {
  require(a.size() == b.size(), "code_inner: codes have different lengths");
  long sum = 0;
  for (std::size_t k = 0; k < a.size(); ++k) sum += a[k] * b[k];
  return sum;
}

long cyclic_autocorrelation(const SpreadingCode& code, std::size_t lag) {
  return code_inner(code, shift_code(code, lag));
}

std::vector<SpreadingCode> user_codes(unsigned registers, std::size_t count) {
  const SpreadingCode base = msequence_code(builtin_lfsr(registers));
  require(count <= base.size(), "user_codes: " + std::to_string(count) + " users exceed the " +
                                    std::to_string(base.size()) + " distinct shifts for n=" +
                                    std::to_string(registers));
  std::vector<SpreadingCode> out;
  out.reserve(count);
  for (std::size_t i = 1; i <= count; ++i) out.push_back(shift_code(base, i));
  return out;
}

long max_cross_inner(std::span<const SpreadingCode> family) {
  long worst = 0;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      worst = std::max(worst, std::labs(code_inner(family[i], family[j])));
    }
  }
  return worst;
}

}  // namespace qssma::codes
