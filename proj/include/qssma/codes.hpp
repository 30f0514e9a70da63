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

// Maximal-length LFSR sequences and the circular-shift code family handed
// out to users.

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace qssma::codes {

inline constexpr unsigned kMinRegisters = 2;
inline constexpr unsigned kMaxRegisters = 20;

// Fibonacci LFSR over the feedback polynomial x^n + sum_{e in taps, e<n} x^e + 1.
// `taps` lists the exponents of the non-constant terms and must contain n.
// `seed` packs the initial register contents, bit j = register j.
struct LfsrSpec {
  unsigned registers = 0;
  std::vector<unsigned> taps;
  std::uint32_t seed = 0;

  std::uint32_t state_mask() const noexcept { return (std::uint32_t{1} << registers) - 1u; }
};

// Built-in primitive taps for every supported register count.
LfsrSpec builtin_lfsr(unsigned registers);
std::vector<unsigned> supported_registers();
bool is_supported(unsigned registers) noexcept;

// Number of clock ticks until the register state first returns to the seed.
std::uint64_t lfsr_period(const LfsrSpec& spec);

// One full period (2^n - 1 bits) of output. Rejects zero seeds and taps whose
// period is not maximal.
std::vector<std::uint8_t> lfsr_sequence(const LfsrSpec& spec);

// +-1 chips of length S = 2^n - 1 and the circular shift that produced them.
class SpreadingCode {
 public:
  SpreadingCode(std::vector<std::int8_t> chips, std::size_t family_shift);

  std::span<const std::int8_t> chips() const noexcept { return chips_; }
  std::size_t size() const noexcept { return chips_.size(); }
  std::size_t family_shift() const noexcept { return family_shift_; }
  std::int8_t operator[](std::size_t k) const noexcept { return chips_[k]; }

  SpreadingCode negated() const;

  bool operator==(const SpreadingCode& other) const = default;

 private:
  std::vector<std::int8_t> chips_;
  std::size_t family_shift_;
};

// Bits mapped 0 -> +1, 1 -> -1.
SpreadingCode msequence_code(const LfsrSpec& spec);

// new[k] = old[(k + i) mod S]; the recorded shift accumulates mod S.
SpreadingCode shift_code(const SpreadingCode& code, std::size_t i);

long code_inner(const SpreadingCode& a, const SpreadingCode& b);
long cyclic_autocorrelation(const SpreadingCode& code, std::size_t lag);

// Codes for users 1..count: user i gets the base m-sequence shifted by i.
std::vector<SpreadingCode> user_codes(unsigned registers, std::size_t count);

// Largest |c_i . c_j| over distinct pairs of the family.
long max_cross_inner(std::span<const SpreadingCode> family);

}  // namespace qssma::codes
