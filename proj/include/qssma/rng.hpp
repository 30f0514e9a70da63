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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string_view>

namespace qssma::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// FNV-1a over bytes; used for stream tags and config hashes.
std::uint64_t fnv1a(std::span<const unsigned char> bytes) noexcept;
std::uint64_t fnv1a(std::string_view text) noexcept;

// A std::mt19937_64 keyed by (seed, stream tag, index). Each Monte Carlo trial
// owns one, so trials can run in any order or concurrently and still draw the
// same numbers. Mappings to integers and reals are written out here rather than
// taken from <random> distributions, whose output is implementation-defined.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index);

  std::uint64_t next() { return engine_(); }
  // Uniform on [0, n), unbiased.
  std::size_t uniform_index(std::size_t n);
  // Uniform on [0, 1) with 53 random bits.
  double uniform01();
  bool coin() { return (next() >> 63) != 0; }

  template <typename T>
  void shuffle(std::span<T> items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      std::swap(items[i - 1], items[uniform_index(i)]);
    }
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace qssma::rng
