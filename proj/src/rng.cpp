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

#include "qssma/rng.hpp"

#include <limits>

#include "qssma/error.hpp"

namespace qssma::rng {

std::uint64_t splitmix64(std::uint64_t x) noexcept {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t fnv1a(std::span<const unsigned char> bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char b : bytes) {
    h ^= b;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t fnv1a(std::string_view text) noexcept {
  return fnv1a(std::span(reinterpret_cast<const unsigned char*>(text.data()), text.size()));
}

Stream::Stream(std::uint64_t seed, std::uint64_t tag, std::uint64_t index)
    : engine_(splitmix64(splitmix64(seed) ^ splitmix64(tag + 0x632be59bd9b4e019ULL)) ^ splitmix64(~index)) {}

std::size_t Stream::uniform_index(std::size_t n) {
  require(n > 0, "uniform_index: empty range");
  const std::uint64_t range = n;
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % range;
  std::uint64_t x = next();
  while (x >= limit) x = next();
  return static_cast<std::size_t>(x % range);
}

double Stream::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

}  // namespace qssma::rng
