// Copyright 2026 The docrerank Authors.
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

#ifndef DOCRERANK_RNG_H_
#define DOCRERANK_RNG_H_

#include <cstdint>
#include <string_view>

namespace docrerank {

// Portable pseudo-random source. Every draw in the toolkit goes through this
// type so that seeded runs produce identical bytes on every platform (the
// std:: distributions are implementation-defined).
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t seed) : state_(seed) {}

  uint64_t Next();

  // Uniform in [0, 1) with 53 bits of precision.
  double NextDouble();

  // Uniform integer in [0, bound). bound must be >= 1. Rejection sampling,
  // so there is no modulo bias.
  uint64_t UniformIndex(uint64_t bound);

  // Standard normal draw (Box-Muller, one value per call).
  double NextNormal();

 private:
  uint64_t state_;
};

// 64-bit FNV-1a over the bytes of `text`.
uint64_t HashString(std::string_view text);

// Finalizer used to mix several seed components.
uint64_t Mix64(uint64_t x);

inline uint64_t CombineSeed(uint64_t seed, uint64_t component) {
  return Mix64(seed ^ (component + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2)));
}

inline uint64_t CombineSeed(uint64_t seed, std::string_view component) {
  return CombineSeed(seed, HashString(component));
}

template <typename First, typename... Rest>
uint64_t DeriveSeed(uint64_t seed, const First& first, const Rest&... rest) {
  uint64_t out = CombineSeed(seed, first);
  if constexpr (sizeof...(rest) > 0) {
    return DeriveSeed(out, rest...);
  } else {
    return out;
  }
}

}  // namespace docrerank

#endif  // DOCRERANK_RNG_H_
