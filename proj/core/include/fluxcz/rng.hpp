// Copyright 2026 The fluxcz Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FLUXCZ_RNG_HPP
#define FLUXCZ_RNG_HPP

#include <cstdint>
#include <random>

namespace fluxcz {

/// SplitMix64 step, used to derive independent per-task seeds from a base
/// seed and a task index so that results do not depend on scheduling.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

inline std::uint64_t task_seed(std::uint64_t base, std::uint64_t stream) {
  return splitmix64(base ^ splitmix64(stream + 1));
}

inline std::mt19937_64 make_rng(std::uint64_t seed) {
  return std::mt19937_64(seed);
}

/// Uniform double in [0, 1) from the high 53 bits. Spelled out rather than
/// using uniform_real_distribution so that sampled fixtures are pinned by
/// this code alone, not by the standard library implementation.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Bounded draw; the modulo bias at 64 bits is ~1e-18 and irrelevant here.
inline std::uint32_t uniform_below(std::mt19937_64& rng, std::uint32_t n) {
  return static_cast<std::uint32_t>(rng() % n);
}

inline std::uint64_t draw_binomial(std::mt19937_64& rng, std::uint64_t n, double p) {
  if (p <= 0.0) return 0;
  if (p >= 1.0) return n;
  std::uint64_t k = 0;
  for (std::uint64_t i = 0; i < n; ++i) {
    if (uniform01(rng) < p) ++k;
  }
  return k;
}

/// One standard normal via Box-Muller.
inline double draw_normal(std::mt19937_64& rng) {
  double a = 0.0;
  do {
    a = uniform01(rng);
  } while (a <= 0.0);
  const double b = uniform01(rng);
  return std::sqrt(-2.0 * std::log(a)) * std::cos(2.0 * 3.141592653589793 * b);
}

}  // namespace fluxcz

#endif  // FLUXCZ_RNG_HPP
