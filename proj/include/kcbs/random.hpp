// Copyright 2026 The kcbs-nv Authors
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

#ifndef KCBS_RANDOM_HPP
#define KCBS_RANDOM_HPP

#include <cstdint>
#include <random>

namespace kcbs {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer.
constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

/// Independent sub-seed for stream `stream` of a base seed. Every stochastic
/// stage draws from its own derived stream so results do not depend on the
/// order in which stages are evaluated.
constexpr std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
  return mix64(mix64(base) ^ mix64(stream + 0x632be59bd9b4e019ULL));
}

/// Stream tags for the stochastic stages.
enum class Stream : std::uint64_t {
  Ensemble = 1,
  Counts = 2,
  Drift = 3,
  Overlap = 16,
  Observable = 32,
  Repetition = 64,
};

constexpr std::uint64_t derive_seed(std::uint64_t base, Stream s, std::uint64_t index = 0) {
  return derive_seed(derive_seed(base, static_cast<std::uint64_t>(s)), index);
}

}  // namespace kcbs

#endif  // KCBS_RANDOM_HPP
