// Copyright 2026 The lossy-gbs Authors.

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file rng.hpp
 * Counter-keyed random substreams: the stream for Monte Carlo sample k under
 * seed s depends only on (s, k), never on which worker draws it.
 */
#pragma once

#include <cstdint>
#include <limits>
#include <vector>

namespace lgbs {

/// SplitMix64 finalizer.
[[nodiscard]] constexpr std::uint64_t mix64(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31U);
}

/// SplitMix64 engine; satisfies UniformRandomBitGenerator.
class SplitMix64 {
  public:
    using result_type = std::uint64_t;

    explicit SplitMix64(std::uint64_t state) : state_(state) {}

    result_type operator()() {
        state_ += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30U)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27U)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31U);
    }

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  private:
    std::uint64_t state_;
};

[[nodiscard]] inline SplitMix64 substream(std::uint64_t seed, std::uint64_t index) {
    return SplitMix64(mix64(mix64(seed) ^ mix64(index ^ 0xd1b54a32d192ed03ULL)));
}

/// Seed for a derived job keyed by a sequence of integers (e.g. a pattern).
[[nodiscard]] inline std::uint64_t derive_seed(std::uint64_t seed,
                                               const std::vector<unsigned> &key) {
    std::uint64_t h = mix64(seed ^ 0x243f6a8885a308d3ULL);
    for (unsigned k : key) {
        h = mix64(h ^ static_cast<std::uint64_t>(k));
    }
    return mix64(h ^ key.size());
}

} // namespace lgbs
