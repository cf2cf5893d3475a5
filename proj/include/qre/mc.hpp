// Copyright 2026 The qre-bounds Authors
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

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qre/distribution.hpp"

namespace qre::mc {

// Sampling work is split into fixed-size chunks; chunk c draws from the RNG
// substream mix_seed(seed, c). Tallies are integers, so the serial and
// OpenMP drivers produce bit-identical results for every thread count.
inline constexpr std::int64_t kChunkSamples = 1 << 14;

struct Tally {
  std::vector<std::int64_t> counts;
  std::int64_t total = 0;
};

// counts[a] = number of draws theta with a == argmax_b (bias[b] + theta[b]),
// ties resolved toward the smaller index. `bias` is typically a vector of
// expected payoffs, so this is the empirical best-response tally.
Tally tally_argmax(const TypeDistribution& dist, std::span<const double> bias,
                   std::int64_t n, std::uint64_t seed, bool parallel = true);

// Straight-line reference implementation of the same estimator; kept for
// testing and benchmarking against the OpenMP path.
Tally tally_argmax_serial(const TypeDistribution& dist,
                          std::span<const double> bias, std::int64_t n,
                          std::uint64_t seed);

// Number of draws inside the forced region of `spec`.
std::int64_t region_hits(const TypeDistribution& dist,
                         const ForcedRegionSpec& spec, std::int64_t n,
                         std::uint64_t seed, bool parallel = true);

std::int64_t region_hits_serial(const TypeDistribution& dist,
                                const ForcedRegionSpec& spec, std::int64_t n,
                                std::uint64_t seed);

}  // namespace qre::mc
