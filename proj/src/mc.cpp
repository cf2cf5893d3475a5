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

#include "qre/mc.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qre/parallel.hpp"
#include "qre/rng.hpp"

namespace qre::mc {
namespace {

std::int64_t chunk_count(std::int64_t n) {
  return (n + kChunkSamples - 1) / kChunkSamples;
}

std::int64_t chunk_length(std::int64_t n, std::int64_t c) {
  return std::min(kChunkSamples, n - c * kChunkSamples);
}

void tally_chunk(const TypeDistribution& dist, std::span<const double> bias,
                 std::int64_t count, Rng rng,
                 std::span<std::int64_t> counts) {
  const int n_actions = static_cast<int>(bias.size());
  std::vector<double> theta(n_actions);
  for (std::int64_t s = 0; s < count; ++s) {
    sample_type_into(dist, theta, rng);
    int best = 0;
    double best_value = bias[0] + theta[0];
    for (int a = 1; a < n_actions; ++a) {
      const double v = bias[a] + theta[a];
      if (v > best_value) {
        best_value = v;
        best = a;
      }
    }
    ++counts[best];
  }
}

std::int64_t region_chunk(const TypeDistribution& dist,
                          const ForcedRegionSpec& spec, std::int64_t count,
                          Rng rng) {
  const int n_actions = static_cast<int>(spec.thresholds.size());
  std::vector<double> theta(n_actions);
  std::int64_t hits = 0;
  for (std::int64_t s = 0; s < count; ++s) {
    sample_type_into(dist, theta, rng);
    bool inside = true;
    for (int a = 0; a < n_actions && inside; ++a) {
      if (a == spec.base_action) continue;
      inside = theta[spec.base_action] - theta[a] >= spec.thresholds[a];
    }
    if (inside) ++hits;
  }
  return hits;
}

void check_budget(std::int64_t n) {
  if (n <= 0) {
    throw std::invalid_argument("Monte Carlo sample budget must be positive");
  }
}

}  // namespace

Tally tally_argmax_serial(const TypeDistribution& dist,
                          std::span<const double> bias, std::int64_t n,
                          std::uint64_t seed) {
  check_budget(n);
  Tally tally;
  tally.counts.assign(bias.size(), 0);
  tally.total = n;
  const std::int64_t chunks = chunk_count(n);
  for (std::int64_t c = 0; c < chunks; ++c) {
    tally_chunk(dist, bias, chunk_length(n, c), Rng(mix_seed(seed, c)),
                tally.counts);
  }
  return tally;
}

Tally tally_argmax(const TypeDistribution& dist, std::span<const double> bias,
                   std::int64_t n, std::uint64_t seed, bool parallel) {
  check_budget(n);
  const int threads = parallel ? max_threads() : 1;
  const std::int64_t chunks = chunk_count(n);
  if (threads <= 1 || chunks < 2) return tally_argmax_serial(dist, bias, n, seed);

  Tally tally;
  tally.counts.assign(bias.size(), 0);
  tally.total = n;
  // Per-thread rows padded to cache-line stride; the tallies are written on
  // every sample and would otherwise share lines across threads.
  const std::size_t stride = ((bias.size() + 7) / 8) * 8;
  std::vector<std::int64_t> locals(static_cast<std::size_t>(threads) * stride,
                                   0);
#ifdef _OPENMP
#pragma omp parallel num_threads(threads)
  {
    const auto row = static_cast<std::size_t>(omp_get_thread_num()) * stride;
    const std::span<std::int64_t> local(&locals[row], bias.size());
#pragma omp for schedule(static)
    for (std::int64_t c = 0; c < chunks; ++c) {
      tally_chunk(dist, bias, chunk_length(n, c), Rng(mix_seed(seed, c)),
                  local);
    }
  }
#else
  tally_chunk(dist, bias, n, Rng(mix_seed(seed, 0)),
              std::span<std::int64_t>(locals.data(), bias.size()));
#endif
  for (int t = 0; t < threads; ++t) {
    for (std::size_t a = 0; a < tally.counts.size(); ++a) {
      tally.counts[a] += locals[static_cast<std::size_t>(t) * stride + a];
    }
  }
  return tally;
}

std::int64_t region_hits_serial(const TypeDistribution& dist,
                                const ForcedRegionSpec& spec, std::int64_t n,
                                std::uint64_t seed) {
  check_budget(n);
  std::int64_t hits = 0;
  const std::int64_t chunks = chunk_count(n);
  for (std::int64_t c = 0; c < chunks; ++c) {
    hits += region_chunk(dist, spec, chunk_length(n, c),
                         Rng(mix_seed(seed, c)));
  }
  return hits;
}

std::int64_t region_hits(const TypeDistribution& dist,
                         const ForcedRegionSpec& spec, std::int64_t n,
                         std::uint64_t seed, bool parallel) {
  check_budget(n);
  const int threads = parallel ? max_threads() : 1;
  const std::int64_t chunks = chunk_count(n);
  if (threads <= 1 || chunks < 2) return region_hits_serial(dist, spec, n, seed);

  std::int64_t hits = 0;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads) \
    reduction(+ : hits)
  for (std::int64_t c = 0; c < chunks; ++c) {
    hits += region_chunk(dist, spec, chunk_length(n, c),
                         Rng(mix_seed(seed, c)));
  }
#else
  hits = region_hits_serial(dist, spec, n, seed);
#endif
  return hits;
}

}  // namespace qre::mc
