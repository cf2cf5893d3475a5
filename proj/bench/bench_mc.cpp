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

// Times the OpenMP sampling kernels against their serial reference
// implementations and checks that both produce identical tallies.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"
#include "qre/mc.hpp"
#include "qre/parallel.hpp"
#include "qre/simulation.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(const char* name, double serial_s, double parallel_s, bool equal) {
  std::printf("%-24s serial %8.3f s   parallel %8.3f s   speedup %.2fx   %s\n",
              name, serial_s, parallel_s, serial_s / parallel_s,
              equal ? "identical" : "MISMATCH");
}

}  // namespace

int main() {
  const std::int64_t n = 4'000'000;
  std::printf("threads available: %d\n", qre::max_threads());

  {
    const auto dist = qre::TypeDistribution::extreme_value(0.7);
    const std::vector<double> bias = {0.3, -0.1, 0.6};
    auto t0 = Clock::now();
    const auto serial = qre::mc::tally_argmax_serial(dist, bias, n, 9);
    const double serial_s = seconds_since(t0);
    t0 = Clock::now();
    const auto parallel = qre::mc::tally_argmax(dist, bias, n, 9);
    report("tally_argmax", serial_s, seconds_since(t0),
           serial.counts == parallel.counts);
  }

  {
    const auto dist = qre::TypeDistribution::uniform_box(-2.0, 2.0);
    qre::ForcedRegionSpec spec;
    spec.base_action = 0;
    spec.thresholds = {0.0, 0.4, -0.3, 1.1};
    auto t0 = Clock::now();
    const auto serial = qre::mc::region_hits_serial(dist, spec, n, 11);
    const double serial_s = seconds_since(t0);
    t0 = Clock::now();
    const auto parallel = qre::mc::region_hits(dist, spec, n, 11);
    report("region_hits", serial_s, seconds_since(t0), serial == parallel);
  }

  {
    qre::StaticGame game;
    game.players = {"1", "2"};
    game.actions = {{"H", "T"}, {"H", "T"}};
    game.payoffs = {{1, 0, 0, 1}, {0, 1, 1, 0}};
    const std::vector<qre::TypeDistribution> dists = {
        qre::TypeDistribution::uniform_box(-2.0, 2.0),
        qre::TypeDistribution::uniform_box(-2.0, 2.0)};
    qre::SimulationConfig config;
    config.agents_per_round = 400'000;
    config.rounds = 10;
    config.seed = 5;
    config.belief_mode = qre::SimulationConfig::BeliefMode::kEmpiricalLag;

    config.parallel = false;
    auto t0 = Clock::now();
    const auto serial = qre::simulate(game, dists, config);
    const double serial_s = seconds_since(t0);
    config.parallel = true;
    t0 = Clock::now();
    const auto parallel = qre::simulate(game, dists, config);
    report("simulate (10 rounds)", serial_s, seconds_since(t0),
           serial.counts == parallel.counts);
  }
  return 0;
}
