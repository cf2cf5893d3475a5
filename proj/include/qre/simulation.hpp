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
#include <iosfwd>
#include <span>
#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"
#include "qre/rationalization.hpp"

namespace qre {

// Draws agents from each population, lets every agent best-respond to the
// round's belief under its own payoff shock, and tallies the observed action
// frequencies.

struct SimulationConfig {
  std::int64_t agents_per_round = 10'000;
  int rounds = 1;
  std::uint64_t seed = 1;

  enum class BeliefMode {
    kFixed,         // every round uses fixed_belief
    kEmpiricalLag,  // round n uses round n-1's empirical frequencies
  };
  BeliefMode belief_mode = BeliefMode::kFixed;
  MixedProfile fixed_belief;  // required for kFixed; kEmpiricalLag starts
                              // from the uniform profile
  bool parallel = true;
  // Budget for the analytic reference frequencies when they need sampling.
  std::uint64_t analytic_samples = 200'000;
};

struct SimulationTrace {
  std::int64_t agents_per_round = 0;
  std::vector<MixedProfile> beliefs;     // belief used in each round
  // counts[round][player][action]; every row sums to agents_per_round.
  std::vector<std::vector<std::vector<std::int64_t>>> counts;
  std::vector<MixedProfile> empirical;   // per-round frequencies
  std::vector<MixedProfile> cumulative;  // frequencies over rounds 0..n
  std::vector<MixedProfile> analytic;    // quantal response at the belief
};

// argmax_a of expected payoff + theta[a]; exact ties resolve to the earliest
// action in declaration order.
int best_response(const StaticGame& game, int i, std::span<const double> theta,
                  const MixedProfile& belief);

// Deterministic given the seed: agents are drawn from per-(round, player)
// substreams chunked as in the Monte Carlo kernels, so traces are identical
// for any thread count.
SimulationTrace simulate(const StaticGame& game,
                         const std::vector<TypeDistribution>& dists,
                         const SimulationConfig& config);

// Tests every round's cumulative frequencies against the limit bounds of a
// procedure trace. The tolerance widens with sampling noise:
// max(1e-9, 4 sqrt(0.25 / agents seen)).
struct RoundCheck {
  bool pass = true;
  std::vector<PlayerVerdict> players;
};
struct ObservedReport {
  std::vector<RoundCheck> rounds;
  bool all_pass = true;
  double tolerance = 0.0;  // tolerance applied at the final round
};
ObservedReport test_observed(const StaticGame& game,
                             const SimulationTrace& trace,
                             const ProcedureTrace& bounds);

// CSV export: round,player,action,frequency,analytic_frequency,deviation.
void write_simulation_csv(std::ostream& os, const StaticGame& game,
                          const SimulationTrace& trace);

}  // namespace qre
