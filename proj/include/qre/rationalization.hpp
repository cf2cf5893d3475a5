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
#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"

namespace qre {

// Per-(player, action) lower bounds on the probability that the action is
// played. Entries lie in [0, 1] and per player sum to at most 1.
struct BoundsVector {
  std::vector<std::vector<double>> q;
};

// Full run of the bound iteration. steps[0] is all zeros (no restriction);
// the steps are coordinatewise non-decreasing and limit == steps.back().
struct ProcedureTrace {
  std::vector<BoundsVector> steps;
  BoundsVector limit;
  bool converged = false;
  double sup_step = 0.0;
};

struct ProcedureOptions {
  double tol = 1e-9;
  int max_iter = 5'000;
  // Budget for distribution kinds whose forced-region mass needs Monte
  // Carlo. Each (player, action) pair keeps its own fixed substream across
  // steps, so the sampled bounds inherit the exact monotonicity of the
  // underlying regions (common random numbers).
  std::uint64_t mc_samples = 200'000;
  std::uint64_t seed = 1;
  bool parallel = true;
};

BoundsVector zero_bounds(const StaticGame& game);

// The largest expected payoff advantage of a_prime over a that any opponent
// belief consistent with `bounds` can generate:
//
//   max over feasible q_{-i} of sum_{a_{-i}} q_{-i}(a_{-i})
//       [u_i(a_prime, a_{-i}) - u_i(a, a_{-i})]
//
// where each opponent j's vector lies on the simplex with q_j >= bounds[j].
// Two players: a one-constraint linear program solved greedily (lower bounds
// first, leftover mass on the largest coefficient). Three or more players:
// the objective is multilinear over a product of truncated simplices, so the
// maximum sits at a vertex profile; vertices are enumerated.
double worst_case_threshold(const StaticGame& game, int i, int a, int a_prime,
                            const BoundsVector& bounds);

// One bound-improvement step: for every (i, a) the new bound is the mass of
// the region where a is favored over every rival at its worst-case threshold.
BoundsVector step_bounds(const StaticGame& game,
                         const std::vector<TypeDistribution>& dists,
                         const BoundsVector& bounds,
                         const ProcedureOptions& opts = {});

// Iterates step_bounds from zeros until the sup-norm step drops below tol or
// max_iter is hit (reported via `converged`). Throws std::logic_error if a
// step ever decreases a bound by more than 1e-12.
ProcedureTrace run_procedure(const StaticGame& game,
                             const std::vector<TypeDistribution>& dists,
                             const ProcedureOptions& opts = {});

// For a 2-action player the limit bounds characterize the feasible marginals
// exactly: action a may be played with any probability in
// [q*_a, 1 - q*_other]. Unsupported for players with more actions.
struct ActionInterval {
  double lo = 0.0;
  double hi = 1.0;
};
std::vector<ActionInterval> rationalizable_interval(const StaticGame& game,
                                                    const ProcedureTrace& trace,
                                                    int i);

// Lower-bound test of an observed distribution against the limit bounds:
// pass iff pi(a) >= q*[i][a] - tol for every action. Exact characterization
// for 2-action players; necessary-only otherwise (flagged).
struct PlayerVerdict {
  bool pass = true;
  bool necessary_only = false;
  int binding_action = 0;  // action with the smallest margin
  double margin = 0.0;     // min_a pi(a) - q*[i][a]
};
std::vector<PlayerVerdict> check_distribution(const StaticGame& game,
                                              const MixedProfile& observed,
                                              const ProcedureTrace& trace,
                                              double tol = 1e-9);

// CSV export of the whole trace: step,player,action,bound.
void write_trace_csv(std::ostream& os, const StaticGame& game,
                     const ProcedureTrace& trace);

}  // namespace qre
