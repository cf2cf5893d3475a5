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

#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"

namespace qre {

struct QreResult {
  MixedProfile profile;
  double residual = 0.0;  // sup-norm of profile - qre_map(profile)
  int iterations = 0;
  bool converged = false;
};

struct SolverOptions {
  double damping = 0.5;  // the logit map can oscillate undamped at large lambda
  double tol = 1e-10;
  int max_iter = 10'000;
};

// Per-action minimum over an enumerated equilibrium set.
struct LowerEnvelope {
  std::vector<std::vector<double>> value;
};

// One application of the equilibrium map: every player's quantal response
// against `profile`. Fixed points of this map are the QREs.
MixedProfile qre_map(const StaticGame& game,
                     const std::vector<TypeDistribution>& dists,
                     const MixedProfile& profile, const McOptions& mc = {});

// Damped fixed-point iteration from `start`. Non-convergence is reported via
// the flags, never thrown; the residual is recomputed at the final iterate.
QreResult solve_fixed_point(const StaticGame& game,
                            const std::vector<TypeDistribution>& dists,
                            const MixedProfile& start,
                            const SolverOptions& opts = {},
                            const McOptions& mc = {});

// Complete enumeration for two players with two actions each. Reduces the
// fixed point to the scalar equation r = g1(g2(r)), scans a uniform grid for
// sign changes, refines each bracket by bisection to 1e-12 and deduplicates
// roots closer than 1e-9. The grid is doubled until the root count is stable
// so no pair of roots can hide inside one cell. At least one equilibrium is
// always returned.
std::vector<QreResult> enumerate_qre_2x2(const StaticGame& game,
                                         const std::vector<TypeDistribution>& dists,
                                         int grid = 4096);

// Multistart search for games where complete enumeration is unavailable.
// Starts are a deterministic low-discrepancy sequence on the profile space;
// results are merged by start index and deduplicated. `complete` is always
// false: distinct equilibria may be missed.
struct MultistartResult {
  std::vector<QreResult> equilibria;
  bool complete = false;
};
MultistartResult solve_multistart(const StaticGame& game,
                                  const std::vector<TypeDistribution>& dists,
                                  int starts = 32,
                                  const SolverOptions& opts = {},
                                  const McOptions& mc = {});

// Coordinatewise minimum over a non-empty equilibrium list.
LowerEnvelope lower_envelope(const std::vector<QreResult>& qres);

}  // namespace qre
