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

#include <iosfwd>
#include <vector>

#include "qre/distribution.hpp"
#include "qre/game.hpp"

namespace qre {

// Combinatorial analysis of which actions' bounds can pin down equilibrium
// probabilities. Everything here depends on payoff differences only, never
// on the type distributions; graph construction requires two players.

struct NodeId {
  int player = 0;
  int action = 0;
  friend bool operator==(const NodeId&, const NodeId&) = default;
};

// Directed bipartite graph on the two players' actions: (i, a) => (1-i, b)
// iff b is a marginal action for a, i.e. b lies in some phi(a, a').
struct MarginalGraph {
  // out[i][a] = sorted opponent action indices reachable from (i, a).
  std::vector<std::vector<std::vector<int>>> out;
};

// Opponent actions where the payoff advantage of a_prime over a stays
// strictly below its maximum. A difference within 1e-9 of the maximum counts
// as attaining it (payoffs are floating point; exact ties are the knife-edge
// the strict inequality is meant to exclude).
std::vector<int> phi(const StaticGame& game, int i, int a, int a_prime);

MarginalGraph marginal_graph(const StaticGame& game);

struct ActionClass {
  bool non_serial = false;             // no marginal actions at all
  bool eventually_non_serial = false;  // some marginal action is non-serial
};

struct Classification {
  std::vector<std::vector<ActionClass>> nodes;
  bool serial = false;  // no action of either player is non-serial
};

Classification classify(const StaticGame& game);

// The pairing condition: a has exactly one marginal action b, and a is b's
// only marginal action.
bool condition_c2(const StaticGame& game, int i, int a);

// Every node connected to `node` ignoring edge direction (the influence
// closure). Includes the node itself.
std::vector<NodeId> reachable_set(const MarginalGraph& graph, NodeId node);

// Does the limit of the bound procedure reach the per-action minimum over
// the equilibrium set?
enum class Tightness { kGuaranteedTight, kStrictlyLoose, kUndetermined };

struct TightnessReport {
  Classification classes;
  std::vector<std::vector<bool>> c1;        // non-serial or eventually so
  std::vector<std::vector<bool>> c2;
  std::vector<std::vector<bool>> c2_prime;  // influence closure not everything
  std::vector<std::vector<Tightness>> verdict;
  int qre_count = 0;
  // Set for 2-player games beyond 2x2, where the conditions are relaxed
  // screening criteria rather than guarantees.
  bool relaxed_criteria_only = false;
};

// Verdict logic, separated so it is testable without enumerating equilibria:
// per action GUARANTEED_TIGHT when C1 or C2 holds; if several equilibria
// exist and some action violates both, every action is STRICTLY_LOOSE;
// UNDETERMINED otherwise.
std::vector<std::vector<Tightness>> tightness_verdicts(
    const std::vector<std::vector<bool>>& c1,
    const std::vector<std::vector<bool>>& c2, int qre_count);

// Full report for a 2-player game. For 2x2 games the equilibrium set is
// enumerated (grid parameter as in enumerate_qre_2x2); otherwise the report
// carries relaxed_criteria_only and all verdicts stay UNDETERMINED.
TightnessReport tightness_report(const StaticGame& game,
                                 const std::vector<TypeDistribution>& dists,
                                 int grid = 4096);

// In a serial 2-player game where some player has more than two actions, no
// action can satisfy the pairing condition. Scans for a counterexample.
struct C2ExclusionResult {
  enum class Status { kHolds, kViolated, kInapplicable };
  Status status = Status::kInapplicable;
  NodeId witness;  // only meaningful when kViolated
};
C2ExclusionResult c2_exclusion_check(const StaticGame& game);

// DOT-style adjacency lines, one per edge: "NV1 -> V2". Node labels are the
// action name suffixed with the 1-based player position.
void write_graph_dot(std::ostream& os, const StaticGame& game,
                     const MarginalGraph& graph);

}  // namespace qre
