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

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qre {

// Finite normal-form game between populations. The declaration order of each
// player's actions doubles as the deterministic tie-breaking order used
// everywhere an argmax over own actions can tie.
struct StaticGame {
  std::vector<std::string> players;
  std::vector<std::vector<std::string>> actions;
  // One flat payoff tensor per player, indexed by the full action profile
  // with player 0 as the most significant coordinate.
  std::vector<std::vector<double>> payoffs;

  int player_count() const { return static_cast<int>(players.size()); }
  int action_count(int i) const { return static_cast<int>(actions[i].size()); }
  std::size_t profile_count() const;
  std::size_t flat_index(std::span<const int> profile) const;
  double payoff(int i, std::span<const int> profile) const {
    return payoffs[i][flat_index(profile)];
  }

  // Identifier lookup; throws std::invalid_argument on unknown names.
  int player_index(std::string_view name) const;
  int action_index(int i, std::string_view name) const;
};

// One probability distribution over actions per player.
struct MixedProfile {
  std::vector<std::vector<double>> dist;
};

// Extremes of u_i(b, .) - u_i(a, .) over opponent profiles.
struct PayoffGap {
  double lower = 0.0;
  double upper = 0.0;
};

// Expected payoff of playing `a` against the opponents' mixed actions, which
// are treated as independent across opponents (the belief is the product
// measure). The profile's own-player component is ignored.
double expected_payoff(const StaticGame& game, int i, int a,
                       const MixedProfile& opponents);

// All players' expected payoffs for each own action against `profile`.
std::vector<double> expected_payoffs(const StaticGame& game, int i,
                                     const MixedProfile& profile);

// Min/max of u_i(a_prime, .) - u_i(a, .) over opponent profiles. Requires
// a != a_prime. Satisfies payoff_gap(i, b, a).upper == -payoff_gap(i, a, b).lower.
PayoffGap payoff_gap(const StaticGame& game, int i, int a, int a_prime);

// Structural invariant check; returns one message per violation, empty when
// the game is well formed.
std::vector<std::string> validate_game(const StaticGame& game);

MixedProfile uniform_profile(const StaticGame& game);
MixedProfile point_mass_profile(const StaticGame& game,
                                std::span<const int> profile);

// Throws std::invalid_argument unless every component is a probability
// vector of the right length (nonnegative, sums to 1 within 1e-12).
void validate_profile(const StaticGame& game, const MixedProfile& profile);

// sup-norm distance between two profiles of identical shape.
double profile_distance(const MixedProfile& a, const MixedProfile& b);

}  // namespace qre
