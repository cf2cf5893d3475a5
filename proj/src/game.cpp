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

#include "qre/game.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <unordered_set>

namespace qre {
namespace {

void check_player(const StaticGame& game, int i) {
  if (i < 0 || i >= game.player_count()) {
    throw std::invalid_argument("unknown player index " + std::to_string(i));
  }
}

void check_action(const StaticGame& game, int i, int a) {
  if (a < 0 || a >= game.action_count(i)) {
    throw std::invalid_argument("unknown action index " + std::to_string(a) +
                                " for player " + game.players[i]);
  }
}

// Advances `profile` through the opponents of player i in row-major order;
// returns false once every opponent profile has been visited.
bool next_opponent_profile(const StaticGame& game, int i,
                           std::vector<int>& profile) {
  for (int j = game.player_count() - 1; j >= 0; --j) {
    if (j == i) continue;
    if (++profile[j] < game.action_count(j)) return true;
    profile[j] = 0;
  }
  return false;
}

}  // namespace

std::size_t StaticGame::profile_count() const {
  std::size_t n = 1;
  for (const auto& acts : actions) n *= acts.size();
  return n;
}

std::size_t StaticGame::flat_index(std::span<const int> profile) const {
  std::size_t idx = 0;
  for (int j = 0; j < player_count(); ++j) {
    idx = idx * actions[j].size() + static_cast<std::size_t>(profile[j]);
  }
  return idx;
}

int StaticGame::player_index(std::string_view name) const {
  for (int i = 0; i < player_count(); ++i) {
    if (players[i] == name) return i;
  }
  throw std::invalid_argument("unknown player '" + std::string(name) + "'");
}

int StaticGame::action_index(int i, std::string_view name) const {
  check_player(*this, i);
  for (int a = 0; a < action_count(i); ++a) {
    if (actions[i][a] == name) return a;
  }
  throw std::invalid_argument("unknown action '" + std::string(name) +
                              "' for player " + players[i]);
}

double expected_payoff(const StaticGame& game, int i, int a,
                       const MixedProfile& opponents) {
  check_player(game, i);
  check_action(game, i, a);
  if (static_cast<int>(opponents.dist.size()) != game.player_count()) {
    throw std::invalid_argument("profile has wrong player count");
  }
  for (int j = 0; j < game.player_count(); ++j) {
    if (j != i && static_cast<int>(opponents.dist[j].size()) !=
                      game.action_count(j)) {
      throw std::invalid_argument("profile component has wrong action count");
    }
  }

  std::vector<int> profile(game.player_count(), 0);
  profile[i] = a;
  double total = 0.0;
  do {
    double weight = 1.0;
    for (int j = 0; j < game.player_count(); ++j) {
      if (j != i) weight *= opponents.dist[j][profile[j]];
    }
    if (weight != 0.0) total += weight * game.payoff(i, profile);
  } while (next_opponent_profile(game, i, profile));
  return total;
}

std::vector<double> expected_payoffs(const StaticGame& game, int i,
                                     const MixedProfile& profile) {
  std::vector<double> utils(game.action_count(i));
  for (int a = 0; a < game.action_count(i); ++a) {
    utils[a] = expected_payoff(game, i, a, profile);
  }
  return utils;
}

PayoffGap payoff_gap(const StaticGame& game, int i, int a, int a_prime) {
  check_player(game, i);
  check_action(game, i, a);
  check_action(game, i, a_prime);
  if (a == a_prime) {
    throw std::invalid_argument("payoff_gap requires two distinct actions");
  }

  std::vector<int> profile(game.player_count(), 0);
  PayoffGap gap{std::numeric_limits<double>::infinity(),
                -std::numeric_limits<double>::infinity()};
  do {
    profile[i] = a_prime;
    double diff = game.payoff(i, profile);
    profile[i] = a;
    diff -= game.payoff(i, profile);
    gap.lower = std::min(gap.lower, diff);
    gap.upper = std::max(gap.upper, diff);
  } while (next_opponent_profile(game, i, profile));
  return gap;
}

std::vector<std::string> validate_game(const StaticGame& game) {
  std::vector<std::string> problems;
  if (game.player_count() < 2) problems.push_back("game needs >= 2 players");
  if (game.actions.size() != game.players.size() ||
      game.payoffs.size() != game.players.size()) {
    problems.push_back("actions/payoffs do not cover every player");
    return problems;
  }
  {
    std::unordered_set<std::string> seen;
    for (const auto& p : game.players) {
      if (!seen.insert(p).second) {
        problems.push_back("duplicate player name '" + p + "'");
      }
    }
  }
  for (int i = 0; i < game.player_count(); ++i) {
    if (game.action_count(i) < 2) {
      problems.push_back("player " + game.players[i] + " needs >= 2 actions");
    }
    std::unordered_set<std::string> seen;
    for (const auto& a : game.actions[i]) {
      if (!seen.insert(a).second) {
        problems.push_back("player " + game.players[i] +
                           " has duplicate action '" + a + "'");
      }
    }
  }
  const std::size_t expected = game.profile_count();
  for (int i = 0; i < game.player_count(); ++i) {
    if (game.payoffs[i].size() != expected) {
      problems.push_back("payoff tensor not total for player " +
                         game.players[i]);
      continue;
    }
    for (double v : game.payoffs[i]) {
      if (!std::isfinite(v)) {
        problems.push_back("non-finite payoff entry for player " +
                           game.players[i]);
        break;
      }
    }
  }
  return problems;
}

MixedProfile uniform_profile(const StaticGame& game) {
  MixedProfile profile;
  profile.dist.resize(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    profile.dist[i].assign(game.action_count(i),
                           1.0 / game.action_count(i));
  }
  return profile;
}

MixedProfile point_mass_profile(const StaticGame& game,
                                std::span<const int> profile) {
  MixedProfile out;
  out.dist.resize(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    check_action(game, i, profile[i]);
    out.dist[i].assign(game.action_count(i), 0.0);
    out.dist[i][profile[i]] = 1.0;
  }
  return out;
}

void validate_profile(const StaticGame& game, const MixedProfile& profile) {
  if (static_cast<int>(profile.dist.size()) != game.player_count()) {
    throw std::invalid_argument("profile has wrong player count");
  }
  for (int i = 0; i < game.player_count(); ++i) {
    const auto& d = profile.dist[i];
    if (static_cast<int>(d.size()) != game.action_count(i)) {
      throw std::invalid_argument("profile component has wrong action count");
    }
    double sum = 0.0;
    for (double p : d) {
      if (!(p >= 0.0)) {
        throw std::invalid_argument("profile has a negative probability");
      }
      sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-12) {
      throw std::invalid_argument("profile component does not sum to 1");
    }
  }
}

double profile_distance(const MixedProfile& a, const MixedProfile& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.dist.size(); ++i) {
    for (std::size_t k = 0; k < a.dist[i].size(); ++k) {
      d = std::max(d, std::abs(a.dist[i][k] - b.dist[i][k]));
    }
  }
  return d;
}

}  // namespace qre
