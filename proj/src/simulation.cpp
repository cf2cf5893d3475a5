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

#include "qre/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "qre/io.hpp"
#include "qre/mc.hpp"
#include "qre/rng.hpp"

namespace qre {

int best_response(const StaticGame& game, int i, std::span<const double> theta,
                  const MixedProfile& belief) {
  if (static_cast<int>(theta.size()) != game.action_count(i)) {
    throw std::invalid_argument("type vector has wrong action count");
  }
  const std::vector<double> utils = expected_payoffs(game, i, belief);
  int best = 0;
  double best_value = utils[0] + theta[0];
  for (int a = 1; a < game.action_count(i); ++a) {
    const double v = utils[a] + theta[a];
    if (v > best_value) {
      best_value = v;
      best = a;
    }
  }
  return best;
}

SimulationTrace simulate(const StaticGame& game,
                         const std::vector<TypeDistribution>& dists,
                         const SimulationConfig& config) {
  if (dists.size() != game.players.size()) {
    throw std::invalid_argument("need one type distribution per player");
  }
  if (config.agents_per_round < 1) {
    throw std::invalid_argument("agents_per_round must be >= 1");
  }
  if (config.rounds < 1) throw std::invalid_argument("rounds must be >= 1");

  MixedProfile belief;
  if (config.belief_mode == SimulationConfig::BeliefMode::kFixed) {
    belief = config.fixed_belief;
    validate_profile(game, belief);
  } else {
    belief = uniform_profile(game);
  }

  SimulationTrace trace;
  trace.agents_per_round = config.agents_per_round;
  std::vector<std::vector<std::int64_t>> cumulative(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    cumulative[i].assign(game.action_count(i), 0);
  }

  for (int round = 0; round < config.rounds; ++round) {
    trace.beliefs.push_back(belief);
    trace.counts.emplace_back(game.player_count());
    MixedProfile empirical, cum, analytic;
    empirical.dist.resize(game.player_count());
    cum.dist.resize(game.player_count());
    analytic.dist.resize(game.player_count());

    for (int i = 0; i < game.player_count(); ++i) {
      const std::vector<double> utils = expected_payoffs(game, i, belief);
      const auto tally = mc::tally_argmax(
          dists[i], utils, config.agents_per_round,
          mix_seed(config.seed, 0x51a0, round, i), config.parallel);
      trace.counts.back()[i] = tally.counts;

      empirical.dist[i].resize(game.action_count(i));
      cum.dist[i].resize(game.action_count(i));
      for (int a = 0; a < game.action_count(i); ++a) {
        cumulative[i][a] += tally.counts[a];
        empirical.dist[i][a] = static_cast<double>(tally.counts[a]) /
                               static_cast<double>(tally.total);
        cum.dist[i][a] =
            static_cast<double>(cumulative[i][a]) /
            static_cast<double>(config.agents_per_round * (round + 1));
      }

      McOptions analytic_mc;
      analytic_mc.samples = config.analytic_samples;
      analytic_mc.seed = mix_seed(config.seed, 0xa417, round, i);
      analytic_mc.parallel = config.parallel;
      analytic.dist[i] = quantal_response(dists[i], game, i, belief, analytic_mc);
    }

    trace.empirical.push_back(std::move(empirical));
    trace.cumulative.push_back(std::move(cum));
    trace.analytic.push_back(std::move(analytic));
    if (config.belief_mode == SimulationConfig::BeliefMode::kEmpiricalLag) {
      belief = trace.empirical.back();
    }
  }
  return trace;
}

ObservedReport test_observed(const StaticGame& game,
                             const SimulationTrace& trace,
                             const ProcedureTrace& bounds) {
  ObservedReport report;
  for (std::size_t round = 0; round < trace.cumulative.size(); ++round) {
    const double agents_seen =
        static_cast<double>(trace.agents_per_round) *
        static_cast<double>(round + 1);
    const double tol = std::max(1e-9, 4.0 * std::sqrt(0.25 / agents_seen));
    RoundCheck check;
    check.players =
        check_distribution(game, trace.cumulative[round], bounds, tol);
    check.pass = std::all_of(check.players.begin(), check.players.end(),
                             [](const PlayerVerdict& v) { return v.pass; });
    if (!check.pass) report.all_pass = false;
    report.tolerance = tol;
    report.rounds.push_back(std::move(check));
  }
  return report;
}

void write_simulation_csv(std::ostream& os, const StaticGame& game,
                          const SimulationTrace& trace) {
  os << "round,player,action,frequency,analytic_frequency,deviation\n";
  for (std::size_t round = 0; round < trace.empirical.size(); ++round) {
    for (int i = 0; i < game.player_count(); ++i) {
      for (int a = 0; a < game.action_count(i); ++a) {
        const double freq = trace.empirical[round].dist[i][a];
        const double ref = trace.analytic[round].dist[i][a];
        os << (round + 1) << ',' << game.players[i] << ','
           << game.actions[i][a] << ',' << fmt12(freq) << ',' << fmt12(ref)
           << ',' << fmt12(std::abs(freq - ref)) << '\n';
      }
    }
  }
}

}  // namespace qre
