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

#include "qre/rationalization.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "qre/io.hpp"
#include "qre/rng.hpp"

namespace qre {
namespace {

constexpr double kMonotoneSlack = 1e-12;

void check_bounds(const StaticGame& game, const BoundsVector& bounds) {
  if (static_cast<int>(bounds.q.size()) != game.player_count()) {
    throw std::invalid_argument("bounds have wrong player count");
  }
  for (int i = 0; i < game.player_count(); ++i) {
    if (static_cast<int>(bounds.q[i].size()) != game.action_count(i)) {
      throw std::invalid_argument("bounds have wrong action count");
    }
    double sum = 0.0;
    for (double v : bounds.q[i]) {
      if (!(v >= 0.0) || v > 1.0) {
        throw std::invalid_argument("bound outside [0, 1]");
      }
      sum += v;
    }
    if (sum > 1.0 + 1e-12) {
      throw std::invalid_argument("bounds of player " + game.players[i] +
                                  " sum beyond 1");
    }
  }
}

// Vertex k of the truncated simplex {q >= b, sum q = 1}: the lower bounds
// plus all leftover mass on coordinate k.
std::vector<double> simplex_vertex(const std::vector<double>& b, int k) {
  double leftover = 1.0;
  for (double v : b) leftover -= v;
  std::vector<double> vertex = b;
  vertex[k] += std::max(leftover, 0.0);
  return vertex;
}

}  // namespace

BoundsVector zero_bounds(const StaticGame& game) {
  BoundsVector bounds;
  bounds.q.resize(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    bounds.q[i].assign(game.action_count(i), 0.0);
  }
  return bounds;
}

double worst_case_threshold(const StaticGame& game, int i, int a, int a_prime,
                            const BoundsVector& bounds) {
  if (a == a_prime) {
    throw std::invalid_argument("worst_case_threshold needs distinct actions");
  }
  check_bounds(game, bounds);

  if (game.player_count() == 2) {
    const int j = 1 - i;
    const int nj = game.action_count(j);
    std::vector<int> profile(2, 0);
    double base = 0.0;
    double best_coeff = -std::numeric_limits<double>::infinity();
    double bound_sum = 0.0;
    for (int b = 0; b < nj; ++b) {
      profile[j] = b;
      profile[i] = a_prime;
      double coeff = game.payoff(i, profile);
      profile[i] = a;
      coeff -= game.payoff(i, profile);
      base += bounds.q[j][b] * coeff;
      bound_sum += bounds.q[j][b];
      best_coeff = std::max(best_coeff, coeff);
    }
    return base + std::max(1.0 - bound_sum, 0.0) * best_coeff;
  }

  // Vertex enumeration over the product of the opponents' truncated
  // simplices. `choice[j]` selects which coordinate of opponent j receives
  // the leftover mass.
  const int players = game.player_count();
  std::vector<int> opponents;
  for (int j = 0; j < players; ++j) {
    if (j != i) opponents.push_back(j);
  }
  std::vector<int> choice(opponents.size(), 0);
  std::vector<std::vector<double>> vertex(players);
  double best = -std::numeric_limits<double>::infinity();
  for (;;) {
    for (std::size_t k = 0; k < opponents.size(); ++k) {
      vertex[opponents[k]] = simplex_vertex(bounds.q[opponents[k]], choice[k]);
    }
    // Expected payoff difference under this vertex profile.
    std::vector<int> profile(players, 0);
    double value = 0.0;
    bool more = true;
    while (more) {
      double weight = 1.0;
      for (int j : opponents) weight *= vertex[j][profile[j]];
      if (weight != 0.0) {
        profile[i] = a_prime;
        double diff = game.payoff(i, profile);
        profile[i] = a;
        diff -= game.payoff(i, profile);
        value += weight * diff;
      }
      more = false;
      for (auto it = opponents.rbegin(); it != opponents.rend(); ++it) {
        if (++profile[*it] < game.action_count(*it)) {
          more = true;
          break;
        }
        profile[*it] = 0;
      }
    }
    best = std::max(best, value);
    // Next vertex combination.
    std::size_t k = 0;
    for (; k < opponents.size(); ++k) {
      if (++choice[k] < game.action_count(opponents[k])) break;
      choice[k] = 0;
    }
    if (k == opponents.size()) break;
  }
  return best;
}

BoundsVector step_bounds(const StaticGame& game,
                         const std::vector<TypeDistribution>& dists,
                         const BoundsVector& bounds,
                         const ProcedureOptions& opts) {
  if (dists.size() != game.players.size()) {
    throw std::invalid_argument("need one type distribution per player");
  }
  check_bounds(game, bounds);

  BoundsVector next = zero_bounds(game);
  for (int i = 0; i < game.player_count(); ++i) {
    const int n = game.action_count(i);
    for (int a = 0; a < n; ++a) {
      ForcedRegionSpec spec;
      spec.base_action = a;
      spec.thresholds.assign(n, -std::numeric_limits<double>::infinity());
      for (int rival = 0; rival < n; ++rival) {
        if (rival == a) continue;
        spec.thresholds[rival] = worst_case_threshold(game, i, a, rival, bounds);
      }
      McOptions mc;
      mc.samples = opts.mc_samples;
      mc.seed = mix_seed(opts.seed, 0x5eed, i, a);
      mc.parallel = opts.parallel;
      next.q[i][a] = forced_region_probability(dists[i], spec, mc).value;
    }
  }
  return next;
}

ProcedureTrace run_procedure(const StaticGame& game,
                             const std::vector<TypeDistribution>& dists,
                             const ProcedureOptions& opts) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");

  ProcedureTrace trace;
  trace.steps.push_back(zero_bounds(game));
  trace.sup_step = std::numeric_limits<double>::infinity();
  for (int n = 0; n < opts.max_iter; ++n) {
    const BoundsVector& current = trace.steps.back();
    BoundsVector next = step_bounds(game, dists, current, opts);
    double sup = 0.0;
    for (int i = 0; i < game.player_count(); ++i) {
      for (int a = 0; a < game.action_count(i); ++a) {
        const double delta = next.q[i][a] - current.q[i][a];
        if (delta < -kMonotoneSlack) {
          throw std::logic_error("bound decreased between steps");
        }
        sup = std::max(sup, std::abs(delta));
      }
    }
    trace.steps.push_back(std::move(next));
    trace.sup_step = sup;
    if (sup < opts.tol) {
      trace.converged = true;
      break;
    }
  }
  trace.limit = trace.steps.back();
  return trace;
}

std::vector<ActionInterval> rationalizable_interval(const StaticGame& game,
                                                    const ProcedureTrace& trace,
                                                    int i) {
  if (i < 0 || i >= game.player_count()) {
    throw std::invalid_argument("unknown player index");
  }
  if (game.action_count(i) != 2) {
    throw std::invalid_argument(
        "interval characterization is only supported for 2-action players");
  }
  const auto& q = trace.limit.q[i];
  return {{q[0], 1.0 - q[1]}, {q[1], 1.0 - q[0]}};
}

std::vector<PlayerVerdict> check_distribution(const StaticGame& game,
                                              const MixedProfile& observed,
                                              const ProcedureTrace& trace,
                                              double tol) {
  validate_profile(game, observed);
  std::vector<PlayerVerdict> verdicts(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    PlayerVerdict& v = verdicts[i];
    v.necessary_only = game.action_count(i) > 2;
    v.margin = std::numeric_limits<double>::infinity();
    for (int a = 0; a < game.action_count(i); ++a) {
      const double margin = observed.dist[i][a] - trace.limit.q[i][a];
      if (margin < v.margin) {
        v.margin = margin;
        v.binding_action = a;
      }
    }
    v.pass = v.margin >= -tol;
  }
  return verdicts;
}

void write_trace_csv(std::ostream& os, const StaticGame& game,
                     const ProcedureTrace& trace) {
  os << "step,player,action,bound\n";
  for (std::size_t n = 0; n < trace.steps.size(); ++n) {
    for (int i = 0; i < game.player_count(); ++i) {
      for (int a = 0; a < game.action_count(i); ++a) {
        os << n << ',' << game.players[i] << ',' << game.actions[i][a] << ','
           << fmt12(trace.steps[n].q[i][a]) << '\n';
      }
    }
  }
}

}  // namespace qre
