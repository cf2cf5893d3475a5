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

#include "qre/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "qre/rng.hpp"

namespace qre {
namespace {

constexpr double kEnumResidualTol = 1e-9;
constexpr double kRootDedup = 1e-9;
constexpr double kBisectWidth = 1e-12;
constexpr int kMaxEnumGrid = 1 << 17;

void check_inputs(const StaticGame& game,
                  const std::vector<TypeDistribution>& dists) {
  if (dists.size() != game.players.size()) {
    throw std::invalid_argument("need one type distribution per player");
  }
}

void renormalize(MixedProfile& profile) {
  for (auto& d : profile.dist) {
    double sum = 0.0;
    for (double v : d) sum += v;
    for (double& v : d) v /= sum;
  }
}

// Deterministic spread of starting profiles: Halton points per coordinate,
// pushed onto each simplex through the exponential spacing map.
MixedProfile halton_start(const StaticGame& game, int index) {
  static constexpr int kPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19,
                                    23, 29, 31, 37, 41, 43, 47, 53};
  auto halton = [](int i, int base) {
    double f = 1.0, r = 0.0;
    while (i > 0) {
      f /= base;
      r += f * (i % base);
      i /= base;
    }
    return r;
  };
  MixedProfile profile;
  profile.dist.resize(game.player_count());
  int dim = 0;
  for (int i = 0; i < game.player_count(); ++i) {
    auto& d = profile.dist[i];
    d.resize(game.action_count(i));
    double sum = 0.0;
    for (double& v : d) {
      const double u =
          halton(index + 1, kPrimes[dim % (sizeof(kPrimes) / sizeof(int))]);
      ++dim;
      v = -std::log1p(-std::min(u, 1.0 - 1e-12));
      sum += v;
    }
    for (double& v : d) v /= sum;
  }
  return profile;
}

}  // namespace

MixedProfile qre_map(const StaticGame& game,
                     const std::vector<TypeDistribution>& dists,
                     const MixedProfile& profile, const McOptions& mc) {
  check_inputs(game, dists);
  validate_profile(game, profile);
  MixedProfile out;
  out.dist.resize(game.player_count());
  for (int i = 0; i < game.player_count(); ++i) {
    McOptions player_mc = mc;
    player_mc.seed = mix_seed(mc.seed, 0x9a90, i);
    out.dist[i] = quantal_response(dists[i], game, i, profile, player_mc);
  }
  return out;
}

QreResult solve_fixed_point(const StaticGame& game,
                            const std::vector<TypeDistribution>& dists,
                            const MixedProfile& start,
                            const SolverOptions& opts, const McOptions& mc) {
  if (!(opts.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  if (!(opts.damping > 0.0 && opts.damping <= 1.0)) {
    throw std::invalid_argument("damping must lie in (0, 1]");
  }

  QreResult result;
  result.profile = start;
  validate_profile(game, start);

  // Strong payoff sensitivity can put the map's local spectral radius well
  // beyond 1, where no fixed damping above a game-dependent cutoff settles.
  // The requested damping is the starting value; on stagnation the step is
  // halved and the search re-anchored at the best iterate seen.
  double damping = opts.damping;
  MixedProfile best = result.profile;
  double best_residual = std::numeric_limits<double>::infinity();
  int stalled = 0;
  for (int it = 1; it <= opts.max_iter; ++it) {
    const MixedProfile mapped = qre_map(game, dists, result.profile, mc);
    result.residual = profile_distance(result.profile, mapped);
    result.iterations = it;
    if (result.residual < best_residual) {
      best_residual = result.residual;
      best = result.profile;
      stalled = 0;
    } else {
      ++stalled;
    }
    if (result.residual <= opts.tol) {
      result.converged = true;
      return result;
    }
    if (stalled >= 25 && damping > opts.damping / 64.0) {
      damping = std::max(damping / 2.0, opts.damping / 64.0);
      result.profile = best;
      stalled = 0;
      continue;
    }
    for (int i = 0; i < game.player_count(); ++i) {
      for (int a = 0; a < game.action_count(i); ++a) {
        result.profile.dist[i][a] =
            (1.0 - damping) * result.profile.dist[i][a] +
            damping * mapped.dist[i][a];
      }
    }
    renormalize(result.profile);
  }
  // Report the best iterate and its residual honestly.
  result.profile = best;
  const MixedProfile mapped = qre_map(game, dists, result.profile, mc);
  result.residual = profile_distance(result.profile, mapped);
  result.converged = result.residual <= opts.tol;
  return result;
}

std::vector<QreResult> enumerate_qre_2x2(const StaticGame& game,
                                         const std::vector<TypeDistribution>& dists,
                                         int grid) {
  check_inputs(game, dists);
  if (game.player_count() != 2 || game.action_count(0) != 2 ||
      game.action_count(1) != 2) {
    throw std::invalid_argument("enumeration requires a 2x2 game");
  }
  if (grid < 100) throw std::invalid_argument("grid must be >= 100");

  MixedProfile work;
  work.dist = {{0.0, 0.0}, {0.0, 0.0}};
  const auto respond = [&](int player, double opponent_first) {
    work.dist[1 - player] = {opponent_first, 1.0 - opponent_first};
    work.dist[player] = {0.5, 0.5};  // own entry is ignored by the response
    return quantal_response(dists[player], game, player, work)[0];
  };
  const auto h = [&](double r) { return r - respond(0, respond(1, r)); };

  const auto scan = [&](int cells) {
    std::vector<double> roots;
    double prev = h(0.0);
    if (prev == 0.0) roots.push_back(0.0);
    for (int k = 1; k <= cells; ++k) {
      const double r = static_cast<double>(k) / cells;
      const double value = h(r);
      if (value == 0.0) {
        roots.push_back(r);
      } else if ((prev < 0.0) != (value < 0.0) && prev != 0.0) {
        double lo = static_cast<double>(k - 1) / cells;
        double hi = r;
        const bool lo_negative = prev < 0.0;
        while (hi - lo > kBisectWidth) {
          const double mid = 0.5 * (lo + hi);
          ((h(mid) < 0.0) == lo_negative ? lo : hi) = mid;
        }
        roots.push_back(0.5 * (lo + hi));
      }
      prev = value;
    }
    // Deduplicate near-coincident roots.
    std::sort(roots.begin(), roots.end());
    std::vector<double> unique;
    for (double r : roots) {
      if (unique.empty() || r - unique.back() > kRootDedup) unique.push_back(r);
    }
    return unique;
  };

  // Double the grid until the root count stops changing, so an even number
  // of crossings inside one cell cannot go unnoticed.
  std::vector<double> roots = scan(grid);
  for (int cells = grid * 2; cells <= kMaxEnumGrid; cells *= 2) {
    std::vector<double> finer = scan(cells);
    const bool stable = finer.size() == roots.size();
    roots = std::move(finer);
    if (stable) break;
  }

  std::vector<QreResult> results;
  for (double r : roots) {
    const double s = respond(1, r);
    QreResult qre;
    qre.profile.dist = {{r, 1.0 - r}, {s, 1.0 - s}};
    const MixedProfile mapped = qre_map(game, dists, qre.profile);
    qre.residual = profile_distance(qre.profile, mapped);
    qre.converged = qre.residual <= kEnumResidualTol;
    results.push_back(std::move(qre));
  }
  return results;
}

MultistartResult solve_multistart(const StaticGame& game,
                                  const std::vector<TypeDistribution>& dists,
                                  int starts, const SolverOptions& opts,
                                  const McOptions& mc) {
  if (starts < 1) throw std::invalid_argument("starts must be >= 1");
  MultistartResult out;
  std::vector<QreResult> found(starts);
  for (int s = 0; s < starts; ++s) {
    found[s] = solve_fixed_point(game, dists, halton_start(game, s), opts, mc);
  }
  for (auto& candidate : found) {
    if (!candidate.converged) continue;
    const bool duplicate =
        std::any_of(out.equilibria.begin(), out.equilibria.end(),
                    [&](const QreResult& kept) {
                      return profile_distance(kept.profile, candidate.profile) <
                             1e-7;
                    });
    if (!duplicate) out.equilibria.push_back(std::move(candidate));
  }
  return out;
}

LowerEnvelope lower_envelope(const std::vector<QreResult>& qres) {
  if (qres.empty()) {
    throw std::invalid_argument("lower_envelope needs a non-empty list");
  }
  LowerEnvelope env;
  env.value = qres.front().profile.dist;
  for (const auto& qre : qres) {
    for (std::size_t i = 0; i < env.value.size(); ++i) {
      for (std::size_t a = 0; a < env.value[i].size(); ++a) {
        env.value[i][a] = std::min(env.value[i][a], qre.profile.dist[i][a]);
      }
    }
  }
  return env;
}

}  // namespace qre
