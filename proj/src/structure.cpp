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

#include "qre/structure.hpp"

#include <algorithm>
#include <deque>
#include <ostream>
#include <stdexcept>

#include "qre/solver.hpp"

namespace qre {
namespace {

constexpr double kMaxTie = 1e-9;

void require_two_players(const StaticGame& game) {
  if (game.player_count() != 2) {
    throw std::invalid_argument("graph analysis requires a 2-player game");
  }
}

}  // namespace

std::vector<int> phi(const StaticGame& game, int i, int a, int a_prime) {
  require_two_players(game);
  if (a == a_prime) {
    throw std::invalid_argument("phi needs two distinct actions");
  }
  const int j = 1 - i;
  const PayoffGap gap = payoff_gap(game, i, a, a_prime);
  std::vector<int> members;
  std::vector<int> profile(2, 0);
  for (int b = 0; b < game.action_count(j); ++b) {
    profile[j] = b;
    profile[i] = a_prime;
    double diff = game.payoff(i, profile);
    profile[i] = a;
    diff -= game.payoff(i, profile);
    if (diff < gap.upper - kMaxTie) members.push_back(b);
  }
  return members;
}

MarginalGraph marginal_graph(const StaticGame& game) {
  require_two_players(game);
  MarginalGraph graph;
  graph.out.resize(2);
  for (int i = 0; i < 2; ++i) {
    graph.out[i].resize(game.action_count(i));
    for (int a = 0; a < game.action_count(i); ++a) {
      std::vector<bool> member(game.action_count(1 - i), false);
      for (int a_prime = 0; a_prime < game.action_count(i); ++a_prime) {
        if (a_prime == a) continue;
        for (int b : phi(game, i, a, a_prime)) member[b] = true;
      }
      for (int b = 0; b < game.action_count(1 - i); ++b) {
        if (member[b]) graph.out[i][a].push_back(b);
      }
    }
  }
  return graph;
}

Classification classify(const StaticGame& game) {
  const MarginalGraph graph = marginal_graph(game);
  Classification cls;
  cls.nodes.resize(2);
  cls.serial = true;
  for (int i = 0; i < 2; ++i) {
    cls.nodes[i].resize(game.action_count(i));
    for (int a = 0; a < game.action_count(i); ++a) {
      ActionClass& node = cls.nodes[i][a];
      node.non_serial = graph.out[i][a].empty();
      if (node.non_serial) cls.serial = false;
      node.eventually_non_serial =
          std::any_of(graph.out[i][a].begin(), graph.out[i][a].end(),
                      [&](int b) { return graph.out[1 - i][b].empty(); });
    }
  }
  return cls;
}

bool condition_c2(const StaticGame& game, int i, int a) {
  const MarginalGraph graph = marginal_graph(game);
  const auto& targets = graph.out[i][a];
  if (targets.size() != 1) return false;
  const auto& back = graph.out[1 - i][targets.front()];
  return back.size() == 1 && back.front() == a;
}

std::vector<NodeId> reachable_set(const MarginalGraph& graph, NodeId node) {
  const int n0 = static_cast<int>(graph.out[0].size());
  const int n1 = static_cast<int>(graph.out[1].size());
  auto flat = [&](NodeId id) { return id.player == 0 ? id.action : n0 + id.action; };
  std::vector<bool> seen(n0 + n1, false);
  std::deque<NodeId> queue{node};
  seen[flat(node)] = true;
  std::vector<NodeId> reach;
  while (!queue.empty()) {
    const NodeId cur = queue.front();
    queue.pop_front();
    reach.push_back(cur);
    // Successors.
    for (int b : graph.out[cur.player][cur.action]) {
      const NodeId next{1 - cur.player, b};
      if (!seen[flat(next)]) {
        seen[flat(next)] = true;
        queue.push_back(next);
      }
    }
    // Predecessors (edges ignored direction-wise).
    const int other = 1 - cur.player;
    for (int b = 0; b < static_cast<int>(graph.out[other].size()); ++b) {
      const auto& out = graph.out[other][b];
      if (std::find(out.begin(), out.end(), cur.action) != out.end()) {
        const NodeId prev{other, b};
        if (!seen[flat(prev)]) {
          seen[flat(prev)] = true;
          queue.push_back(prev);
        }
      }
    }
  }
  std::sort(reach.begin(), reach.end(), [](const NodeId& x, const NodeId& y) {
    return x.player != y.player ? x.player < y.player : x.action < y.action;
  });
  return reach;
}

std::vector<std::vector<Tightness>> tightness_verdicts(
    const std::vector<std::vector<bool>>& c1,
    const std::vector<std::vector<bool>>& c2, int qre_count) {
  bool some_action_violates_both = false;
  for (std::size_t i = 0; i < c1.size(); ++i) {
    for (std::size_t a = 0; a < c1[i].size(); ++a) {
      if (!c1[i][a] && !c2[i][a]) some_action_violates_both = true;
    }
  }
  std::vector<std::vector<Tightness>> verdict(c1.size());
  for (std::size_t i = 0; i < c1.size(); ++i) {
    verdict[i].resize(c1[i].size());
    for (std::size_t a = 0; a < c1[i].size(); ++a) {
      if (qre_count > 1 && some_action_violates_both) {
        verdict[i][a] = Tightness::kStrictlyLoose;
      } else if (c1[i][a] || c2[i][a]) {
        verdict[i][a] = Tightness::kGuaranteedTight;
      } else {
        verdict[i][a] = Tightness::kUndetermined;
      }
    }
  }
  return verdict;
}

TightnessReport tightness_report(const StaticGame& game,
                                 const std::vector<TypeDistribution>& dists,
                                 int grid) {
  require_two_players(game);
  TightnessReport report;
  report.classes = classify(game);
  const MarginalGraph graph = marginal_graph(game);
  const std::size_t all_nodes =
      graph.out[0].size() + graph.out[1].size();

  report.c1.resize(2);
  report.c2.resize(2);
  report.c2_prime.resize(2);
  for (int i = 0; i < 2; ++i) {
    const int n = game.action_count(i);
    report.c1[i].resize(n);
    report.c2[i].resize(n);
    report.c2_prime[i].resize(n);
    for (int a = 0; a < n; ++a) {
      const ActionClass& node = report.classes.nodes[i][a];
      report.c1[i][a] = node.non_serial || node.eventually_non_serial;
      report.c2[i][a] = condition_c2(game, i, a);
      report.c2_prime[i][a] =
          reachable_set(graph, {i, a}).size() != all_nodes;
    }
  }

  const bool is_2x2 = game.action_count(0) == 2 && game.action_count(1) == 2;
  if (!is_2x2) {
    report.relaxed_criteria_only = true;
    report.verdict.assign(2, {});
    for (int i = 0; i < 2; ++i) {
      report.verdict[i].assign(game.action_count(i), Tightness::kUndetermined);
    }
    return report;
  }
  report.qre_count =
      static_cast<int>(enumerate_qre_2x2(game, dists, grid).size());
  report.verdict = tightness_verdicts(report.c1, report.c2, report.qre_count);
  return report;
}

C2ExclusionResult c2_exclusion_check(const StaticGame& game) {
  C2ExclusionResult result;
  if (game.player_count() != 2) return result;
  if (game.action_count(0) <= 2 && game.action_count(1) <= 2) return result;
  if (!classify(game).serial) return result;

  for (int i = 0; i < 2; ++i) {
    for (int a = 0; a < game.action_count(i); ++a) {
      if (condition_c2(game, i, a)) {
        result.status = C2ExclusionResult::Status::kViolated;
        result.witness = {i, a};
        return result;
      }
    }
  }
  result.status = C2ExclusionResult::Status::kHolds;
  return result;
}

void write_graph_dot(std::ostream& os, const StaticGame& game,
                     const MarginalGraph& graph) {
  auto label = [&](int i, int a) {
    std::string name = game.actions[i][a];
    std::replace(name.begin(), name.end(), ' ', '_');
    return name + std::to_string(i + 1);
  };
  for (int i = 0; i < 2; ++i) {
    for (int a = 0; a < game.action_count(i); ++a) {
      for (int b : graph.out[i][a]) {
        os << label(i, a) << " -> " << label(1 - i, b) << '\n';
      }
    }
  }
}

}  // namespace qre
