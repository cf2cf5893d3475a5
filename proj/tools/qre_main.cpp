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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qre/game_file.hpp"
#include "qre/io.hpp"
#include "qre/rationalization.hpp"
#include "qre/simulation.hpp"
#include "qre/solver.hpp"
#include "qre/structure.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitParse = 2;
constexpr int kExitNoConvergence = 3;
constexpr int kExitUnsupported = 4;

struct CommonArgs {
  std::string file;
};

qre::GameBundle load_or_exit(const std::string& path) {
  try {
    return qre::load_game_file(path);
  } catch (const qre::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    std::exit(kExitParse);
  }
}

void print_profile(const qre::StaticGame& game, const qre::MixedProfile& p,
                   const std::string& indent) {
  for (int i = 0; i < game.player_count(); ++i) {
    std::cout << indent << "player " << game.players[i] << ":";
    for (int a = 0; a < game.action_count(i); ++a) {
      std::cout << ' ' << game.actions[i][a] << '=' << qre::fmt12(p.dist[i][a]);
    }
    std::cout << '\n';
  }
}

const char* verdict_name(qre::Tightness v) {
  switch (v) {
    case qre::Tightness::kGuaranteedTight:
      return "GUARANTEED_TIGHT";
    case qre::Tightness::kStrictlyLoose:
      return "STRICTLY_LOOSE";
    case qre::Tightness::kUndetermined:
      return "UNDETERMINED";
  }
  return "UNDETERMINED";
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    std::exit(kExitParse);
  }
  return out;
}

int cmd_qre(const CommonArgs& common, int grid, double tol, double damping,
            int max_iter, bool all) {
  const qre::GameBundle bundle = load_or_exit(common.file);
  const bool is_2x2 = bundle.game.player_count() == 2 &&
                      bundle.game.action_count(0) == 2 &&
                      bundle.game.action_count(1) == 2;
  qre::SolverOptions opts;
  opts.tol = tol;
  opts.damping = damping;
  opts.max_iter = max_iter;

  if (all) {
    std::vector<qre::QreResult> found;
    if (is_2x2) {
      std::cout << "method: scalar enumeration (grid " << grid << ")\n";
      found = qre::enumerate_qre_2x2(bundle.game, bundle.dists, grid);
    } else {
      std::cout << "method: multistart fixed point (32 starts)\n"
                << "note: enumeration beyond 2x2 carries no completeness "
                   "guarantee\n";
      found = qre::solve_multistart(bundle.game, bundle.dists, 32, opts)
                  .equilibria;
    }
    std::cout << "equilibria: " << found.size() << '\n';
    for (std::size_t k = 0; k < found.size(); ++k) {
      std::cout << "QRE " << (k + 1) << ": residual "
                << qre::fmt12(found[k].residual) << '\n';
      print_profile(bundle.game, found[k].profile, "  ");
    }
    return kExitOk;
  }

  const qre::QreResult result = qre::solve_fixed_point(
      bundle.game, bundle.dists, qre::uniform_profile(bundle.game), opts);
  std::cout << "method: damped fixed point (damping " << qre::fmt12(damping)
            << ", tol " << qre::fmt12(tol) << ")\n"
            << "converged: " << (result.converged ? "yes" : "no")
            << "  iterations: " << result.iterations << "  residual: "
            << qre::fmt12(result.residual) << '\n';
  print_profile(bundle.game, result.profile, "  ");
  if (!result.converged) {
    std::cerr << "error: fixed point did not converge\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_rationalize(const CommonArgs& common, double tol, int max_iter,
                    const std::string& csv_path, std::uint64_t samples,
                    std::uint64_t seed, double qre_tol) {
  const qre::GameBundle bundle = load_or_exit(common.file);
  qre::ProcedureOptions opts;
  opts.tol = tol;
  opts.max_iter = max_iter;
  opts.mc_samples = samples;
  opts.seed = seed;
  const qre::ProcedureTrace trace =
      qre::run_procedure(bundle.game, bundle.dists, opts);

  std::cout << "converged: " << (trace.converged ? "yes" : "no") << "  steps: "
            << (trace.steps.size() - 1) << "  final step size: "
            << qre::fmt12(trace.sup_step) << '\n';
  std::cout << "limit bounds:\n";
  bool sums_to_one = true;
  for (int i = 0; i < bundle.game.player_count(); ++i) {
    double sum = 0.0;
    std::cout << "  player " << bundle.game.players[i] << ":";
    for (int a = 0; a < bundle.game.action_count(i); ++a) {
      std::cout << ' ' << bundle.game.actions[i][a] << '='
                << qre::fmt12(trace.limit.q[i][a]);
      sum += trace.limit.q[i][a];
    }
    std::cout << "  (sum " << qre::fmt12(sum) << ")\n";
    if (sum < 1.0 - qre_tol) sums_to_one = false;
  }

  if (!sums_to_one) {
    std::cout << "limit is NOT a QRE (per-player bound sums < 1)\n";
  } else {
    // The limit is a near-profile; renormalize per player and test the
    // fixed-point residual.
    qre::MixedProfile candidate;
    candidate.dist = trace.limit.q;
    for (auto& d : candidate.dist) {
      double sum = 0.0;
      for (double v : d) sum += v;
      for (double& v : d) v /= sum;
    }
    const qre::MixedProfile mapped =
        qre::qre_map(bundle.game, bundle.dists, candidate);
    const double residual = qre::profile_distance(candidate, mapped);
    if (residual <= qre_tol) {
      std::cout << "limit is a QRE (residual " << qre::fmt12(residual)
                << " <= " << qre::fmt12(qre_tol) << ")\n";
    } else {
      std::cout << "limit is NOT a QRE (residual " << qre::fmt12(residual)
                << " > " << qre::fmt12(qre_tol) << ")\n";
    }
  }

  if (!csv_path.empty()) {
    auto out = open_output(csv_path);
    qre::write_trace_csv(out, bundle.game, trace);
    std::cout << "trace csv: " << csv_path << '\n';
  }
  if (!trace.converged) {
    std::cerr << "error: bound iteration hit max steps\n";
    return kExitNoConvergence;
  }
  return kExitOk;
}

int cmd_graph(const CommonArgs& common, const std::string& dot_path, int grid) {
  const qre::GameBundle bundle = load_or_exit(common.file);
  if (bundle.game.player_count() != 2) {
    std::cerr << "error: graph analysis needs exactly 2 players; for more "
                 "players the conditions are relaxed criteria only\n";
    return kExitUnsupported;
  }
  const qre::MarginalGraph graph = qre::marginal_graph(bundle.game);
  const qre::TightnessReport report =
      qre::tightness_report(bundle.game, bundle.dists, grid);

  std::cout << "edges:\n";
  qre::write_graph_dot(std::cout, bundle.game, graph);
  std::cout << "per-action conditions:\n"
            << "  node non-serial eventually-non-serial C1 C2 C2' verdict\n";
  for (int i = 0; i < 2; ++i) {
    for (int a = 0; a < bundle.game.action_count(i); ++a) {
      const auto& cls = report.classes.nodes[i][a];
      std::cout << "  " << bundle.game.actions[i][a] << (i + 1) << ' '
                << (cls.non_serial ? "yes" : "no") << ' '
                << (cls.eventually_non_serial ? "yes" : "no") << ' '
                << (report.c1[i][a] ? "yes" : "no") << ' '
                << (report.c2[i][a] ? "yes" : "no") << ' '
                << (report.c2_prime[i][a] ? "yes" : "no") << ' '
                << verdict_name(report.verdict[i][a]) << '\n';
    }
  }
  std::cout << "game serial: " << (report.classes.serial ? "yes" : "no")
            << '\n';
  if (report.relaxed_criteria_only) {
    std::cout << "note: beyond 2x2 the conditions are relaxed criteria only\n";
  } else {
    std::cout << "equilibria found: " << report.qre_count << '\n';
  }

  const qre::C2ExclusionResult exclusion = qre::c2_exclusion_check(bundle.game);
  switch (exclusion.status) {
    case qre::C2ExclusionResult::Status::kHolds:
      std::cout << "no action satisfies C2 (serial game, >2 actions)\n";
      break;
    case qre::C2ExclusionResult::Status::kViolated:
      std::cout << "C2 exclusion violated at "
                << bundle.game.actions[exclusion.witness.player]
                                      [exclusion.witness.action]
                << (exclusion.witness.player + 1) << '\n';
      break;
    case qre::C2ExclusionResult::Status::kInapplicable:
      break;
  }

  if (!dot_path.empty()) {
    auto out = open_output(dot_path);
    qre::write_graph_dot(out, bundle.game, graph);
    std::cout << "graph file: " << dot_path << '\n';
  }
  return kExitOk;
}

int cmd_simulate(const CommonArgs& common, std::int64_t agents, int rounds,
                 std::uint64_t seed, const std::string& belief,
                 const std::string& csv_path) {
  const qre::GameBundle bundle = load_or_exit(common.file);
  qre::SimulationConfig config;
  config.agents_per_round = agents;
  config.rounds = rounds;
  config.seed = seed;

  if (belief == "lag") {
    config.belief_mode = qre::SimulationConfig::BeliefMode::kEmpiricalLag;
  } else if (belief == "uniform") {
    config.belief_mode = qre::SimulationConfig::BeliefMode::kFixed;
    config.fixed_belief = qre::uniform_profile(bundle.game);
  } else if (belief == "qre") {
    const qre::QreResult solved = qre::solve_fixed_point(
        bundle.game, bundle.dists, qre::uniform_profile(bundle.game));
    if (!solved.converged) {
      std::cerr << "error: could not compute the QRE belief\n";
      return kExitNoConvergence;
    }
    config.belief_mode = qre::SimulationConfig::BeliefMode::kFixed;
    config.fixed_belief = solved.profile;
    std::cout << "belief: QRE (residual " << qre::fmt12(solved.residual)
              << ")\n";
    print_profile(bundle.game, solved.profile, "  ");
  } else {
    std::cerr << "error: --belief must be qre, uniform or lag\n";
    return kExitParse;
  }

  const qre::SimulationTrace trace =
      qre::simulate(bundle.game, bundle.dists, config);
  const qre::ProcedureTrace bounds =
      qre::run_procedure(bundle.game, bundle.dists);
  const qre::ObservedReport report =
      qre::test_observed(bundle.game, trace, bounds);

  const auto& last = trace.cumulative.back();
  std::cout << "rounds: " << rounds << "  agents per round: " << agents
            << "  seed: " << seed << '\n'
            << "final cumulative frequencies:\n";
  print_profile(bundle.game, last, "  ");
  std::cout << "bounds check: " << (report.all_pass ? "PASS" : "FAIL")
            << " (tolerance " << qre::fmt12(report.tolerance) << ")\n";
  if (!report.all_pass) {
    for (std::size_t r = 0; r < report.rounds.size(); ++r) {
      if (report.rounds[r].pass) continue;
      for (int i = 0; i < bundle.game.player_count(); ++i) {
        const auto& v = report.rounds[r].players[i];
        if (v.pass) continue;
        std::cout << "  round " << (r + 1) << " player "
                  << bundle.game.players[i] << " action "
                  << bundle.game.actions[i][v.binding_action] << " margin "
                  << qre::fmt12(v.margin) << '\n';
      }
    }
  }

  if (!csv_path.empty()) {
    auto out = open_output(csv_path);
    qre::write_simulation_csv(out, bundle.game, trace);
    std::cout << "trace csv: " << csv_path << '\n';
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Quantal response equilibria, action-probability lower bounds, and "
      "population simulation for static games"};
  app.require_subcommand(1);

  CommonArgs common;

  auto* qre_cmd = app.add_subcommand(
      "qre", "Compute quantal response equilibria of a game file");
  int grid = 4096, max_iter = 10'000;
  double tol = 1e-10, damping = 0.5;
  bool all = false;
  qre_cmd->add_option("file", common.file)->required();
  qre_cmd->add_option("--grid", grid, "enumeration grid (2x2 games)");
  qre_cmd->add_option("--tol", tol, "fixed point tolerance");
  qre_cmd->add_option("--damping", damping, "iteration damping in (0,1]");
  qre_cmd->add_option("--max-iter", max_iter, "iteration cap");
  qre_cmd->add_flag("--all", all, "enumerate every equilibrium");

  auto* rat_cmd = app.add_subcommand(
      "rationalize", "Run the bound iteration and report the limits");
  double rat_tol = 1e-9, qre_tol = 1e-6;
  int rat_max_iter = 5'000;
  std::string csv_path;
  std::uint64_t samples = 200'000, seed = 1;
  rat_cmd->add_option("file", common.file)->required();
  rat_cmd->add_option("--tol", rat_tol, "sup-norm convergence tolerance");
  rat_cmd->add_option("--max-iter", rat_max_iter, "step cap");
  rat_cmd->add_option("--csv", csv_path, "write step,player,action,bound rows");
  rat_cmd->add_option("--samples", samples, "Monte Carlo budget per bound");
  rat_cmd->add_option("--seed", seed, "Monte Carlo seed");
  rat_cmd->add_option("--qre-tol", qre_tol,
                      "residual tolerance for the limit-is-a-QRE test");

  auto* graph_cmd = app.add_subcommand(
      "graph", "Marginal-action graph, conditions and tightness verdicts");
  std::string dot_path;
  int graph_grid = 4096;
  graph_cmd->add_option("file", common.file)->required();
  graph_cmd->add_option("--dot", dot_path, "write the edge list to a file");
  graph_cmd->add_option("--grid", graph_grid, "enumeration grid (2x2 games)");

  auto* sim_cmd = app.add_subcommand(
      "simulate", "Draw populations of agents and test the observed play");
  std::int64_t agents = 10'000;
  int rounds = 1;
  std::uint64_t sim_seed = 1;
  std::string belief = "qre";
  std::string sim_csv;
  sim_cmd->add_option("file", common.file)->required();
  sim_cmd->add_option("--agents", agents, "agents per round");
  sim_cmd->add_option("--rounds", rounds, "rounds to play");
  sim_cmd->add_option("--seed", sim_seed, "simulation seed");
  sim_cmd->add_option("--belief", belief, "qre, uniform or lag");
  sim_cmd->add_option("--csv", sim_csv, "write the per-round trace");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitParse;
  }

  try {
    if (qre_cmd->parsed()) {
      return cmd_qre(common, grid, tol, damping, max_iter, all);
    }
    if (rat_cmd->parsed()) {
      return cmd_rationalize(common, rat_tol, rat_max_iter, csv_path, samples,
                             seed, qre_tol);
    }
    if (graph_cmd->parsed()) {
      return cmd_graph(common, dot_path, graph_grid);
    }
    if (sim_cmd->parsed()) {
      return cmd_simulate(common, agents, rounds, sim_seed, belief, sim_csv);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kExitOk;
}
