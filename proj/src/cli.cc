// Copyright 2026 The rsgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "rsgame/cli.h"

#include <chrono>
#include <ctime>
#include <iostream>

#include "CLI11.hpp"
#include "rsgame/bellman.h"
#include "rsgame/nash.h"
#include "rsgame/sim.h"
#include "rsgame/spectral.h"

namespace rsgame {
namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void check_ranges(const RunConfig& c) {
  auto need = [](bool ok, const char* what) {
    if (!ok) throw UsageError(what);
  };
  need(c.tol > 0.0, "--tol must be positive");
  need(c.max_iter >= 1, "--max-iter must be >= 1");
  need(c.beta > 0.0 && c.beta <= 1.0, "--beta must lie in (0, 1]");
  need(c.tau0 > 0.0 && c.tau_min > 0.0 && c.tau_min <= c.tau0,
       "--tau0/--tau-min need 0 < tau_min <= tau0");
  need(c.rounds >= 0, "--rounds must be >= 0");
  need(c.grid > 0.0 && c.grid <= 1.0, "--grid must lie in (0, 1]");
  need(c.horizon >= 1, "--horizon must be >= 1");
  need(c.paths >= 1, "--paths must be >= 1");
  need(c.eps > 0.0, "--eps must be positive");
  need(!c.theta || *c.theta > 0.0, "--theta must be positive");
  need(c.min_prob > 0.0, "--min-prob must be positive");
  need(c.threads >= 1, "--threads must be >= 1");
  need(c.limit >= 0, "--limit must be >= 0");
  need(c.player == 1 || c.player == 2, "--player must be 1 or 2");
}

std::string utc_now() {
  const std::time_t t = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

SolveOptions solve_options(const RunConfig& c) {
  SolveOptions o;
  o.tol = c.tol;
  o.max_iter = c.max_iter;
  return o;
}

GameInstance load_game(const RunConfig& c) {
  if (c.instance_path.empty()) throw UsageError("--instance is required");
  GameInstance g = load_instance(c.instance_path);
  if (c.theta) g = g.with_theta(*c.theta);
  return g;
}

struct Outcome {
  Json result;
  int code = kExitOk;
  std::string digest;
};

Outcome do_validate(const RunConfig& c, std::ostream& err) {
  const GameInstance g = load_game(c);
  ValidationOptions vo;
  vo.min_prob = c.min_prob;
  const ModelDiagnostics d = validate(g, vo);
  Outcome o{diagnostics_to_json(d), kExitOk, instance_digest(g)};
  for (const auto& check : d.checks) {
    if (!check.passed) {
      err << "FAIL " << check.message << "\n";
      o.code = kExitFail;
    }
  }
  return o;
}

Outcome do_solve(const RunConfig& c) {
  const GameInstance g = load_game(c);
  const Player p = player_from_int(c.player);
  const StationaryStrategy opp = load_strategy(c.opponent, g, other(p));
  const SolveResult r = solve_optimality(g, p, opp, solve_options(c));
  Json res = solve_result_to_json(r);
  res["opponent"] = strategy_to_json(other(p), opp);
  return {std::move(res), kExitOk, instance_digest(g)};
}

Outcome do_eval(const RunConfig& c) {
  const GameInstance g = load_game(c);
  const StationaryStrategy phi = load_strategy(c.phi, g, Player::kOne);
  const StationaryStrategy psi = load_strategy(c.psi, g, Player::kTwo);
  const int start = c.start < 0 ? g.anchor_state() : c.start;
  if (start >= g.n_states()) throw UsageError("--start out of range");
  Json res;
  res["phi"] = strategy_to_json(Player::kOne, phi);
  res["psi"] = strategy_to_json(Player::kTwo, psi);
  res["start_state"] = start;
  for (Player p : {Player::kOne, Player::kTwo}) {
    Json e;
    e["ergodic_cost"] = ergodic_cost(g, p, phi, psi);
    e["finite_horizon_growth"] =
        finite_horizon_growth(g, p, phi, psi, start, c.horizon);
    if (c.mc) {
      e["monte_carlo"] = mc_estimate_to_json(mc_cost_estimate(
          g, p, phi, psi, start, c.horizon, c.paths, c.seed, c.threads));
    }
    res["player" + std::to_string(player_index(p))] = std::move(e);
  }
  return {std::move(res), kExitOk, instance_digest(g)};
}

Outcome do_nash(const RunConfig& c, std::ostream& err) {
  const GameInstance g = load_game(c);
  const StationaryStrategy phi = load_strategy(c.phi, g, Player::kOne);
  const StationaryStrategy psi = load_strategy(c.psi, g, Player::kTwo);
  DynamicsOptions o;
  o.beta = c.beta;
  o.smoothing = c.smoothing;
  o.tau0 = c.tau0;
  o.tau_min = c.tau_min;
  o.max_rounds = c.rounds;
  o.eps_target = c.eps;
  o.solve = solve_options(c);
  const DynamicsResult r = best_response_dynamics(g, phi, psi, o);
  const bool verified = verify_certificate(g, r.certificate, c.eps, o.solve);
  Json res = certificate_to_json(r.certificate);
  res["verified"] = verified;
  res["instance_digest"] = instance_digest(g);
  res["solver"] = {{"tol", c.tol}, {"max_iter", c.max_iter}};
  res["cycle"] = {{"detected", r.cycle.detected},
                  {"round", r.cycle.round},
                  {"period", r.cycle.period}};
  int code = kExitOk;
  if (!r.certificate.converged || !verified) {
    err << "nash: no certificate with max gap <= " << c.eps << " after "
        << c.rounds << " rounds (best gap " << r.certificate.max_gap()
        << ")\n";
    code = kExitFail;
  }
  return {std::move(res), code, instance_digest(g)};
}

Outcome do_brute(const RunConfig& c, std::ostream& err) {
  const GameInstance g = load_game(c);
  BruteForceOptions o;
  o.grid_step = c.grid;
  o.eps = c.eps;
  o.threads = c.threads;
  o.solve = solve_options(c);
  BruteForceResult r;
  try {
    r = brute_force_nash(g, o);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
  Json res;
  res["label"] = r.label;
  res["existence_guaranteed"] = r.existence_guaranteed;
  res["pairs_examined"] = r.pairs_examined;
  res["count"] = r.certificates.size();
  Json list = Json::array();
  const std::size_t shown =
      c.limit > 0 ? std::min<std::size_t>(c.limit, r.certificates.size())
                  : r.certificates.size();
  for (std::size_t i = 0; i < shown; ++i) {
    list.push_back(certificate_to_json(r.certificates[i]));
  }
  res["certificates"] = std::move(list);
  int code = kExitOk;
  if (r.certificates.empty()) {
    err << "brute: no grid pair with max gap <= " << c.eps << "\n";
    code = kExitFail;
  }
  return {std::move(res), code, instance_digest(g)};
}

}  // namespace

Json config_to_json(const RunConfig& c) {
  Json j;
  j["command"] = c.command;
  j["instance"] = c.instance_path;
  j["phi"] = c.phi;
  j["psi"] = c.psi;
  j["opponent"] = c.opponent;
  j["output"] = c.output_path;
  j["player"] = c.player;
  j["tol"] = c.tol;
  j["max_iter"] = c.max_iter;
  j["beta"] = c.beta;
  j["tau0"] = c.tau0;
  j["tau_min"] = c.tau_min;
  j["smoothing"] = c.smoothing;
  j["rounds"] = c.rounds;
  j["grid"] = c.grid;
  j["horizon"] = c.horizon;
  j["paths"] = c.paths;
  j["mc"] = c.mc;
  j["start"] = c.start;
  j["seed"] = c.seed;
  j["eps"] = c.eps;
  j["theta"] = c.theta ? Json(*c.theta) : Json(nullptr);
  j["min_prob"] = c.min_prob;
  j["threads"] = c.threads;
  j["limit"] = c.limit;
  j["states"] = c.states;
  j["actions_a"] = c.actions_a;
  j["actions_b"] = c.actions_b;
  j["arat"] = c.arat;
  j["c_bar"] = c.c_bar;
  j["gen_min_prob"] = c.gen_min_prob;
  return j;
}

int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string started = utc_now();
  Outcome o;
  try {
    check_ranges(c);
    if (c.command == "validate") {
      o = do_validate(c, err);
    } else if (c.command == "solve") {
      o = do_solve(c);
    } else if (c.command == "eval") {
      o = do_eval(c);
    } else if (c.command == "nash") {
      o = do_nash(c, err);
    } else if (c.command == "brute") {
      o = do_brute(c, err);
    } else if (c.command == "gen") {
      RandomInstanceOptions ro;
      ro.n_states = c.states;
      ro.n_actions_a = c.actions_a;
      ro.n_actions_b = c.actions_b;
      ro.min_prob = c.gen_min_prob;
      ro.arat = c.arat;
      ro.c_bar = c.c_bar;
      ro.theta = c.theta.value_or(1.0);
      GameInstance g = [&] {
        try {
          return random_instance(c.seed, ro);
        } catch (const InvalidArgument& e) {
          throw UsageError(e.what());
        }
      }();
      const std::string doc = dump_json(instance_to_json(g)) + "\n";
      if (c.output_path.empty()) {
        out << doc;
        return kExitOk;
      }
      write_text_file(c.output_path, doc);
      o.digest = instance_digest(g);
      o.result = {{"written", c.output_path}};
    } else {
      throw UsageError("unknown command '" + c.command + "'");
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  } catch (const AssumptionFailure& e) {
    err << "FAIL " << e.what() << "\n";
    return kExitFail;
  } catch (const ConvergenceFailure& e) {
    err << "FAIL " << e.what() << "\n";
    return kExitFail;
  } catch (const InvalidArgument& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  }

  const double wall =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  Json report;
  report["tool"] = "rsgame";
  report["version"] = kToolVersion;
  report["command"] = c.command;
  report["instance_digest"] = o.digest;
  report["flags"] = config_to_json(c);
  report["exit_code"] = o.code;
  report["result"] = std::move(o.result);
  report["timing"] = {{"started_utc", started}, {"wall_seconds", wall}};
  const std::string text = dump_json(report) + "\n";
  try {
    // gen -o holds the instance; its report goes to `out`.
    if (c.output_path.empty() || c.command == "gen") {
      out << text;
    } else {
      write_text_file(c.output_path, text);
    }
  } catch (const IoError& e) {
    err << "I/O error: " << e.what() << "\n";
    return kExitIo;
  }
  return o.code;
}

int run_cli(int argc, const char* const* argv, std::ostream& out,
            std::ostream& err) {
  RunConfig c;
  CLI::App app{"Risk-sensitive ergodic stochastic game solver", "rsgame"};
  app.set_version_flag("--version", kToolVersion);
  app.require_subcommand(1);

  auto add_instance = [&](CLI::App* s) {
    s->add_option("--instance,-i", c.instance_path, "Instance JSON file")
        ->required();
    s->add_option("--theta", c.theta, "Override the risk parameter");
  };
  auto add_output = [&](CLI::App* s) {
    s->add_option("--output,-o", c.output_path, "Write the report here");
  };
  auto add_solver = [&](CLI::App* s) {
    s->add_option("--tol", c.tol, "Span stopping tolerance")
        ->capture_default_str();
    s->add_option("--max-iter", c.max_iter, "Value-iteration cap")
        ->capture_default_str();
  };
  auto add_pair = [&](CLI::App* s) {
    s->add_option("--phi", c.phi, "Player 1 strategy file or 'uniform'")
        ->capture_default_str();
    s->add_option("--psi", c.psi, "Player 2 strategy file or 'uniform'")
        ->capture_default_str();
  };
  auto add_threads = [&](CLI::App* s) {
    s->add_option("--threads", c.threads, "Worker cap")->capture_default_str();
  };

  CLI::App* validate_cmd = app.add_subcommand("validate", "Check assumptions");
  add_instance(validate_cmd);
  add_output(validate_cmd);
  validate_cmd->add_option("--min-prob", c.min_prob, "Positivity threshold")
      ->capture_default_str();

  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Optimal response to a fixed opponent");
  add_instance(solve_cmd);
  add_output(solve_cmd);
  add_solver(solve_cmd);
  solve_cmd->add_option("--player", c.player, "Responding player (1 or 2)")
      ->capture_default_str();
  solve_cmd->add_option("--opponent", c.opponent,
                        "Opponent strategy file or 'uniform'")
      ->capture_default_str();

  CLI::App* eval_cmd =
      app.add_subcommand("eval", "Ergodic costs of a strategy pair");
  add_instance(eval_cmd);
  add_output(eval_cmd);
  add_pair(eval_cmd);
  add_threads(eval_cmd);
  eval_cmd->add_option("--horizon", c.horizon, "Finite horizon n")
      ->capture_default_str();
  eval_cmd->add_option("--start", c.start, "Start state (default: anchor)");
  eval_cmd->add_flag("--mc", c.mc, "Add a Monte Carlo estimate");
  eval_cmd->add_option("--paths", c.paths, "Monte Carlo paths")
      ->capture_default_str();
  eval_cmd->add_option("--seed", c.seed, "Root seed")->capture_default_str();

  CLI::App* nash_cmd =
      app.add_subcommand("nash", "Equilibrium by best-response dynamics");
  add_instance(nash_cmd);
  add_output(nash_cmd);
  add_solver(nash_cmd);
  add_pair(nash_cmd);
  nash_cmd->add_option("--eps", c.eps, "Target max gap")->capture_default_str();
  nash_cmd->add_option("--beta", c.beta, "Damping weight")
      ->capture_default_str();
  nash_cmd->add_option("--tau0", c.tau0, "Initial logit temperature")
      ->capture_default_str();
  nash_cmd->add_option("--tau-min", c.tau_min, "Final logit temperature")
      ->capture_default_str();
  nash_cmd->add_flag("!--no-smoothing", c.smoothing, "Exact responses only");
  nash_cmd->add_option("--rounds", c.rounds, "Round cap")
      ->capture_default_str();

  CLI::App* brute_cmd =
      app.add_subcommand("brute", "Grid search for epsilon-equilibria");
  add_instance(brute_cmd);
  add_output(brute_cmd);
  add_solver(brute_cmd);
  add_threads(brute_cmd);
  brute_cmd->add_option("--grid", c.grid, "Simplex grid step")
      ->capture_default_str();
  brute_cmd->add_option("--eps", c.eps, "Keep pairs with max gap <= eps");
  brute_cmd->add_option("--limit", c.limit, "List at most this many (0: all)")
      ->capture_default_str();

  CLI::App* gen_cmd = app.add_subcommand("gen", "Generate a random instance");
  add_output(gen_cmd);
  gen_cmd->add_option("--seed", c.seed, "Seed")->capture_default_str();
  gen_cmd->add_option("--states", c.states)->capture_default_str();
  gen_cmd->add_option("--actions-a", c.actions_a)->capture_default_str();
  gen_cmd->add_option("--actions-b", c.actions_b)->capture_default_str();
  gen_cmd->add_option("--min-prob", c.gen_min_prob, "Transition floor")
      ->capture_default_str();
  gen_cmd->add_option("--c-bar", c.c_bar, "Cost upper bound")
      ->capture_default_str();
  gen_cmd->add_option("--theta", c.theta, "Risk parameter (default 1)");
  gen_cmd->add_flag("--arat", c.arat, "Generate with an ARAT decomposition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }
  c.command = app.get_subcommands().front()->get_name();
  // brute defaults to a coarser acceptance threshold than nash.
  if (c.command == "brute" && brute_cmd->count("--eps") == 0) c.eps = 0.05;
  return run(c, out, err);
}

}  // namespace rsgame
