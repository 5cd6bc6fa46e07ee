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

#include "rsgame/nash.h"

#include <algorithm>
#include <cmath>
#include <deque>
#include <functional>
#include <limits>
#include <utility>

#include "rsgame/spectral.h"

namespace rsgame {
namespace {

NashCertificate make_certificate(const GameInstance& game,
                                 const StationaryStrategy& phi,
                                 const StationaryStrategy& psi,
                                 double rho1_star, double rho2_star) {
  NashCertificate c;
  c.phi = phi;
  c.psi = psi;
  c.j1 = ergodic_cost(game, Player::kOne, phi, psi);
  c.j2 = ergodic_cost(game, Player::kTwo, phi, psi);
  c.rho1_star = rho1_star;
  c.rho2_star = rho2_star;
  c.eps1 = c.j1 - rho1_star;
  c.eps2 = c.j2 - rho2_star;
  return c;
}

std::size_t fingerprint(const StationaryStrategy& phi,
                        const StationaryStrategy& psi, double quantum) {
  std::size_t h = 1469598103934665603ULL;
  auto feed = [&](double p) {
    const auto q = static_cast<long long>(std::llround(p / quantum));
    h ^= std::hash<long long>{}(q) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  };
  for (double p : phi.data()) feed(p);
  for (double p : psi.data()) feed(p);
  return h;
}

StationaryStrategy strategy_from_grid(const std::vector<Vector>& grid,
                                      long index, int n_states, int n_actions) {
  Vector rows;
  rows.reserve(static_cast<std::size_t>(n_states) * n_actions);
  const long g = static_cast<long>(grid.size());
  for (int x = 0; x < n_states; ++x) {
    const Vector& r = grid[index % g];
    index /= g;
    rows.insert(rows.end(), r.begin(), r.end());
  }
  return StationaryStrategy(n_states, n_actions, std::move(rows));
}

bool arat_holds(const GameInstance& game) {
  if (!game.arat()) return false;
  const ModelDiagnostics d = validate(game);
  return d.passed();
}

}  // namespace

BestResponse best_response(const GameInstance& game, Player player,
                           const StationaryStrategy& opponent,
                           const SolveOptions& options) {
  BestResponse br;
  br.solve = solve_optimality(game, player, opponent, options);
  br.tied_actions = br.solve.tied_actions;
  br.response_strategy =
      StationaryStrategy::pure(br.solve.selector, game.n_actions(player));
  return br;
}

bool in_best_response_set(const BestResponse& br, const StationaryStrategy& s) {
  if (s.n_states() != static_cast<int>(br.tied_actions.size())) return false;
  for (int x = 0; x < s.n_states(); ++x) {
    const auto& tied = br.tied_actions[x];
    for (int a : s.support(x)) {
      if (!std::binary_search(tied.begin(), tied.end(), a)) return false;
    }
  }
  return true;
}

StationaryStrategy logit_response(const SolveResult& solve, int n_actions,
                                  double tau) {
  if (tau < 0.0) throw InvalidArgument("tau must be nonnegative");
  if (tau == 0.0) return StationaryStrategy::pure(solve.selector, n_actions);
  const int ns = static_cast<int>(solve.selector.size());
  Vector rows(static_cast<std::size_t>(ns) * n_actions);
  for (int x = 0; x < ns; ++x) {
    const double* q = solve.action_values.data() +
                      static_cast<std::size_t>(x) * n_actions;
    const double best = *std::min_element(q, q + n_actions);
    double total = 0.0;
    for (int u = 0; u < n_actions; ++u) {
      rows[x * n_actions + u] = std::exp(-(q[u] - best) / tau);
      total += rows[x * n_actions + u];
    }
    for (int u = 0; u < n_actions; ++u) rows[x * n_actions + u] /= total;
  }
  return StationaryStrategy(ns, n_actions, std::move(rows));
}

NashCertificate epsilon_gap(const GameInstance& game,
                            const StationaryStrategy& phi,
                            const StationaryStrategy& psi,
                            const SolveOptions& options) {
  check_strategy(game, Player::kOne, phi);
  check_strategy(game, Player::kTwo, psi);
  const double rho1 = solve_optimality(game, Player::kOne, psi, options).rho;
  const double rho2 = solve_optimality(game, Player::kTwo, phi, options).rho;
  return make_certificate(game, phi, psi, rho1, rho2);
}

double DynamicsOptions::tau_at(long round) const {
  if (!smoothing) return 0.0;
  const long anneal = std::max(1L, max_rounds / 2);
  if (round > anneal) return 0.0;
  if (anneal == 1) return tau0;
  const double ratio = std::log(tau_min / tau0) / static_cast<double>(anneal - 1);
  return tau0 * std::exp(ratio * static_cast<double>(round - 1));
}

DynamicsResult best_response_dynamics(const GameInstance& game,
                                      const StationaryStrategy& phi0,
                                      const StationaryStrategy& psi0,
                                      const DynamicsOptions& options) {
  if (!(options.beta > 0.0 && options.beta <= 1.0)) {
    throw InvalidArgument("beta must lie in (0, 1]");
  }
  if (!(options.eps_target > 0.0)) {
    throw InvalidArgument("eps_target must be positive");
  }
  if (options.max_rounds < 0) throw InvalidArgument("max_rounds must be >= 0");
  if (options.smoothing &&
      !(options.tau0 > 0.0 && options.tau_min > 0.0 &&
        options.tau_min <= options.tau0)) {
    throw InvalidArgument("tau schedule needs 0 < tau_min <= tau0");
  }
  check_strategy(game, Player::kOne, phi0);
  check_strategy(game, Player::kTwo, psi0);

  StationaryStrategy phi = phi0;
  StationaryStrategy psi = psi0;
  SolveResult br1 = solve_optimality(game, Player::kOne, psi, options.solve);
  SolveResult br2 = solve_optimality(game, Player::kTwo, phi, options.solve);

  DynamicsResult out;
  bool have_best = false;
  std::deque<std::pair<std::size_t, long>> window;
  for (long round = 0;; ++round) {
    NashCertificate cert =
        make_certificate(game, phi, psi, br1.rho, br2.rho);
    cert.rounds = round;
    out.gap_trace.push_back(cert.max_gap());
    if (!have_best || cert.max_gap() < out.certificate.max_gap()) {
      out.certificate = cert;
      have_best = true;
    }
    if (cert.max_gap() <= options.eps_target) {
      out.certificate = std::move(cert);
      out.certificate.converged = true;
      return out;
    }
    if (round == options.max_rounds) break;

    const double tau = options.tau_at(round + 1);
    phi = StationaryStrategy::mix(
        phi, logit_response(br1, game.n_actions_a(), tau), options.beta);
    br2 = solve_optimality(game, Player::kTwo, phi, options.solve);
    psi = StationaryStrategy::mix(
        psi, logit_response(br2, game.n_actions_b(), tau), options.beta);
    br1 = solve_optimality(game, Player::kOne, psi, options.solve);

    const std::size_t fp = fingerprint(phi, psi, options.fingerprint_quantum);
    if (!out.cycle.detected) {
      for (const auto& [seen, when] : window) {
        if (seen == fp) {
          out.cycle.detected = true;
          out.cycle.round = round + 1;
          out.cycle.period = round + 1 - when;
          break;
        }
      }
    }
    window.emplace_back(fp, round + 1);
    while (static_cast<int>(window.size()) > options.cycle_window) {
      window.pop_front();
    }
  }
  out.certificate.converged = false;
  return out;
}

std::vector<Vector> simplex_grid(int n_actions, double step) {
  if (n_actions < 1) throw InvalidArgument("n_actions must be >= 1");
  if (!(step > 0.0 && step <= 1.0)) {
    throw InvalidArgument("grid step must lie in (0, 1]");
  }
  const long m = std::lround(1.0 / step);
  if (std::abs(m * step - 1.0) > 1e-9) {
    throw InvalidArgument("grid step must divide 1");
  }
  std::vector<Vector> out;
  std::vector<long> parts(n_actions, 0);
  // Enumerate compositions of m into n_actions nonnegative parts.
  std::function<void(int, long)> rec = [&](int i, long left) {
    if (i == n_actions - 1) {
      parts[i] = left;
      Vector row(n_actions);
      for (int k = 0; k < n_actions; ++k) {
        row[k] = static_cast<double>(parts[k]) / static_cast<double>(m);
      }
      out.push_back(std::move(row));
      return;
    }
    for (long p = 0; p <= left; ++p) {
      parts[i] = p;
      rec(i + 1, left - p);
    }
  };
  rec(0, m);
  return out;
}

BruteForceResult brute_force_nash(const GameInstance& game,
                                  const BruteForceOptions& options) {
  const int ns = game.n_states();
  const auto grid_a = simplex_grid(game.n_actions_a(), options.grid_step);
  const auto grid_b = simplex_grid(game.n_actions_b(), options.grid_step);
  const double count_a = std::pow(static_cast<double>(grid_a.size()), ns);
  const double count_b = std::pow(static_cast<double>(grid_b.size()), ns);
  if (count_a * count_b > static_cast<double>(options.max_pairs)) {
    throw InvalidArgument("grid too large: " +
                          std::to_string(static_cast<long long>(count_a)) +
                          " x " +
                          std::to_string(static_cast<long long>(count_b)) +
                          " strategy pairs exceeds the limit");
  }
  const long n_phi = static_cast<long>(count_a);
  const long n_psi = static_cast<long>(count_b);

  std::vector<StationaryStrategy> phis(n_phi);
  std::vector<StationaryStrategy> psis(n_psi);
  for (long i = 0; i < n_phi; ++i) {
    phis[i] = strategy_from_grid(grid_a, i, ns, game.n_actions_a());
  }
  for (long j = 0; j < n_psi; ++j) {
    psis[j] = strategy_from_grid(grid_b, j, ns, game.n_actions_b());
  }

  // rho_1* depends only on Psi and rho_2* only on Phi.
  Vector rho1(n_psi), rho2(n_phi);
  parallel_for(n_psi, options.threads, [&](std::size_t j) {
    rho1[j] = solve_optimality(game, Player::kOne, psis[j], options.solve).rho;
  });
  parallel_for(n_phi, options.threads, [&](std::size_t i) {
    rho2[i] = solve_optimality(game, Player::kTwo, phis[i], options.solve).rho;
  });

  std::vector<std::vector<NashCertificate>> found(n_phi);
  parallel_for(n_phi, options.threads, [&](std::size_t i) {
    for (long j = 0; j < n_psi; ++j) {
      NashCertificate c = make_certificate(game, phis[i], psis[j], rho1[j],
                                           rho2[i]);
      if (c.max_gap() <= options.eps) found[i].push_back(std::move(c));
    }
  });

  BruteForceResult out;
  out.pairs_examined = n_phi * n_psi;
  for (auto& v : found) {
    for (auto& c : v) out.certificates.push_back(std::move(c));
  }
  std::stable_sort(out.certificates.begin(), out.certificates.end(),
                   [](const NashCertificate& l, const NashCertificate& r) {
                     return l.max_gap() < r.max_gap();
                   });
  out.existence_guaranteed = arat_holds(game);
  out.label = out.existence_guaranteed
                  ? "existence guaranteed (ARAT structure verified)"
                  : "existence not guaranteed";
  return out;
}

bool verify_certificate(const GameInstance& game, const NashCertificate& cert,
                        double eps, const SolveOptions& options) {
  NashCertificate fresh;
  try {
    fresh = epsilon_gap(game, cert.phi, cert.psi, options);
  } catch (const std::exception&) {
    return false;
  }
  const std::pair<double, double> fields[] = {
      {cert.j1, fresh.j1},
      {cert.j2, fresh.j2},
      {cert.rho1_star, fresh.rho1_star},
      {cert.rho2_star, fresh.rho2_star},
      {cert.eps1, fresh.eps1},
      {cert.eps2, fresh.eps2},
  };
  for (const auto& [stored, recomputed] : fields) {
    if (!(std::abs(stored - recomputed) <= kCertificateTolerance)) return false;
  }
  return fresh.max_gap() <= eps;
}

}  // namespace rsgame
