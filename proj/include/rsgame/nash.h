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

// Best responses, epsilon-Nash certificates and equilibrium search.
//
// A certificate for (Phi, Psi) records J_i, the ergodic cost of the pair from
// the spectral oracle, and rho_i*, the optimal value of player i against the
// other's fixed strategy from relative value iteration. The gap
// eps_i = J_i - rho_i* is what player i could save by deviating.

#ifndef RSGAME_NASH_H_
#define RSGAME_NASH_H_

#include <string>
#include <vector>

#include "rsgame/bellman.h"
#include "rsgame/common.h"
#include "rsgame/game_model.h"

namespace rsgame {

// Stored and recomputed certificate values must agree to this tolerance.
inline constexpr double kCertificateTolerance = 1e-8;

struct BestResponse {
  SolveResult solve;
  std::vector<std::vector<int>> tied_actions;
  StationaryStrategy response_strategy;  // pure at solve.selector
};

BestResponse best_response(const GameInstance& game, Player player,
                           const StationaryStrategy& opponent,
                           const SolveOptions& options = {});

// True iff in every state the support of `s` lies inside the tied set.
bool in_best_response_set(const BestResponse& br, const StationaryStrategy& s);

// Per-state logit response over the action values at the solved v:
// p(u) proportional to exp(-(q(u) - min q) / tau). tau == 0 gives the pure
// selector.
StationaryStrategy logit_response(const SolveResult& solve, int n_actions,
                                  double tau);

struct NashCertificate {
  StationaryStrategy phi;
  StationaryStrategy psi;
  double j1 = 0.0;
  double j2 = 0.0;
  double rho1_star = 0.0;
  double rho2_star = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
  long rounds = 0;
  bool converged = false;

  double max_gap() const { return eps1 > eps2 ? eps1 : eps2; }
  bool is_epsilon_nash(double eps) const { return max_gap() <= eps; }
};

NashCertificate epsilon_gap(const GameInstance& game,
                            const StationaryStrategy& phi,
                            const StationaryStrategy& psi,
                            const SolveOptions& options = {});

struct DynamicsOptions {
  double beta = 0.5;
  // Logit smoothing with temperature annealed geometrically from tau0 down
  // to tau_min over the first half of max_rounds; exact responses after.
  bool smoothing = true;
  double tau0 = 0.1;
  double tau_min = 1e-4;
  long max_rounds = 500;
  double eps_target = 1e-6;
  int cycle_window = 50;
  double fingerprint_quantum = 1e-9;
  SolveOptions solve;

  // Temperature used in update round `round` (1-based); 0 means exact.
  double tau_at(long round) const;
};

struct CycleReport {
  bool detected = false;
  long round = 0;   // round at which a fingerprint first repeated
  long period = 0;  // distance to the earlier occurrence
};

struct DynamicsResult {
  // The converged pair, or the lowest-gap pair seen when not converged.
  NashCertificate certificate;
  CycleReport cycle;
  std::vector<double> gap_trace;  // max gap before each round
};

// Alternating damped responses:
//   Phi <- (1 - beta) Phi + beta BR_1(Psi)
//   Psi <- (1 - beta) Psi + beta BR_2(Phi)
// stopping when the certificate gap reaches eps_target.
DynamicsResult best_response_dynamics(const GameInstance& game,
                                      const StationaryStrategy& phi0,
                                      const StationaryStrategy& psi0,
                                      const DynamicsOptions& options = {});

struct BruteForceOptions {
  double grid_step = 0.05;
  double eps = 0.05;
  long max_pairs = 10'000'000;
  int threads = 1;
  SolveOptions solve;
};

struct BruteForceResult {
  std::vector<NashCertificate> certificates;  // sorted by max gap
  bool existence_guaranteed = false;
  std::string label;
  long pairs_examined = 0;
};

// Probability rows with entries on the lattice {0, step, 2 step, ..., 1}.
std::vector<Vector> simplex_grid(int n_actions, double step);

// Certifies every pair of per-state grid strategies and keeps those with
// max gap <= eps. Throws InvalidArgument if the grid exceeds max_pairs.
BruteForceResult brute_force_nash(const GameInstance& game,
                                  const BruteForceOptions& options = {});

// Recomputes both gaps with fresh solver runs. Returns false if the stored
// values disagree with the recomputation or the recomputed gap exceeds eps.
bool verify_certificate(const GameInstance& game, const NashCertificate& cert,
                        double eps, const SolveOptions& options = {});

}  // namespace rsgame

#endif  // RSGAME_NASH_H_
