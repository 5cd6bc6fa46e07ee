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

// Risk-sensitive Bellman operator for one player against a fixed stationary
// opponent, and relative value iteration on it.
//
// With the opponent's row o = opponent(x), the operator for player i is
//
//   (T v)(x) = min over own mixes m of
//              ch_i(x, m, o) + ln sum_y exp(v(y)) Ph_i(y | x, m, o)
//            = min over own actions u of
//              ln sum_w o(w) exp(theta c_i(x,u,w)) sum_y exp(v(y)) P(y|x,u,w)
//
// The bracket is the logarithm of a functional linear in the own mix, so the
// minimum over the simplex is attained at a pure action. Player 2's operator
// minimizes over B with player 1's row fixed; player 1's swaps the roles.

#ifndef RSGAME_BELLMAN_H_
#define RSGAME_BELLMAN_H_

#include <cstdint>
#include <span>
#include <vector>

#include "rsgame/common.h"
#include "rsgame/game_model.h"

namespace rsgame {

// Actions within this distance of the state-wise minimum count as tied.
inline constexpr double kTieTolerance = 1e-10;

struct SolveOptions {
  double tol = 1e-12;
  long max_iter = 100000;
  // Keep span(v_{k+1} - v_k) for every iteration in SolveResult::trace.
  bool record_trace = false;
};

struct BellmanImage {
  Vector values;                          // (T v)(x)
  std::vector<std::vector<int>> argmins;  // tied minimizers, ascending
  Vector action_values;                   // [x][own action] bracket values
};

struct SolveResult {
  Player player = Player::kOne;
  double rho = 0.0;
  Vector v;                   // relative values, v[anchor] == 0
  std::vector<int> selector;  // lowest-index minimizer per state
  std::vector<std::vector<int>> tied_actions;
  Vector action_values;       // [x][own action] at the returned v
  double residual = 0.0;      // span(T v - v) at the returned v
  long iterations = 0;
  Vector trace;
};

// max(v) - min(v). Throws InvalidArgument on an empty vector.
double span(std::span<const double> v);

// Bracket values for each own action of `player` in state x.
Vector action_values(const GameInstance& game, Player player,
                     const StationaryStrategy& opponent,
                     std::span<const double> v, int x);

BellmanImage apply_T(const GameInstance& game, Player player,
                     const StationaryStrategy& opponent,
                     std::span<const double> v);

// ch_i(x, phi, psi) + ln sum_y exp(v(y)) Ph_i(y | x, phi, psi) for arbitrary
// mixed actions, evaluated through the normalized kernel.
double mixed_objective(const GameInstance& game, Player player, int x,
                       std::span<const double> phi,
                       std::span<const double> psi, std::span<const double> v);

// Entropy-dual form of the same bracket: ch + int v dmu* - I(mu*, Ph) with
// mu* the twisted measure of Ph by v.
double dual_value(const GameInstance& game, Player player, int x,
                  std::span<const double> phi, std::span<const double> psi,
                  std::span<const double> v);

// Relative value iteration v <- T v - (T v)(anchor), started from v = 0
// (or `initial`), until span(v_{k+1} - v_k) < tol.
//
// Throws AssumptionFailure when a transition entry is zero (kappa infinite)
// and ConvergenceFailure when max_iter is exhausted.
SolveResult solve_optimality(const GameInstance& game, Player player,
                             const StationaryStrategy& opponent,
                             const SolveOptions& options = {},
                             std::span<const double> initial = {});

// Largest observed span(T v1 - T v2) / span(v1 - v2) over n_pairs random
// pairs with entries drawn uniformly from [0, span_cap].
// Single-action instance in which both strategies are frozen into the data:
// cost (1/theta) ln c~(x) for both players and kernel P^(x). Solving it for
// either player gives the ergodic cost of `player` under (phi, psi).
GameInstance freeze_pair(const GameInstance& game, Player player,
                         const StationaryStrategy& phi,
                         const StationaryStrategy& psi);

double measured_contraction(const GameInstance& game, Player player,
                            const StationaryStrategy& opponent, int n_pairs,
                            double span_cap, std::uint64_t seed);

}  // namespace rsgame

#endif  // RSGAME_BELLMAN_H_
