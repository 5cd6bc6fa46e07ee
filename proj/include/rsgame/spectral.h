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

// Ergodic risk-sensitive cost of a fixed stationary pair.
//
// Under a stationary pair the expected exponential cost is multiplicative:
// E_x[exp(theta sum_{t<n} c)] = (Q^n 1)(x) with
//   Q[x][y] = sum_ab Phi(a|x) Psi(b|x) exp(theta c_i(x,a,b)) P(y|x,a,b).
// For a strictly positive Q the growth rate is ln r(Q), r the Perron root.

#ifndef RSGAME_SPECTRAL_H_
#define RSGAME_SPECTRAL_H_

#include "rsgame/common.h"
#include "rsgame/game_model.h"

namespace rsgame {

struct TwistedMatrix {
  Player player = Player::kOne;
  int n = 0;
  Vector data;  // row-major n x n

  double operator()(int x, int y) const {
    return data[static_cast<std::size_t>(x) * n + y];
  }
};

struct PerronOptions {
  double tol = 1e-12;
  long max_iter = 100000;
  int anchor = 0;  // eigenvector normalized to 1 here
};

struct PerronResult {
  double log_radius = 0.0;
  Vector eigenvector;
  long iterations = 0;
};

TwistedMatrix twisted_matrix(const GameInstance& game, Player player,
                             const StationaryStrategy& phi,
                             const StationaryStrategy& psi);

// Power iteration with max-normalization. Stops once both the eigenvalue
// estimate and the normalized iterate move by less than tol (relative).
// Throws InvalidArgument on a matrix with a nonpositive entry and
// ConvergenceFailure at the iteration cap.
PerronResult perron_value(const TwistedMatrix& q,
                          const PerronOptions& options = {});

// J_i(Phi, Psi) = ln r(Q_i); independent of the start state.
double ergodic_cost(const GameInstance& game, Player player,
                    const StationaryStrategy& phi,
                    const StationaryStrategy& psi);

// (1/n) ln (Q^n 1)(x), computed with per-step rescaling.
double finite_horizon_growth(const GameInstance& game, Player player,
                             const StationaryStrategy& phi,
                             const StationaryStrategy& psi, int x, int n);

}  // namespace rsgame

#endif  // RSGAME_SPECTRAL_H_
