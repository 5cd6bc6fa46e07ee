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

// Exponential-cost transformations of the transition law.
//
// For player i and mixed actions (phi, psi) in state x:
//   twisted kernel   Pt_i(y|x,a,b)   = exp(theta c_i(x,a,b)) P(y|x,a,b)
//   normalizer       ct_i(x,phi,psi) = sum_ab exp(theta c_i) phi(a) psi(b)
//   normalized law   Ph_i(y|x,phi,psi) = sum_ab Pt_i(y|x,a,b) phi psi / ct_i
//   log-normalizer   ch_i = ln ct_i
// Sums of exponentials are evaluated in log space.

#ifndef RSGAME_TRANSFORMS_H_
#define RSGAME_TRANSFORMS_H_

#include <span>

#include "rsgame/common.h"
#include "rsgame/game_model.h"

namespace rsgame {

struct TwistedKernel {
  Player player = Player::kOne;
  int n_states = 0;
  int n_actions_a = 0;
  int n_actions_b = 0;
  Vector table;  // [x][a][b][y]

  std::span<const double> row(int x, int a, int b) const {
    const std::size_t t =
        (static_cast<std::size_t>(x) * n_actions_a + a) * n_actions_b + b;
    return {table.data() + t * n_states, static_cast<std::size_t>(n_states)};
  }
  double total(int x, int a, int b) const;
};

struct MixedEvaluation {
  int x = 0;
  Vector phi;
  Vector psi;
  double c_tilde = 1.0;
  double c_hat = 0.0;
  Vector p_hat;
};

TwistedKernel twist(const GameInstance& game, Player player);

// ln ct_i(x, phi, psi).
double log_normalizer(const GameInstance& game, Player player, int x,
                      std::span<const double> phi, std::span<const double> psi);
// ct_i(x, phi, psi); lies in [1, exp(theta c_bar)].
double normalizer(const GameInstance& game, Player player, int x,
                  std::span<const double> phi, std::span<const double> psi);

MixedEvaluation normalized_kernel(const GameInstance& game, Player player,
                                  int x, std::span<const double> phi,
                                  std::span<const double> psi);

// mu(y) proportional to exp(v(y)) p_hat(y). This measure attains the
// supremum in the entropy dual of ln sum_y exp(v(y)) p_hat(y).
Vector twisted_measure(std::span<const double> p_hat,
                       std::span<const double> v);

// Kullback-Leibler divergence sum p ln(p/q); +inf when p is not absolutely
// continuous with respect to q.
double relative_entropy(std::span<const double> p, std::span<const double> q);

// sum_ab P(.|x,a,b) phi(a) psi(b).
Vector mix_transition(const GameInstance& game, int x,
                      std::span<const double> phi,
                      std::span<const double> psi);

// ln sum_y p(y) exp(v(y)).
double log_expectation_exp(std::span<const double> p,
                           std::span<const double> v);

// int v dmu - I(mu, p): the objective maximized in the entropy dual.
double dual_objective(std::span<const double> v, std::span<const double> mu,
                      std::span<const double> p);

}  // namespace rsgame

#endif  // RSGAME_TRANSFORMS_H_
