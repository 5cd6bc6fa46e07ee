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

#include "rsgame/transforms.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace rsgame {
namespace {

void check_mix(const GameInstance& game, std::span<const double> phi,
               std::span<const double> psi) {
  if (phi.size() != static_cast<std::size_t>(game.n_actions_a()) ||
      psi.size() != static_cast<std::size_t>(game.n_actions_b())) {
    throw InvalidArgument("mixed action has the wrong number of entries");
  }
  if (!on_simplex(phi) || !on_simplex(psi)) {
    throw InvalidArgument("mixed action is not a probability vector");
  }
}

void check_state(const GameInstance& game, int x) {
  if (x < 0 || x >= game.n_states()) throw InvalidArgument("state out of range");
}

}  // namespace

double log_sum_exp(std::span<const double> xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : xs) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : xs) s += std::exp(v - m);
  return m + std::log(s);
}

double log_weighted_sum_exp(std::span<const double> xs,
                            std::span<const double> weights) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (weights[i] > 0.0) m = std::max(m, xs[i]);
  }
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (weights[i] > 0.0) s += weights[i] * std::exp(xs[i] - m);
  }
  return m + std::log(s);
}

bool on_simplex(std::span<const double> p, double tol) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) return false;
    sum += v;
  }
  return std::abs(sum - 1.0) <= tol;
}

double TwistedKernel::total(int x, int a, int b) const {
  double s = 0.0;
  for (double v : row(x, a, b)) s += v;
  return s;
}

TwistedKernel twist(const GameInstance& game, Player player) {
  TwistedKernel k;
  k.player = player;
  k.n_states = game.n_states();
  k.n_actions_a = game.n_actions_a();
  k.n_actions_b = game.n_actions_b();
  k.table.resize(game.transition().size());
  const int ns = game.n_states();
  for (int x = 0; x < ns; ++x) {
    for (int a = 0; a < k.n_actions_a; ++a) {
      for (int b = 0; b < k.n_actions_b; ++b) {
        const double w = std::exp(game.theta() * game.cost(player, x, a, b));
        const std::size_t t = game.tuple_index(x, a, b) * ns;
        for (int y = 0; y < ns; ++y) {
          k.table[t + y] = w * game.prob(x, a, b, y);
        }
      }
    }
  }
  return k;
}

double log_normalizer(const GameInstance& game, Player player, int x,
                      std::span<const double> phi,
                      std::span<const double> psi) {
  check_state(game, x);
  check_mix(game, phi, psi);
  const int na = game.n_actions_a();
  const int nb = game.n_actions_b();
  Vector exponents(static_cast<std::size_t>(na) * nb);
  Vector weights(exponents.size());
  for (int a = 0; a < na; ++a) {
    for (int b = 0; b < nb; ++b) {
      exponents[a * nb + b] = game.theta() * game.cost(player, x, a, b);
      weights[a * nb + b] = phi[a] * psi[b];
    }
  }
  return log_weighted_sum_exp(exponents, weights);
}

double normalizer(const GameInstance& game, Player player, int x,
                  std::span<const double> phi, std::span<const double> psi) {
  return std::exp(log_normalizer(game, player, x, phi, psi));
}

MixedEvaluation normalized_kernel(const GameInstance& game, Player player,
                                  int x, std::span<const double> phi,
                                  std::span<const double> psi) {
  MixedEvaluation e;
  e.x = x;
  e.phi.assign(phi.begin(), phi.end());
  e.psi.assign(psi.begin(), psi.end());
  e.c_hat = log_normalizer(game, player, x, phi, psi);
  e.c_tilde = std::exp(e.c_hat);
  e.p_hat.assign(game.n_states(), 0.0);
  for (int a = 0; a < game.n_actions_a(); ++a) {
    for (int b = 0; b < game.n_actions_b(); ++b) {
      const double w = phi[a] * psi[b];
      if (w == 0.0) continue;
      // Weights exp(theta c - ch) phi psi sum to one.
      const double scale =
          w * std::exp(game.theta() * game.cost(player, x, a, b) - e.c_hat);
      const auto r = game.row(x, a, b);
      for (int y = 0; y < game.n_states(); ++y) e.p_hat[y] += scale * r[y];
    }
  }
  return e;
}

Vector twisted_measure(std::span<const double> p_hat,
                       std::span<const double> v) {
  if (p_hat.size() != v.size() || p_hat.empty()) {
    throw InvalidArgument("twisted_measure: size mismatch");
  }
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t y = 0; y < v.size(); ++y) {
    if (!std::isfinite(v[y])) throw InvalidArgument("v must be finite");
    if (p_hat[y] > 0.0) m = std::max(m, v[y]);
  }
  if (!std::isfinite(m)) {
    throw InvalidArgument("twisted_measure: base measure has no mass");
  }
  Vector mu(v.size(), 0.0);
  double total = 0.0;
  for (std::size_t y = 0; y < v.size(); ++y) {
    if (p_hat[y] > 0.0) {
      mu[y] = p_hat[y] * std::exp(v[y] - m);
      total += mu[y];
    }
  }
  for (double& u : mu) u /= total;
  return mu;
}

double relative_entropy(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) throw InvalidArgument("relative_entropy: sizes");
  double s = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) return std::numeric_limits<double>::infinity();
    s += p[i] * std::log(p[i] / q[i]);
  }
  // Rounding can leave a tiny negative value when p == q.
  return std::max(s, 0.0);
}

Vector mix_transition(const GameInstance& game, int x,
                      std::span<const double> phi,
                      std::span<const double> psi) {
  check_state(game, x);
  check_mix(game, phi, psi);
  Vector out(game.n_states(), 0.0);
  for (int a = 0; a < game.n_actions_a(); ++a) {
    for (int b = 0; b < game.n_actions_b(); ++b) {
      const double w = phi[a] * psi[b];
      if (w == 0.0) continue;
      const auto r = game.row(x, a, b);
      for (int y = 0; y < game.n_states(); ++y) out[y] += w * r[y];
    }
  }
  return out;
}

double log_expectation_exp(std::span<const double> p,
                           std::span<const double> v) {
  return log_weighted_sum_exp(v, p);
}

double dual_objective(std::span<const double> v, std::span<const double> mu,
                      std::span<const double> p) {
  const double ent = relative_entropy(mu, p);
  if (std::isinf(ent)) return -std::numeric_limits<double>::infinity();
  double lin = 0.0;
  for (std::size_t y = 0; y < v.size(); ++y) lin += v[y] * mu[y];
  return lin - ent;
}

}  // namespace rsgame
