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

#include "rsgame/bellman.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "rsgame/random.h"
#include "rsgame/transforms.h"

namespace rsgame {
namespace {

// exp(v - max v) together with max v.
struct ShiftedExp {
  Vector ev;
  double shift;
};

ShiftedExp shifted_exp(std::span<const double> v) {
  ShiftedExp s{Vector(v.size()), *std::max_element(v.begin(), v.end())};
  for (std::size_t y = 0; y < v.size(); ++y) s.ev[y] = std::exp(v[y] - s.shift);
  return s;
}

void check_values(const GameInstance& game, std::span<const double> v) {
  if (v.size() != static_cast<std::size_t>(game.n_states())) {
    throw InvalidArgument("value vector has the wrong length");
  }
  for (double u : v) {
    if (!std::isfinite(u)) throw InvalidArgument("value vector must be finite");
  }
}

// Bracket values for every own action at x, with the exponentials of v
// already shifted.
void fill_action_values(const GameInstance& game, Player player,
                        const StationaryStrategy& opponent,
                        const ShiftedExp& e, int x, double* out) {
  const int n_own = game.n_actions(player);
  const int n_opp = game.n_actions(other(player));
  const auto opp_row = opponent.row(x);
  Vector exponents(n_opp);
  for (int u = 0; u < n_own; ++u) {
    for (int w = 0; w < n_opp; ++w) {
      const int a = player == Player::kOne ? u : w;
      const int b = player == Player::kOne ? w : u;
      const auto r = game.row(x, a, b);
      double inner = 0.0;
      for (std::size_t y = 0; y < r.size(); ++y) inner += r[y] * e.ev[y];
      exponents[w] = game.theta() * game.cost(player, x, a, b) + std::log(inner);
    }
    out[u] = log_weighted_sum_exp(exponents, opp_row) + e.shift;
  }
}

void apply_values(const GameInstance& game, Player player,
                  const StationaryStrategy& opponent,
                  std::span<const double> v, Vector& tv, Vector& scratch) {
  const ShiftedExp e = shifted_exp(v);
  const int n_own = game.n_actions(player);
  for (int x = 0; x < game.n_states(); ++x) {
    fill_action_values(game, player, opponent, e, x, scratch.data());
    tv[x] = *std::min_element(scratch.begin(), scratch.begin() + n_own);
  }
}

}  // namespace

double span(std::span<const double> v) {
  if (v.empty()) throw InvalidArgument("span of an empty vector");
  const auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

Vector action_values(const GameInstance& game, Player player,
                     const StationaryStrategy& opponent,
                     std::span<const double> v, int x) {
  check_strategy(game, other(player), opponent);
  check_values(game, v);
  Vector out(game.n_actions(player));
  fill_action_values(game, player, opponent, shifted_exp(v), x, out.data());
  return out;
}

BellmanImage apply_T(const GameInstance& game, Player player,
                     const StationaryStrategy& opponent,
                     std::span<const double> v) {
  check_strategy(game, other(player), opponent);
  check_values(game, v);
  const int ns = game.n_states();
  const int n_own = game.n_actions(player);
  BellmanImage img;
  img.values.resize(ns);
  img.argmins.resize(ns);
  img.action_values.resize(static_cast<std::size_t>(ns) * n_own);
  const ShiftedExp e = shifted_exp(v);
  for (int x = 0; x < ns; ++x) {
    double* q = img.action_values.data() + static_cast<std::size_t>(x) * n_own;
    fill_action_values(game, player, opponent, e, x, q);
    const double best = *std::min_element(q, q + n_own);
    img.values[x] = best;
    for (int u = 0; u < n_own; ++u) {
      if (q[u] - best <= kTieTolerance) img.argmins[x].push_back(u);
    }
  }
  return img;
}

double mixed_objective(const GameInstance& game, Player player, int x,
                       std::span<const double> phi,
                       std::span<const double> psi,
                       std::span<const double> v) {
  check_values(game, v);
  const MixedEvaluation m = normalized_kernel(game, player, x, phi, psi);
  return m.c_hat + log_expectation_exp(m.p_hat, v);
}

double dual_value(const GameInstance& game, Player player, int x,
                  std::span<const double> phi, std::span<const double> psi,
                  std::span<const double> v) {
  check_values(game, v);
  const MixedEvaluation m = normalized_kernel(game, player, x, phi, psi);
  const Vector mu = twisted_measure(m.p_hat, v);
  return m.c_hat + dual_objective(v, mu, m.p_hat);
}

SolveResult solve_optimality(const GameInstance& game, Player player,
                             const StationaryStrategy& opponent,
                             const SolveOptions& options,
                             std::span<const double> initial) {
  check_strategy(game, other(player), opponent);
  if (!(options.tol > 0.0)) throw InvalidArgument("tol must be positive");
  if (options.max_iter < 1) throw InvalidArgument("max_iter must be >= 1");
  if (!(game.min_entry() > 0.0)) {
    throw AssumptionFailure(
        "Assumption 3: kappa infinite (zero transition entry); the optimality "
        "equation has no span-contraction guarantee");
  }
  const int ns = game.n_states();
  const int x0 = game.anchor_state();
  Vector v(ns, 0.0);
  if (!initial.empty()) {
    check_values(game, initial);
    v.assign(initial.begin(), initial.end());
  }

  SolveResult result;
  result.player = player;
  Vector tv(ns);
  Vector diff(ns);
  Vector scratch(game.n_actions(player));
  double residual = std::numeric_limits<double>::infinity();
  long k = 0;
  while (k < options.max_iter) {
    ++k;
    apply_values(game, player, opponent, v, tv, scratch);
    const double anchor_value = tv[x0];
    for (int x = 0; x < ns; ++x) {
      tv[x] -= anchor_value;
      diff[x] = tv[x] - v[x];
    }
    residual = span(diff);
    v.swap(tv);
    if (options.record_trace) result.trace.push_back(residual);
    if (residual < options.tol) break;
  }
  if (!(residual < options.tol)) {
    std::ostringstream os;
    os.precision(17);
    os << "relative value iteration for player " << player_index(player)
       << " did not reach tol " << options.tol << " in " << k
       << " iterations (last residual " << residual << ")";
    throw ConvergenceFailure(os.str(), residual, k);
  }

  BellmanImage img = apply_T(game, player, opponent, v);
  result.rho = img.values[x0];
  for (int x = 0; x < ns; ++x) diff[x] = img.values[x] - v[x];
  result.residual = span(diff);
  result.v = std::move(v);
  result.v[x0] = 0.0;
  result.tied_actions = std::move(img.argmins);
  result.selector.reserve(ns);
  for (const auto& t : result.tied_actions) result.selector.push_back(t.front());
  result.action_values = std::move(img.action_values);
  result.iterations = k;
  return result;
}

double measured_contraction(const GameInstance& game, Player player,
                            const StationaryStrategy& opponent, int n_pairs,
                            double span_cap, std::uint64_t seed) {
  check_strategy(game, other(player), opponent);
  if (n_pairs < 1) throw InvalidArgument("n_pairs must be >= 1");
  if (!(span_cap > 0.0)) throw InvalidArgument("span_cap must be positive");
  const int ns = game.n_states();
  // On one state every value vector is constant; T maps it to a constant.
  if (ns == 1) return 0.0;
  Rng rng(seed);
  Vector v1(ns), v2(ns), d(ns), t1(ns), t2(ns);
  Vector scratch(game.n_actions(player));
  double worst = 0.0;
  for (int i = 0; i < n_pairs; ++i) {
    double denom = 0.0;
    while (denom == 0.0) {
      for (int x = 0; x < ns; ++x) {
        v1[x] = rng.uniform(0.0, span_cap);
        v2[x] = rng.uniform(0.0, span_cap);
        d[x] = v1[x] - v2[x];
      }
      denom = span(d);
    }
    apply_values(game, player, opponent, v1, t1, scratch);
    apply_values(game, player, opponent, v2, t2, scratch);
    for (int x = 0; x < ns; ++x) d[x] = t1[x] - t2[x];
    worst = std::max(worst, span(d) / denom);
  }
  return worst;
}

GameInstance freeze_pair(const GameInstance& game, Player player,
                         const StationaryStrategy& phi,
                         const StationaryStrategy& psi) {
  check_strategy(game, Player::kOne, phi);
  check_strategy(game, Player::kTwo, psi);
  const int n = game.n_states();
  Vector transition;
  Vector cost;
  transition.reserve(static_cast<std::size_t>(n) * n);
  for (int x = 0; x < n; ++x) {
    const MixedEvaluation e =
        normalized_kernel(game, player, x, phi.row(x), psi.row(x));
    cost.push_back(std::max(0.0, e.c_hat / game.theta()));
    transition.insert(transition.end(), e.p_hat.begin(), e.p_hat.end());
  }
  return GameInstance(n, 1, 1, std::move(transition), cost, cost, game.theta(),
                      game.anchor_state());
}

}  // namespace rsgame
