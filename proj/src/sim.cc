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

#include "rsgame/sim.h"

#include <algorithm>
#include <cmath>

#include "rsgame/random.h"

namespace rsgame {
namespace {

// Runs one path without recording it; returns the accumulated cost of
// `player`.
double path_cost(const GameInstance& game, Player player,
                 const StationaryStrategy& phi, const StationaryStrategy& psi,
                 int x, int n, Rng& rng) {
  double total = 0.0;
  for (int t = 0; t < n; ++t) {
    const int a = rng.categorical(phi.row(x));
    const int b = rng.categorical(psi.row(x));
    total += game.cost(player, x, a, b);
    x = rng.categorical(game.row(x, a, b));
  }
  return total;
}

void check_inputs(const GameInstance& game, const StationaryStrategy& phi,
                  const StationaryStrategy& psi, int x, int n) {
  check_strategy(game, Player::kOne, phi);
  check_strategy(game, Player::kTwo, psi);
  if (x < 0 || x >= game.n_states()) throw InvalidArgument("state out of range");
  if (n < 1) throw InvalidArgument("horizon must be >= 1");
}

}  // namespace

Trajectory sample_path(const GameInstance& game, const StationaryStrategy& phi,
                       const StationaryStrategy& psi, int x0, int n,
                       std::uint64_t seed) {
  check_inputs(game, phi, psi, x0, n);
  Rng rng(seed);
  Trajectory tr;
  tr.states.reserve(n + 1);
  tr.actions_a.reserve(n);
  tr.actions_b.reserve(n);
  int x = x0;
  tr.states.push_back(x);
  for (int t = 0; t < n; ++t) {
    const int a = rng.categorical(phi.row(x));
    const int b = rng.categorical(psi.row(x));
    tr.actions_a.push_back(a);
    tr.actions_b.push_back(b);
    tr.cost_sum1 += game.cost(Player::kOne, x, a, b);
    tr.cost_sum2 += game.cost(Player::kTwo, x, a, b);
    x = rng.categorical(game.row(x, a, b));
    tr.states.push_back(x);
  }
  return tr;
}

McEstimate mc_cost_estimate(const GameInstance& game, Player player,
                            const StationaryStrategy& phi,
                            const StationaryStrategy& psi, int x, int n,
                            long n_paths, std::uint64_t seed, int threads) {
  check_inputs(game, phi, psi, x, n);
  if (n_paths < 1) throw InvalidArgument("n_paths must be >= 1");
  Vector exponents(static_cast<std::size_t>(n_paths));
  parallel_for(exponents.size(), threads, [&](std::size_t j) {
    Rng rng(substream_seed(seed, j));
    exponents[j] = game.theta() * path_cost(game, player, phi, psi, x, n, rng);
  });

  // Fixed-order reduction: mean and variance of exp(e_j - m).
  const double m = *std::max_element(exponents.begin(), exponents.end());
  double sum = 0.0;
  for (double e : exponents) sum += std::exp(e - m);
  const double count = static_cast<double>(n_paths);
  const double mean = sum / count;
  double sq = 0.0;
  for (double e : exponents) {
    const double d = std::exp(e - m) - mean;
    sq += d * d;
  }
  const double var = n_paths > 1 ? sq / (count - 1.0) : 0.0;

  McEstimate est;
  est.value = (m + std::log(mean)) / n;
  // d ln(mean) = d mean / mean.
  est.std_error = std::sqrt(var / count) / mean / n;
  est.n_paths = n_paths;
  est.horizon = n;
  est.seed = seed;
  return est;
}

}  // namespace rsgame
