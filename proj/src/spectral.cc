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

#include "rsgame/spectral.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace rsgame {

TwistedMatrix twisted_matrix(const GameInstance& game, Player player,
                             const StationaryStrategy& phi,
                             const StationaryStrategy& psi) {
  check_strategy(game, Player::kOne, phi);
  check_strategy(game, Player::kTwo, psi);
  const int ns = game.n_states();
  TwistedMatrix q;
  q.player = player;
  q.n = ns;
  q.data.assign(static_cast<std::size_t>(ns) * ns, 0.0);
  for (int x = 0; x < ns; ++x) {
    double* out = q.data.data() + static_cast<std::size_t>(x) * ns;
    for (int a = 0; a < game.n_actions_a(); ++a) {
      for (int b = 0; b < game.n_actions_b(); ++b) {
        const double w = phi.prob(x, a) * psi.prob(x, b);
        if (w == 0.0) continue;
        const double s = w * std::exp(game.theta() * game.cost(player, x, a, b));
        const auto r = game.row(x, a, b);
        for (int y = 0; y < ns; ++y) out[y] += s * r[y];
      }
    }
  }
  return q;
}

PerronResult perron_value(const TwistedMatrix& q,
                          const PerronOptions& options) {
  const int n = q.n;
  if (n < 1 || q.data.size() != static_cast<std::size_t>(n) * n) {
    throw InvalidArgument("perron_value: malformed matrix");
  }
  if (options.anchor < 0 || options.anchor >= n) {
    throw InvalidArgument("perron_value: anchor out of range");
  }
  for (double v : q.data) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw InvalidArgument("perron_value: matrix must be strictly positive");
    }
  }
  Vector w(n, 1.0);
  Vector next(n);
  double r = 0.0;
  PerronResult out;
  for (long k = 1; k <= options.max_iter; ++k) {
    for (int x = 0; x < n; ++x) {
      double s = 0.0;
      for (int y = 0; y < n; ++y) s += q(x, y) * w[y];
      next[x] = s;
    }
    // w has max entry 1, so the max of Q w estimates the Perron root.
    const double r_new = *std::max_element(next.begin(), next.end());
    double moved = 0.0;
    for (int x = 0; x < n; ++x) {
      next[x] /= r_new;
      moved = std::max(moved, std::abs(next[x] - w[x]));
    }
    w.swap(next);
    const bool settled = std::abs(r_new - r) <= options.tol * r_new &&
                         moved <= options.tol;
    r = r_new;
    if (settled) {
      out.iterations = k;
      out.log_radius = std::log(r);
      const double scale = w[options.anchor];
      for (double& u : w) u /= scale;
      out.eigenvector = std::move(w);
      return out;
    }
  }
  std::ostringstream os;
  os << "power iteration did not settle in " << options.max_iter << " steps";
  throw ConvergenceFailure(os.str(), 0.0, options.max_iter);
}

double ergodic_cost(const GameInstance& game, Player player,
                    const StationaryStrategy& phi,
                    const StationaryStrategy& psi) {
  PerronOptions opts;
  opts.anchor = game.anchor_state();
  return perron_value(twisted_matrix(game, player, phi, psi), opts).log_radius;
}

double finite_horizon_growth(const GameInstance& game, Player player,
                             const StationaryStrategy& phi,
                             const StationaryStrategy& psi, int x, int n) {
  if (n < 1) throw InvalidArgument("horizon must be >= 1");
  if (x < 0 || x >= game.n_states()) throw InvalidArgument("state out of range");
  const TwistedMatrix q = twisted_matrix(game, player, phi, psi);
  const int ns = q.n;
  Vector u(ns, 1.0);
  Vector next(ns);
  double log_scale = 0.0;
  for (int step = 0; step < n; ++step) {
    for (int s = 0; s < ns; ++s) {
      double acc = 0.0;
      for (int y = 0; y < ns; ++y) acc += q(s, y) * u[y];
      next[s] = acc;
    }
    const double m = *std::max_element(next.begin(), next.end());
    for (int s = 0; s < ns; ++s) u[s] = next[s] / m;
    log_scale += std::log(m);
  }
  return (log_scale + std::log(u[x])) / n;
}

}  // namespace rsgame
