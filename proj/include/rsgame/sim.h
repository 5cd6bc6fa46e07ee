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

#ifndef RSGAME_SIM_H_
#define RSGAME_SIM_H_

#include <cstdint>
#include <vector>

#include "rsgame/common.h"
#include "rsgame/game_model.h"

namespace rsgame {

struct Trajectory {
  std::vector<int> states;     // n + 1 entries, states[0] = x0
  std::vector<int> actions_a;  // n entries
  std::vector<int> actions_b;  // n entries
  double cost_sum1 = 0.0;
  double cost_sum2 = 0.0;
};

struct McEstimate {
  double value = 0.0;      // (1/n) ln mean_j exp(theta S_j)
  double std_error = 0.0;  // delta-method standard error of `value`
  long n_paths = 0;
  int horizon = 0;
  std::uint64_t seed = 0;
};

// Samples n steps of the chain from x0. Both players draw their actions
// independently from their stationary rows, then the next state is drawn
// from P(.|x,a,b). Deterministic per seed. No positivity requirement.
Trajectory sample_path(const GameInstance& game, const StationaryStrategy& phi,
                       const StationaryStrategy& psi, int x0, int n,
                       std::uint64_t seed);

// Monte Carlo estimate of (1/n) ln E_x[exp(theta sum_{t<n} c_i)] over
// n_paths paths. Path j uses substream_seed(seed, j), so the estimate does
// not depend on `threads`. The estimator is biased low for finite n_paths.
McEstimate mc_cost_estimate(const GameInstance& game, Player player,
                            const StationaryStrategy& phi,
                            const StationaryStrategy& psi, int x, int n,
                            long n_paths, std::uint64_t seed, int threads = 1);

}  // namespace rsgame

#endif  // RSGAME_SIM_H_
