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

#ifndef RSGAME_COMMON_H_
#define RSGAME_COMMON_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rsgame {

using Vector = std::vector<double>;

enum class Player { kOne = 1, kTwo = 2 };

inline int player_index(Player p) { return p == Player::kOne ? 1 : 2; }
inline Player other(Player p) {
  return p == Player::kOne ? Player::kTwo : Player::kOne;
}
Player player_from_int(int p);

// Malformed input: wrong dimensions, rows off the simplex, negative costs.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A modelling assumption needed by a solver does not hold on the instance.
class AssumptionFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative method hit its iteration cap.
class ConvergenceFailure : public std::runtime_error {
 public:
  ConvergenceFailure(const std::string& what, double last_residual,
                     long iterations)
      : std::runtime_error(what),
        last_residual_(last_residual),
        iterations_(iterations) {}
  double last_residual() const { return last_residual_; }
  long iterations() const { return iterations_; }

 private:
  double last_residual_;
  long iterations_;
};

// ln sum_i exp(x_i). Returns -inf for an empty input or all -inf entries.
double log_sum_exp(std::span<const double> xs);

// ln sum_i w_i exp(x_i) for nonnegative weights; zero weights are skipped.
double log_weighted_sum_exp(std::span<const double> xs,
                            std::span<const double> weights);

// Checks a probability vector: entries >= 0 and sum within `tol` of one.
bool on_simplex(std::span<const double> p, double tol = 1e-9);

// Runs body(i) for i in [0, n) on up to `threads` workers. Each index is
// visited exactly once; callers write results into per-index slots.
template <typename Body>
void parallel_for(std::size_t n, int threads, Body&& body);

}  // namespace rsgame

#include "rsgame/internal/parallel.h"

#endif  // RSGAME_COMMON_H_
