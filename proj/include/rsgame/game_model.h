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

#ifndef RSGAME_GAME_MODEL_H_
#define RSGAME_GAME_MODEL_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rsgame/common.h"

namespace rsgame {

// Row sums are accepted within this tolerance when an instance is built.
inline constexpr double kRowSumTolerance = 1e-9;
// Tolerance for the additive transition/cost split.
inline constexpr double kAratTolerance = 1e-12;
inline constexpr double kDefaultMinProb = 1e-6;

// Additive-reward additive-transition decomposition of a game:
//   P(y|x,a,b) = p1(y|x,a) + p2(y|x,b)
//   c_i(x,a,b) = c_i1(x,a) + c_i2(x,b)
// All tables are flat row-major: p1 is [x][a][y], p2 is [x][b][y], c11/c21
// are [x][a] and c12/c22 are [x][b].
struct AratStructure {
  int n_states = 0;
  int n_actions_a = 0;
  int n_actions_b = 0;
  Vector p1, p2;
  Vector c11, c21;
  Vector c12, c22;

  // Throws InvalidArgument when a table has the wrong size.
  void check_dimensions() const;

  double p1_at(int x, int a, int y) const {
    return p1[(static_cast<std::size_t>(x) * n_actions_a + a) * n_states + y];
  }
  double p2_at(int x, int b, int y) const {
    return p2[(static_cast<std::size_t>(x) * n_actions_b + b) * n_states + y];
  }
  // c_{player,1}(x,a): the part of player's cost driven by player 1's action.
  double cost_a(Player player, int x, int a) const {
    const Vector& t = player == Player::kOne ? c11 : c21;
    return t[static_cast<std::size_t>(x) * n_actions_a + a];
  }
  // c_{player,2}(x,b): the part of player's cost driven by player 2's action.
  double cost_b(Player player, int x, int b) const {
    const Vector& t = player == Player::kOne ? c12 : c22;
    return t[static_cast<std::size_t>(x) * n_actions_b + b];
  }

  bool operator==(const AratStructure&) const = default;
};

// A finite two-player stochastic game with risk-sensitive costs.
//
// The constructor enforces the structural invariants: table sizes, finite
// nonnegative probabilities whose rows sum to one within kRowSumTolerance,
// nonnegative costs, theta > 0 and a valid anchor. Positivity of the
// transition law and the ARAT identities are modelling assumptions; they are
// reported by validate() rather than rejected here, so that violating
// instances can still be inspected.
class GameInstance {
 public:
  GameInstance(int n_states, int n_actions_a, int n_actions_b,
               Vector transition, Vector cost1, Vector cost2, double theta,
               int anchor_state, std::optional<AratStructure> arat = {});

  int n_states() const { return n_states_; }
  int n_actions_a() const { return n_actions_a_; }
  int n_actions_b() const { return n_actions_b_; }
  int n_actions(Player p) const {
    return p == Player::kOne ? n_actions_a_ : n_actions_b_;
  }
  double theta() const { return theta_; }
  int anchor_state() const { return anchor_state_; }

  std::size_t tuple_index(int x, int a, int b) const {
    return (static_cast<std::size_t>(x) * n_actions_a_ + a) * n_actions_b_ + b;
  }
  double prob(int x, int a, int b, int y) const {
    return transition_[tuple_index(x, a, b) * n_states_ + y];
  }
  std::span<const double> row(int x, int a, int b) const {
    return {transition_.data() + tuple_index(x, a, b) * n_states_,
            static_cast<std::size_t>(n_states_)};
  }
  double cost(Player p, int x, int a, int b) const {
    return (p == Player::kOne ? cost1_ : cost2_)[tuple_index(x, a, b)];
  }

  const Vector& transition() const { return transition_; }
  const Vector& cost_table(Player p) const {
    return p == Player::kOne ? cost1_ : cost2_;
  }
  const std::optional<AratStructure>& arat() const { return arat_; }

  // Largest cost entry over both players.
  double c_bar() const { return c_bar_; }
  // Smallest transition probability.
  double min_entry() const;

  GameInstance with_theta(double theta) const;

 private:
  int n_states_;
  int n_actions_a_;
  int n_actions_b_;
  Vector transition_;
  Vector cost1_;
  Vector cost2_;
  double theta_;
  int anchor_state_;
  std::optional<AratStructure> arat_;
  double c_bar_ = 0.0;
};

// A time-invariant randomized strategy: one probability row per state.
class StationaryStrategy {
 public:
  StationaryStrategy() = default;
  // Rows must be nonnegative and sum to one within kRowSumTolerance; they
  // are renormalized so each stored row sums to one to machine precision.
  StationaryStrategy(int n_states, int n_actions, Vector rows);

  static StationaryStrategy uniform(int n_states, int n_actions);
  static StationaryStrategy pure(std::span<const int> actions, int n_actions);
  // (1 - weight) * from + weight * to.
  static StationaryStrategy mix(const StationaryStrategy& from,
                                const StationaryStrategy& to, double weight);

  int n_states() const { return n_states_; }
  int n_actions() const { return n_actions_; }
  std::span<const double> row(int x) const {
    return {rows_.data() + static_cast<std::size_t>(x) * n_actions_,
            static_cast<std::size_t>(n_actions_)};
  }
  double prob(int x, int action) const {
    return rows_[static_cast<std::size_t>(x) * n_actions_ + action];
  }
  const Vector& data() const { return rows_; }
  // Actions carrying positive probability in state x.
  std::vector<int> support(int x) const;

  bool operator==(const StationaryStrategy&) const = default;

 private:
  int n_states_ = 0;
  int n_actions_ = 0;
  Vector rows_;
};

// Throws InvalidArgument unless `s` is a strategy for `player` in `game`.
void check_strategy(const GameInstance& game, Player player,
                    const StationaryStrategy& s);

struct AssumptionCheck {
  std::string id;           // e.g. "Assumption 2(i)"
  std::string description;  // what the condition demands
  bool passed = true;
  std::string message;      // failure summary naming the violated quantity
  std::vector<std::string> violations;  // offending index tuples
};

struct ModelDiagnostics {
  double delta = 0.0;
  double kappa = 1.0;
  double c_bar = 0.0;
  double theta = 1.0;
  // ln(kappa) + 3 * theta * c_bar.
  double span_bound = 0.0;
  // Positivity threshold the instance was checked against.
  double min_prob = kDefaultMinProb;
  // Smallest transition probability actually present.
  double min_entry = 0.0;
  std::vector<AssumptionCheck> checks;

  bool passed() const;
  const AssumptionCheck* first_failure() const;
};

struct ValidationOptions {
  double min_prob = kDefaultMinProb;
  std::size_t max_listed_violations = 16;
};

// Evaluates every modelling assumption on a finite instance. The reference
// measure is the counting measure on states, so transition densities are the
// probabilities themselves.
ModelDiagnostics validate(const GameInstance& game,
                          const ValidationOptions& options = {});

// Half the largest total-variation distance between two transition rows,
// maximized over pure (state, action, action) tuples. Mixed strategies
// cannot exceed this value since the distance is convex in each argument.
double compute_delta(const GameInstance& game);

// max over (x, x', y, a, b) of P(y|x,a,b) / P(y|x',a,b); +inf when any
// transition entry is zero.
double compute_kappa(const GameInstance& game);

// Builds the full tensors by adding the two halves of the decomposition.
// Throws InvalidArgument on negative entries or when a combined row is not a
// probability vector.
GameInstance assemble_from_arat(const AratStructure& arat, double theta,
                                int anchor_state);

struct RandomInstanceOptions {
  int n_states = 2;
  int n_actions_a = 2;
  int n_actions_b = 2;
  double min_prob = 0.02;
  bool arat = false;
  double c_bar = 1.0;
  double theta = 1.0;
  int anchor_state = 0;
};

// Reproducible per seed. Every transition entry is at least min_prob; costs
// lie in [0, c_bar]. Throws InvalidArgument if min_prob * n_states >= 1.
GameInstance random_instance(std::uint64_t seed,
                             const RandomInstanceOptions& options);

// Two states, 2x2 actions, theta = 1, anchor 0, with
// P(0|x,a,b) = 0.2 + 0.1a + 0.2b + 0.1x and separable costs.
GameInstance g2_fixture();

}  // namespace rsgame

#endif  // RSGAME_GAME_MODEL_H_
