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

#include "rsgame/game_model.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "rsgame/random.h"

namespace rsgame {
namespace {

std::string tuple_str(int x, int a, int b) {
  std::ostringstream os;
  os << "(x=" << x << ",a=" << a << ",b=" << b << ")";
  return os.str();
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidArgument(what);
}

void require_size(const Vector& v, std::size_t n, const char* name) {
  if (v.size() != n) {
    std::ostringstream os;
    os << name << ": expected " << n << " entries, got " << v.size();
    throw InvalidArgument(os.str());
  }
}

void add_violation(AssumptionCheck& check, const ValidationOptions& options,
                   std::size_t& count, std::string v) {
  ++count;
  if (check.violations.size() < options.max_listed_violations) {
    check.violations.push_back(std::move(v));
  }
}

}  // namespace

Player player_from_int(int p) {
  if (p == 1) return Player::kOne;
  if (p == 2) return Player::kTwo;
  throw InvalidArgument("player must be 1 or 2, got " + std::to_string(p));
}

void AratStructure::check_dimensions() const {
  require(n_states > 0 && n_actions_a > 0 && n_actions_b > 0,
          "arat: dimensions must be positive");
  const auto ns = static_cast<std::size_t>(n_states);
  require_size(p1, ns * n_actions_a * ns, "arat.p1");
  require_size(p2, ns * n_actions_b * ns, "arat.p2");
  require_size(c11, ns * n_actions_a, "arat.c11");
  require_size(c21, ns * n_actions_a, "arat.c21");
  require_size(c12, ns * n_actions_b, "arat.c12");
  require_size(c22, ns * n_actions_b, "arat.c22");
}

GameInstance::GameInstance(int n_states, int n_actions_a, int n_actions_b,
                           Vector transition, Vector cost1, Vector cost2,
                           double theta, int anchor_state,
                           std::optional<AratStructure> arat)
    : n_states_(n_states),
      n_actions_a_(n_actions_a),
      n_actions_b_(n_actions_b),
      transition_(std::move(transition)),
      cost1_(std::move(cost1)),
      cost2_(std::move(cost2)),
      theta_(theta),
      anchor_state_(anchor_state),
      arat_(std::move(arat)) {
  require(n_states_ > 0 && n_actions_a_ > 0 && n_actions_b_ > 0,
          "dimensions must be positive");
  const std::size_t tuples = static_cast<std::size_t>(n_states_) *
                             n_actions_a_ * n_actions_b_;
  require_size(transition_, tuples * n_states_, "transition");
  require_size(cost1_, tuples, "cost1");
  require_size(cost2_, tuples, "cost2");
  require(std::isfinite(theta_) && theta_ > 0.0, "theta must be positive");
  require(anchor_state_ >= 0 && anchor_state_ < n_states_,
          "anchor_state out of range");

  for (int x = 0; x < n_states_; ++x) {
    for (int a = 0; a < n_actions_a_; ++a) {
      for (int b = 0; b < n_actions_b_; ++b) {
        double sum = 0.0;
        for (double p : row(x, a, b)) {
          require(std::isfinite(p) && p >= 0.0,
                  "transition " + tuple_str(x, a, b) +
                      ": entries must be finite and nonnegative");
          sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
          std::ostringstream os;
          os.precision(17);
          os << "transition " << tuple_str(x, a, b) << ": row sums to " << sum;
          throw InvalidArgument(os.str());
        }
      }
    }
  }
  for (const Vector* c : {&cost1_, &cost2_}) {
    for (double v : *c) {
      require(std::isfinite(v) && v >= 0.0, "costs must be finite and >= 0");
      c_bar_ = std::max(c_bar_, v);
    }
  }
  if (arat_) {
    arat_->check_dimensions();
    require(arat_->n_states == n_states_ && arat_->n_actions_a == n_actions_a_ &&
                arat_->n_actions_b == n_actions_b_,
            "arat dimensions differ from the instance");
  }
}

double GameInstance::min_entry() const {
  return *std::min_element(transition_.begin(), transition_.end());
}

GameInstance GameInstance::with_theta(double theta) const {
  return GameInstance(n_states_, n_actions_a_, n_actions_b_, transition_,
                      cost1_, cost2_, theta, anchor_state_, arat_);
}

StationaryStrategy::StationaryStrategy(int n_states, int n_actions, Vector rows)
    : n_states_(n_states), n_actions_(n_actions), rows_(std::move(rows)) {
  require(n_states_ > 0 && n_actions_ > 0,
          "strategy dimensions must be positive");
  require_size(rows_, static_cast<std::size_t>(n_states_) * n_actions_,
               "strategy rows");
  for (int x = 0; x < n_states_; ++x) {
    double* r = rows_.data() + static_cast<std::size_t>(x) * n_actions_;
    double sum = 0.0;
    for (int a = 0; a < n_actions_; ++a) {
      require(std::isfinite(r[a]) && r[a] >= 0.0,
              "strategy row " + std::to_string(x) + " has a negative entry");
      sum += r[a];
    }
    require(std::abs(sum - 1.0) <= kRowSumTolerance,
            "strategy row " + std::to_string(x) + " does not sum to 1");
    if (sum != 1.0) {
      for (int a = 0; a < n_actions_; ++a) r[a] /= sum;
    }
  }
}

StationaryStrategy StationaryStrategy::uniform(int n_states, int n_actions) {
  require(n_actions > 0, "strategy dimensions must be positive");
  return StationaryStrategy(
      n_states, n_actions,
      Vector(static_cast<std::size_t>(n_states) * n_actions, 1.0 / n_actions));
}

StationaryStrategy StationaryStrategy::pure(std::span<const int> actions,
                                            int n_actions) {
  Vector rows(actions.size() * static_cast<std::size_t>(n_actions), 0.0);
  for (std::size_t x = 0; x < actions.size(); ++x) {
    require(actions[x] >= 0 && actions[x] < n_actions,
            "pure strategy action out of range");
    rows[x * n_actions + actions[x]] = 1.0;
  }
  return StationaryStrategy(static_cast<int>(actions.size()), n_actions,
                            std::move(rows));
}

StationaryStrategy StationaryStrategy::mix(const StationaryStrategy& from,
                                           const StationaryStrategy& to,
                                           double weight) {
  require(from.n_states_ == to.n_states_ && from.n_actions_ == to.n_actions_,
          "cannot mix strategies of different shapes");
  require(weight >= 0.0 && weight <= 1.0, "mixing weight must lie in [0,1]");
  Vector rows(from.rows_.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    rows[i] = (1.0 - weight) * from.rows_[i] + weight * to.rows_[i];
  }
  return StationaryStrategy(from.n_states_, from.n_actions_, std::move(rows));
}

std::vector<int> StationaryStrategy::support(int x) const {
  std::vector<int> out;
  for (int a = 0; a < n_actions_; ++a) {
    if (prob(x, a) > 0.0) out.push_back(a);
  }
  return out;
}

void check_strategy(const GameInstance& game, Player player,
                    const StationaryStrategy& s) {
  if (s.n_states() != game.n_states() ||
      s.n_actions() != game.n_actions(player)) {
    std::ostringstream os;
    os << "strategy for player " << player_index(player) << " has shape "
       << s.n_states() << "x" << s.n_actions() << ", expected "
       << game.n_states() << "x" << game.n_actions(player);
    throw InvalidArgument(os.str());
  }
}

bool ModelDiagnostics::passed() const {
  return first_failure() == nullptr;
}

const AssumptionCheck* ModelDiagnostics::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return &c;
  }
  return nullptr;
}

double compute_delta(const GameInstance& game) {
  const int ns = game.n_states();
  const std::size_t tuples = static_cast<std::size_t>(ns) *
                             game.n_actions_a() * game.n_actions_b();
  const Vector& p = game.transition();
  double worst = 0.0;
  for (std::size_t i = 0; i < tuples; ++i) {
    for (std::size_t j = i + 1; j < tuples; ++j) {
      double tv = 0.0;
      for (int y = 0; y < ns; ++y) tv += std::abs(p[i * ns + y] - p[j * ns + y]);
      worst = std::max(worst, tv);
    }
  }
  return 0.5 * worst;
}

double compute_kappa(const GameInstance& game) {
  double kappa = 1.0;
  for (int a = 0; a < game.n_actions_a(); ++a) {
    for (int b = 0; b < game.n_actions_b(); ++b) {
      for (int y = 0; y < game.n_states(); ++y) {
        double hi = 0.0;
        double lo = std::numeric_limits<double>::infinity();
        for (int x = 0; x < game.n_states(); ++x) {
          hi = std::max(hi, game.prob(x, a, b, y));
          lo = std::min(lo, game.prob(x, a, b, y));
        }
        if (lo <= 0.0) return std::numeric_limits<double>::infinity();
        kappa = std::max(kappa, hi / lo);
      }
    }
  }
  return kappa;
}

ModelDiagnostics validate(const GameInstance& game,
                          const ValidationOptions& options) {
  if (!(options.min_prob > 0.0)) {
    throw InvalidArgument("min_prob must be positive");
  }
  ModelDiagnostics d;
  d.theta = game.theta();
  d.c_bar = game.c_bar();
  d.min_prob = options.min_prob;
  d.min_entry = game.min_entry();
  d.delta = compute_delta(game);
  d.kappa = compute_kappa(game);
  d.span_bound = std::log(d.kappa) + 3.0 * game.theta() * d.c_bar;

  const int ns = game.n_states();
  const int na = game.n_actions_a();
  const int nb = game.n_actions_b();

  // Continuity in actions is automatic for finite action sets.
  d.checks.push_back({"Assumption 1",
                      "transition law continuous in actions (finite A, B)",
                      true, "", {}});

  {
    AssumptionCheck c{"Assumption 2(i)",
                      "delta < 1: transition rows pairwise overlap", true, "",
                      {}};
    if (!(d.delta < 1.0)) {
      c.passed = false;
      std::ostringstream os;
      os.precision(17);
      os << "Assumption 2(i): delta >= 1 (delta = " << d.delta << ")";
      c.message = os.str();
      std::size_t count = 0;
      for (int x = 0; x < ns; ++x)
        for (int a = 0; a < na; ++a)
          for (int b = 0; b < nb; ++b)
            for (int x2 = 0; x2 < ns; ++x2)
              for (int a2 = 0; a2 < na; ++a2)
                for (int b2 = 0; b2 < nb; ++b2) {
                  if (game.tuple_index(x2, a2, b2) <= game.tuple_index(x, a, b))
                    continue;
                  double tv = 0.0;
                  for (int y = 0; y < ns; ++y)
                    tv += std::abs(game.prob(x, a, b, y) -
                                   game.prob(x2, a2, b2, y));
                  if (0.5 * tv >= 1.0) {
                    add_violation(c, options, count,
                                  tuple_str(x, a, b) + " vs " +
                                      tuple_str(x2, a2, b2));
                  }
                }
    }
    d.checks.push_back(std::move(c));
  }

  {
    AssumptionCheck c{"Assumption 2(ii)",
                      "every transition probability >= min_prob", true, "",
                      {}};
    std::size_t count = 0;
    for (int x = 0; x < ns; ++x)
      for (int a = 0; a < na; ++a)
        for (int b = 0; b < nb; ++b)
          for (int y = 0; y < ns; ++y) {
            if (game.prob(x, a, b, y) < options.min_prob) {
              add_violation(c, options, count,
                            tuple_str(x, a, b) + " -> y=" + std::to_string(y));
            }
          }
    if (count > 0) {
      c.passed = false;
      std::ostringstream os;
      os.precision(17);
      os << "Assumption 2(ii): " << count
         << " transition entries below min_prob = " << options.min_prob;
      c.message = os.str();
    }
    d.checks.push_back(std::move(c));
  }

  // The counting measure dominates every row, so the density assumption
  // reduces to the finiteness of kappa.
  {
    AssumptionCheck c{"Assumption 3",
                      "kappa = sup P(y|x,a,b)/P(y|x',a,b) < infinity", true,
                      "", {}};
    if (!std::isfinite(d.kappa)) {
      c.passed = false;
      c.message = "Assumption 3: kappa infinite (zero transition entry)";
      std::size_t count = 0;
      for (int x = 0; x < ns; ++x)
        for (int a = 0; a < na; ++a)
          for (int b = 0; b < nb; ++b)
            for (int y = 0; y < ns; ++y)
              if (game.prob(x, a, b, y) <= 0.0)
                add_violation(c, options, count,
                              tuple_str(x, a, b) + " -> y=" + std::to_string(y));
    }
    d.checks.push_back(std::move(c));
  }

  if (const auto& arat = game.arat()) {
    AssumptionCheck tc{"Assumption 4.1",
                       "P(.|x,a,b) = p1(.|x,a) + p2(.|x,b) with substochastic "
                       "p1, p2",
                       true, "", {}};
    AssumptionCheck cc{"Assumption 4.2",
                       "c_i(x,a,b) = c_i1(x,a) + c_i2(x,b)", true, "", {}};
    std::size_t tcount = 0;
    std::size_t ccount = 0;
    for (double v : arat->p1)
      if (v < 0.0) add_violation(tc, options, tcount, "negative p1 entry");
    for (double v : arat->p2)
      if (v < 0.0) add_violation(tc, options, tcount, "negative p2 entry");
    for (int x = 0; x < ns; ++x) {
      for (int a = 0; a < na; ++a) {
        for (int b = 0; b < nb; ++b) {
          for (int y = 0; y < ns; ++y) {
            const double split = arat->p1_at(x, a, y) + arat->p2_at(x, b, y);
            if (std::abs(split - game.prob(x, a, b, y)) > kAratTolerance) {
              add_violation(tc, options, tcount,
                            tuple_str(x, a, b) + " -> y=" + std::to_string(y));
            }
          }
          for (Player p : {Player::kOne, Player::kTwo}) {
            const double split =
                arat->cost_a(p, x, a) + arat->cost_b(p, x, b);
            if (std::abs(split - game.cost(p, x, a, b)) > kAratTolerance) {
              add_violation(cc, options, ccount,
                            "c" + std::to_string(player_index(p)) +
                                tuple_str(x, a, b));
            }
          }
        }
      }
    }
    if (tcount > 0) {
      tc.passed = false;
      tc.message = "Assumption 4.1: additive transition split fails at " +
                   std::to_string(tcount) + " entries";
    }
    if (ccount > 0) {
      cc.passed = false;
      cc.message = "Assumption 4.2: separable cost split fails at " +
                   std::to_string(ccount) + " entries";
    }
    d.checks.push_back(std::move(tc));
    d.checks.push_back(std::move(cc));
  }
  return d;
}

GameInstance assemble_from_arat(const AratStructure& arat, double theta,
                                int anchor_state) {
  arat.check_dimensions();
  const int ns = arat.n_states;
  const int na = arat.n_actions_a;
  const int nb = arat.n_actions_b;
  for (const Vector* t : {&arat.p1, &arat.p2}) {
    for (double v : *t) {
      require(std::isfinite(v) && v >= 0.0, "arat kernels must be nonnegative");
    }
  }
  const std::size_t tuples = static_cast<std::size_t>(ns) * na * nb;
  Vector transition(tuples * ns);
  Vector cost1(tuples);
  Vector cost2(tuples);
  std::size_t t = 0;
  for (int x = 0; x < ns; ++x) {
    for (int a = 0; a < na; ++a) {
      for (int b = 0; b < nb; ++b, ++t) {
        double sum = 0.0;
        for (int y = 0; y < ns; ++y) {
          const double p = arat.p1_at(x, a, y) + arat.p2_at(x, b, y);
          transition[t * ns + y] = p;
          sum += p;
        }
        if (std::abs(sum - 1.0) > kRowSumTolerance) {
          throw InvalidArgument("arat: combined row " + tuple_str(x, a, b) +
                                " does not sum to 1");
        }
        cost1[t] = arat.cost_a(Player::kOne, x, a) +
                   arat.cost_b(Player::kOne, x, b);
        cost2[t] = arat.cost_a(Player::kTwo, x, a) +
                   arat.cost_b(Player::kTwo, x, b);
      }
    }
  }
  return GameInstance(ns, na, nb, std::move(transition), std::move(cost1),
                      std::move(cost2), theta, anchor_state, arat);
}

namespace {

// A probability row with every entry >= floor: floor plus a Dirichlet(1)
// draw scaled into the remaining mass.
Vector floored_row(Rng& rng, int n, double floor) {
  Vector q(n);
  double sum = 0.0;
  for (double& v : q) {
    v = rng.exponential();
    sum += v;
  }
  const double free_mass = 1.0 - n * floor;
  for (double& v : q) v = floor + free_mass * (v / sum);
  return q;
}

}  // namespace

GameInstance random_instance(std::uint64_t seed,
                             const RandomInstanceOptions& o) {
  require(o.n_states > 0 && o.n_actions_a > 0 && o.n_actions_b > 0,
          "dimensions must be positive");
  require(o.min_prob > 0.0, "min_prob must be positive");
  require(o.min_prob * o.n_states < 1.0,
          "infeasible min_prob: min_prob * n_states must be < 1");
  require(o.c_bar >= 0.0, "c_bar must be nonnegative");
  Rng rng(seed);
  const int ns = o.n_states;
  const int na = o.n_actions_a;
  const int nb = o.n_actions_b;

  if (o.arat) {
    AratStructure arat;
    arat.n_states = ns;
    arat.n_actions_a = na;
    arat.n_actions_b = nb;
    arat.p1.resize(static_cast<std::size_t>(ns) * na * ns);
    arat.p2.resize(static_cast<std::size_t>(ns) * nb * ns);
    for (int x = 0; x < ns; ++x) {
      // Player 1 controls a fixed share of the mass in each state.
      const double share = rng.uniform(0.2, 0.8);
      for (int a = 0; a < na; ++a) {
        const Vector r = floored_row(rng, ns, o.min_prob);
        for (int y = 0; y < ns; ++y) {
          arat.p1[(static_cast<std::size_t>(x) * na + a) * ns + y] =
              share * r[y];
        }
      }
      for (int b = 0; b < nb; ++b) {
        const Vector r = floored_row(rng, ns, o.min_prob);
        for (int y = 0; y < ns; ++y) {
          arat.p2[(static_cast<std::size_t>(x) * nb + b) * ns + y] =
              (1.0 - share) * r[y];
        }
      }
    }
    auto draw = [&](std::size_t n) {
      Vector v(n);
      for (double& c : v) c = rng.uniform(0.0, 0.5 * o.c_bar);
      return v;
    };
    arat.c11 = draw(static_cast<std::size_t>(ns) * na);
    arat.c21 = draw(static_cast<std::size_t>(ns) * na);
    arat.c12 = draw(static_cast<std::size_t>(ns) * nb);
    arat.c22 = draw(static_cast<std::size_t>(ns) * nb);
    return assemble_from_arat(arat, o.theta, o.anchor_state);
  }

  const std::size_t tuples = static_cast<std::size_t>(ns) * na * nb;
  Vector transition;
  transition.reserve(tuples * ns);
  for (std::size_t t = 0; t < tuples; ++t) {
    const Vector r = floored_row(rng, ns, o.min_prob);
    transition.insert(transition.end(), r.begin(), r.end());
  }
  Vector cost1(tuples);
  Vector cost2(tuples);
  for (double& c : cost1) c = rng.uniform(0.0, o.c_bar);
  for (double& c : cost2) c = rng.uniform(0.0, o.c_bar);
  return GameInstance(ns, na, nb, std::move(transition), std::move(cost1),
                      std::move(cost2), o.theta, o.anchor_state);
}

GameInstance g2_fixture() {
  AratStructure arat;
  arat.n_states = 2;
  arat.n_actions_a = 2;
  arat.n_actions_b = 2;
  arat.p1.resize(8);
  arat.p2.resize(8);
  arat.c11.resize(4);
  arat.c21.resize(4);
  arat.c12.resize(4);
  arat.c22.resize(4);
  for (int x = 0; x < 2; ++x) {
    for (int u = 0; u < 2; ++u) {
      const int k = x * 2 + u;
      arat.p1[k * 2 + 0] = 0.1 + 0.1 * u + 0.1 * x;
      arat.p1[k * 2 + 1] = 0.4 - 0.1 * u - 0.1 * x;
      arat.p2[k * 2 + 0] = 0.1 + 0.2 * u;
      arat.p2[k * 2 + 1] = 0.4 - 0.2 * u;
      arat.c11[k] = 0.5 * x + 0.3 * u;
      arat.c21[k] = 0.4 * u;
      arat.c12[k] = 0.2 * u;
      arat.c22[k] = 0.5 * (1 - u) + 0.1 * x;
    }
  }
  return assemble_from_arat(arat, 1.0, 0);
}

}  // namespace rsgame
