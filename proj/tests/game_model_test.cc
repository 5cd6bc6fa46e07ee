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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <string>

#include "oracles.h"
#include "rsgame/game_model.h"

using namespace rsgame;

namespace {

GameInstance two_state(Vector transition, double theta = 1.0) {
  return GameInstance(2, 1, 1, std::move(transition), {0.0, 0.0}, {0.0, 0.0},
                      theta, 0);
}

const AssumptionCheck& check_named(const ModelDiagnostics& d,
                                   const std::string& id) {
  for (const auto& c : d.checks)
    if (c.id == id) return c;
  FAIL("missing check " << id);
  return d.checks.front();
}

RandomInstanceOptions dims(int ns, int na, int nb) {
  RandomInstanceOptions o;
  o.n_states = ns;
  o.n_actions_a = na;
  o.n_actions_b = nb;
  return o;
}

}  // namespace

TEST_CASE("g2 constants match enumeration") {
  const GameInstance g = g2_fixture();
  CHECK(compute_delta(g) == doctest::Approx(0.4).epsilon(1e-14));
  CHECK(compute_kappa(g) == doctest::Approx(1.5).epsilon(1e-14));
  CHECK(compute_delta(g) == doctest::Approx(oracle::delta(g)).epsilon(1e-14));
  CHECK(compute_kappa(g) == doctest::Approx(oracle::kappa(g)).epsilon(1e-14));
  CHECK(g.c_bar() == doctest::Approx(1.0));
  CHECK(g.min_entry() == doctest::Approx(0.2));
}

TEST_CASE("g2 entries") {
  const GameInstance g = g2_fixture();
  for (int x = 0; x < 2; ++x)
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b) {
        const double p0 = 0.2 + 0.1 * a + 0.2 * b + 0.1 * x;
        CHECK(g.prob(x, a, b, 0) == doctest::Approx(p0).epsilon(1e-15));
        CHECK(g.prob(x, a, b, 1) == doctest::Approx(1 - p0).epsilon(1e-15));
        CHECK(g.cost(Player::kOne, x, a, b) ==
              doctest::Approx(0.5 * x + 0.3 * a + 0.2 * b));
        CHECK(g.cost(Player::kTwo, x, a, b) ==
              doctest::Approx(0.4 * a + 0.5 * (1 - b) + 0.1 * x));
      }
}

TEST_CASE("g2 passes every check") {
  const ModelDiagnostics d = validate(g2_fixture());
  CHECK(d.passed());
  CHECK(d.first_failure() == nullptr);
  REQUIRE(d.checks.size() == 6);
  const char* ids[] = {"Assumption 1",   "Assumption 2(i)", "Assumption 2(ii)",
                       "Assumption 3",   "Assumption 4.1",  "Assumption 4.2"};
  for (int i = 0; i < 6; ++i) CHECK(d.checks[i].id == ids[i]);
  CHECK(d.span_bound ==
        doctest::Approx(std::log(1.5) + 3.0 * 1.0).epsilon(1e-14));
}

TEST_CASE("delta and kappa agree with enumeration on random instances") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const int ns = 1 + static_cast<int>(seed % 4);
    const GameInstance g =
        random_instance(seed, dims(ns, 1 + seed % 3, 1 + (seed / 3) % 3));
    CHECK(compute_delta(g) ==
          doctest::Approx(oracle::delta(g)).epsilon(1e-13));
    CHECK(compute_kappa(g) ==
          doctest::Approx(oracle::kappa(g)).epsilon(1e-13));
  }
}

TEST_CASE("delta and kappa bounds from the smallest entry") {
  for (std::uint64_t seed = 100; seed < 130; ++seed) {
    const GameInstance g = random_instance(seed, dims(3, 2, 3));
    const double m = g.min_entry();
    CHECK(m >= 0.02 - 1e-15);
    CHECK(compute_delta(g) <= 1.0 - g.n_states() * m + 1e-12);
    CHECK(compute_kappa(g) >= 1.0);
    CHECK(compute_kappa(g) <= 1.0 / m + 1e-9);
    CHECK(validate(g).passed());
  }
}

TEST_CASE("kappa is one exactly when transitions ignore the state") {
  CHECK(compute_kappa(two_state({0.3, 0.7, 0.3, 0.7})) == 1.0);
  CHECK(compute_kappa(two_state({0.3, 0.7, 0.4, 0.6})) > 1.0);
}

TEST_CASE("zero entry fails on kappa") {
  const ModelDiagnostics d = validate(two_state({1.0, 0.0, 0.5, 0.5}));
  CHECK_FALSE(d.passed());
  CHECK(std::isinf(d.kappa));
  const auto& c = check_named(d, "Assumption 3");
  CHECK_FALSE(c.passed);
  CHECK(c.message.find("kappa") != std::string::npos);
  CHECK_FALSE(check_named(d, "Assumption 2(ii)").passed);
}

TEST_CASE("disjoint supports give delta one") {
  const ModelDiagnostics d = validate(two_state({1.0, 0.0, 0.0, 1.0}));
  CHECK(d.delta == 1.0);
  const auto& c = check_named(d, "Assumption 2(i)");
  CHECK_FALSE(c.passed);
  CHECK(c.message.find("delta") != std::string::npos);
  CHECK(d.first_failure()->id == "Assumption 2(i)");
}

TEST_CASE("entries below min_prob fail positivity only") {
  const GameInstance g = two_state({0.999, 0.001, 0.5, 0.5});
  ValidationOptions o;
  o.min_prob = 0.01;
  const ModelDiagnostics d = validate(g, o);
  CHECK_FALSE(check_named(d, "Assumption 2(ii)").passed);
  CHECK(check_named(d, "Assumption 2(i)").passed);
  CHECK(check_named(d, "Assumption 3").passed);
  CHECK(validate(g).passed());
}

TEST_CASE("broken ARAT sums fail the split checks") {
  const GameInstance g = g2_fixture();
  AratStructure bad = *g.arat();
  bad.p1[0] += 0.01;
  bad.p1[1] -= 0.01;
  const GameInstance gt(2, 2, 2, g.transition(), g.cost_table(Player::kOne),
                        g.cost_table(Player::kTwo), 1.0, 0, bad);
  const ModelDiagnostics dt = validate(gt);
  CHECK_FALSE(check_named(dt, "Assumption 4.1").passed);
  CHECK(check_named(dt, "Assumption 4.2").passed);
  CHECK(dt.first_failure()->id == "Assumption 4.1");

  AratStructure badc = *g.arat();
  badc.c22[3] += 1e-6;
  const GameInstance gc(2, 2, 2, g.transition(), g.cost_table(Player::kOne),
                        g.cost_table(Player::kTwo), 1.0, 0, badc);
  const ModelDiagnostics dc = validate(gc);
  CHECK(check_named(dc, "Assumption 4.1").passed);
  const auto& c = check_named(dc, "Assumption 4.2");
  CHECK_FALSE(c.passed);
  CHECK(c.violations.size() == 2);
}

TEST_CASE("construction rejects malformed data") {
  CHECK_THROWS_AS(two_state({0.6, 0.6, 0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(two_state({1.2, -0.2, 0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(two_state({0.5, 0.5, 0.5, 0.5}, 0.0), InvalidArgument);
  CHECK_THROWS_AS(two_state({0.5, 0.5, 0.5}), InvalidArgument);
  CHECK_THROWS_AS(GameInstance(2, 1, 1, {0.5, 0.5, 0.5, 0.5}, {-1.0, 0.0},
                               {0.0, 0.0}, 1.0, 0),
                  InvalidArgument);
  CHECK_THROWS_AS(GameInstance(2, 1, 1, {0.5, 0.5, 0.5, 0.5}, {0.0, 0.0},
                               {0.0, 0.0}, 1.0, 2),
                  InvalidArgument);
  CHECK_NOTHROW(two_state({0.5 + 5e-10, 0.5, 0.5, 0.5}));
}

TEST_CASE("strategy rows") {
  const StationaryStrategy s(2, 2, {0.3, 0.7 + 5e-10, 1.0, 0.0});
  CHECK(s.prob(0, 0) + s.prob(0, 1) == doctest::Approx(1.0).epsilon(1e-16));
  CHECK(s.support(1) == std::vector<int>{0});
  CHECK_THROWS_AS(StationaryStrategy(2, 2, {0.3, 0.71, 1.0, 0.0}),
                  InvalidArgument);
  CHECK_THROWS_AS(StationaryStrategy(2, 2, {1.1, -0.1, 1.0, 0.0}),
                  InvalidArgument);
  const int acts[] = {1, 0};
  const auto p = StationaryStrategy::pure(acts, 3);
  CHECK(p.prob(0, 1) == 1.0);
  CHECK(p.prob(1, 0) == 1.0);
  const auto u = StationaryStrategy::uniform(2, 3);
  const auto m = StationaryStrategy::mix(u, p, 0.25);
  CHECK(m.prob(0, 1) == doctest::Approx(0.75 / 3 + 0.25));
  CHECK(m.prob(0, 2) == doctest::Approx(0.75 / 3));
  CHECK_THROWS_AS(check_strategy(g2_fixture(), Player::kOne, u),
                  InvalidArgument);
}

TEST_CASE("random instances are reproducible") {
  const auto o = dims(4, 3, 2);
  CHECK(random_instance(7, o).transition() == random_instance(7, o).transition());
  CHECK(random_instance(7, o).transition() != random_instance(8, o).transition());
  RandomInstanceOptions tight = o;
  tight.min_prob = 0.25;
  CHECK_THROWS_AS(random_instance(1, tight), InvalidArgument);
}

TEST_CASE("random ARAT instances satisfy the split exactly") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    RandomInstanceOptions o = dims(2 + seed % 3, 2, 3);
    o.arat = true;
    const GameInstance g = random_instance(seed, o);
    REQUIRE(g.arat().has_value());
    const ModelDiagnostics d = validate(g);
    CHECK(d.passed());
    CHECK(g.c_bar() <= 1.0);
    CHECK(g.min_entry() >= 0.02 - 1e-15);
  }
}

TEST_CASE("with_theta keeps the data") {
  const GameInstance g = g2_fixture().with_theta(2.5);
  CHECK(g.theta() == 2.5);
  CHECK(g.transition() == g2_fixture().transition());
  CHECK_THROWS_AS(g2_fixture().with_theta(-1.0), InvalidArgument);
}
