// SPDX-License-Identifier: Apache-2.0
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include <doctest.h>

#include <stdexcept>

#include "oracles.hpp"
#include "uavir/energy.hpp"
#include "uavir/rng.hpp"

using namespace uavir;

TEST_CASE("net power examples") {
  const EnergyBudget b = make_budget(1000, 100, 150, 1, 0.5);
  CHECK(net_power(5.0, 0.3, b) == 150.0);
  CHECK(net_power(0.0, 0.0, b) == 101.0);
  CHECK(net_power(0.0, 0.001, b) == doctest::Approx(100.999).epsilon(1e-15));
}

TEST_CASE("harvest surplus is credited unless capped") {
  EnergyBudget b = make_budget(1000, 100, 150, 0.005, 0.5);
  CHECK(net_power(0.0, 0.02, b) == doctest::Approx(99.985));
  b.cap_harvest_at_reflect = true;
  CHECK(net_power(0.0, 0.02, b) == doctest::Approx(100.0));
  CHECK(net_power(0.0, 0.002, b) == doctest::Approx(100.003));
}

TEST_CASE("net power matches the oracle on random inputs") {
  Rng rng(41);
  for (int i = 0; i < 1000; ++i) {
    const double ph = uniform(rng, 10, 200);
    const double pm = ph + uniform(rng, 1, 100);
    const double pr = uniform(rng, 1e-4, 1);
    const double pe = uniform(rng, 0, 0.1);
    const double v = i % 3 == 0 ? uniform(rng, 0.1, 20) : 0.0;
    const EnergyBudget b = make_budget(1e5, ph, pm, pr, 1);
    CHECK(oracle::rel_err(net_power(v, pe, b), oracle::net_power(v, pe, ph, pm, pr)) < 1e-12);
    CHECK(net_power(v, pe, b) <= pm);
  }
}

TEST_CASE("consume examples") {
  const EnergyBudget b = make_budget(1000, 100, 150, 1, 0.5);
  CHECK(consume(b, 100, 0.1).energy == doctest::Approx(990.0));
  CHECK(consume(b, 0, 0.1).energy == 1000.0);
  CHECK(consume(b, 100, 0.1).initial == 1000.0);
}

TEST_CASE("100 hover slots sum to the closed form") {
  EnergyBudget b = make_budget(432000, 120, 150, 0.005, 7.5);
  const double pe = 0.0037;
  for (int i = 0; i < 100; ++i) b = consume(b, net_power(0.0, pe, b), 0.1);
  const double want = 432000 - 100 * (120 + 0.005 - pe) * 0.1;
  CHECK(oracle::rel_err(b.energy, want) < 1e-9);
}

TEST_CASE("exhaustion is a strict inequality") {
  EnergyBudget b = make_budget(100, 100, 150, 1, 7.5);
  CHECK_FALSE(exhausted(b));
  b.energy = 7.5;
  CHECK_FALSE(exhausted(b));
  b.energy = 7.5 - 1e-9;
  CHECK(exhausted(b));
}

TEST_CASE("budget validation") {
  CHECK_NOTHROW(make_budget(100, 120, 150, 0.005, 7.5).validate(0.1));
  CHECK_THROWS_AS(make_budget(100, 150, 120, 0.005, 7.5).validate(0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_budget(100, 120, 150, 0.0, 7.5).validate(0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_budget(100, 120, 150, 0.005, 15.0).validate(0.1), std::invalid_argument);
  CHECK_THROWS_AS(make_budget(100, 120, 150, 0.005, -1.0).validate(0.1), std::invalid_argument);
  EnergyBudget over = make_budget(100, 120, 150, 0.005, 7.5);
  over.energy = 101;
  CHECK_THROWS_AS(over.validate(0.1), std::invalid_argument);
}
