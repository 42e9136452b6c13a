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

#include <cmath>
#include <random>
#include <stdexcept>

#include "uavir/predictor.hpp"
#include "uavir/rng.hpp"

using namespace uavir;

TEST_CASE("history window semantics") {
  MovementHistory h(3);
  h.update({{0, 0}, 0.0, 0.0});
  CHECK(h.size() == 1);
  h.update({{1, 0}, 0.0, 0.1});
  h.update({{2, 0}, 0.0, 0.2});
  h.update({{3, 0}, 0.0, 0.3});
  CHECK(h.size() == 3);
  CHECK(h.samples().front().position.x == 1.0);
  CHECK_THROWS_AS(h.update({{4, 0}, 0.0, 0.3}), std::invalid_argument);
  CHECK_THROWS_AS(h.update({{4, 0}, 0.0, 0.2}), std::invalid_argument);
}

TEST_CASE("constant-velocity extrapolation") {
  MovementHistory h;
  h.update({{0, 0}, 0.0, 0.0});
  h.update({{0.1, 0}, 0.0, 0.1});
  const GaussianPrediction p = predict(h, 1, 0.1);
  CHECK(p.mean.x == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(p.mean.y == doctest::Approx(0.0));
  const GaussianPrediction p10 = predict(h, 10, 0.1);
  CHECK(p10.mean.x == doctest::Approx(1.1).epsilon(1e-12));
}

TEST_CASE("short and stationary histories") {
  MovementHistory h;
  CHECK_THROWS_AS(predict(h, 1, 0.1), std::invalid_argument);
  h.update({{3, 4}, 0.0, 0.0});
  const GaussianPrediction one = predict(h, 5, 0.1);
  CHECK(one.mean == Vec2{3, 4});
  CHECK(one.covariance(0, 0) == 4.0);
  CHECK(one.covariance(1, 1) == 4.0);
  CHECK(one.covariance(0, 1) == 0.0);
  for (int i = 1; i < 10; ++i) h.update({{3, 4}, 0.0, 0.1 * i});
  const GaussianPrediction still = predict(h, 5, 0.1);
  CHECK(still.mean == Vec2{3, 4});
  CHECK(still.covariance.norm() == 0.0);
}

TEST_CASE("translation equivariance and PSD covariance") {
  Rng rng(51);
  for (int trial = 0; trial < 200; ++trial) {
    MovementHistory a, b;
    const Vec2 shift{uniform(rng, -100, 100), uniform(rng, -100, 100)};
    Vec2 y{uniform(rng, -20, 20), uniform(rng, -20, 20)};
    for (int i = 0; i < 25; ++i) {
      y = y + Vec2{uniform(rng, -0.2, 0.2), uniform(rng, -0.2, 0.2)};
      a.update({y, 0.0, 0.1 * i});
      b.update({y + shift, 0.0, 0.1 * i});
    }
    const GaussianPrediction pa = predict(a, 10, 0.1);
    const GaussianPrediction pb = predict(b, 10, 0.1);
    CHECK((pb.mean - pa.mean - shift).norm() < 1e-9);
    CHECK((pb.covariance - pa.covariance).norm() < 1e-12);
    CHECK(pa.covariance(0, 1) == pa.covariance(1, 0));
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> eig(pa.covariance);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-12);
  }
}

// One-slot calibration for a walker whose per-slot increments carry
// independent Gaussian jitter.
TEST_CASE("one-slot prediction error stays inside 2 sqrt(trace)") {
  Rng rng(52);
  std::normal_distribution<double> jitter(0.0, 0.03);
  double err = 0, spread = 0;
  const int trials = 100;
  for (int t = 0; t < trials; ++t) {
    MovementHistory h;
    Vec2 y{0, 0};
    const Vec2 step{0.1 * std::cos(0.3 * t), 0.1 * std::sin(0.3 * t)};
    for (int i = 0; i < 20; ++i) {
      y = y + step + Vec2{jitter(rng), jitter(rng)};
      h.update({y, 0.0, 0.1 * i});
    }
    const GaussianPrediction p = predict(h, 1, 0.1);
    const Vec2 truth = y + step + Vec2{jitter(rng), jitter(rng)};
    err += (p.mean - truth).norm() / trials;
    spread += 2 * std::sqrt(p.covariance.trace()) / trials;
  }
  CHECK(err < spread);
}
