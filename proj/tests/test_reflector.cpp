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
#include <complex>
#include <vector>

#include "oracles.hpp"
#include "uavir/geometry.hpp"
#include "uavir/reflector.hpp"
#include "uavir/rng.hpp"

using namespace uavir;
using cd = std::complex<double>;

namespace {

double objective(const Eigen::RowVectorXcd& h, const ReflectionCoefficient& t,
                 const Eigen::VectorXcd& r) {
  cd s = 0;
  for (Eigen::Index n = 0; n < h.size(); ++n) s += h(n) * t.element(static_cast<std::size_t>(n)) * r(n);
  return std::abs(s);
}

cd rand_c(Rng& rng) { return {uniform(rng, -1, 1), uniform(rng, -1, 1)}; }

}  // namespace

TEST_CASE("hand example h=[1, j], r=[1, 1]") {
  Eigen::RowVectorXcd h(2);
  Eigen::VectorXcd r(2);
  h << cd(1, 0), cd(0, 1);
  r << cd(1, 0), cd(1, 0);
  const ReflectionCoefficient t = optimal_phases(h, r, 0.8);
  CHECK(t.phases[0] == doctest::Approx(0.0));
  CHECK(t.phases[1] == doctest::Approx(3 * kPi / 2).epsilon(1e-12));
  CHECK(objective(h, t, r) == doctest::Approx(1.6).epsilon(1e-12));
}

TEST_CASE("zero cascade term gets phase zero and changes nothing") {
  Eigen::RowVectorXcd h(3);
  Eigen::VectorXcd r(3);
  h << cd(0.3, -0.2), cd(0, 0), cd(-1, 0.5);
  r << cd(1, 1), cd(2, -1), cd(0.2, 0.7);
  const ReflectionCoefficient t = optimal_phases(h, r, 0.8);
  CHECK(t.phases[1] == 0.0);
  const double want = 0.8 * (std::abs(h(0) * r(0)) + std::abs(h(2) * r(2)));
  CHECK(oracle::rel_err(objective(h, t, r), want) < 1e-10);
}

TEST_CASE("closed form beats a 64^3 phase grid for N = 3") {
  Rng rng(31);
  for (int k = 0; k < 20; ++k) {
    Eigen::RowVectorXcd h(3);
    Eigen::VectorXcd r(3);
    std::vector<oracle::cd> z(3);
    for (int n = 0; n < 3; ++n) {
      h(n) = rand_c(rng);
      r(n) = rand_c(rng);
      z[static_cast<std::size_t>(n)] = 0.8 * h(n) * r(n);
    }
    const double closed = objective(h, optimal_phases(h, r, 0.8), r);
    // Full grid on all three phases here; no symmetry reduction.
    double grid = 0;
    for (int a = 0; a < 64; ++a)
      for (int b = 0; b < 64; ++b)
        for (int c = 0; c < 64; ++c) {
          const cd s = z[0] * std::polar(1.0, kTwoPi * a / 64) + z[1] * std::polar(1.0, kTwoPi * b / 64) +
                       z[2] * std::polar(1.0, kTwoPi * c / 64);
          grid = std::max(grid, std::abs(s));
        }
    CHECK(grid <= closed * (1 + 1e-3));
    CHECK(grid >= closed * (1 - 1e-2));
    CHECK(oracle::rel_err(oracle::brute_force_max(z, 64), grid) < 1e-12);
  }
}

TEST_CASE("aligned terms share argument zero") {
  Rng rng(32);
  for (int k = 0; k < 200; ++k) {
    const int N = 16;
    Eigen::RowVectorXcd h(N);
    Eigen::VectorXcd r(N);
    for (int n = 0; n < N; ++n) {
      h(n) = rand_c(rng);
      r(n) = rand_c(rng);
    }
    const ReflectionCoefficient t = optimal_phases(h, r, 0.8);
    double sum = 0;
    for (int n = 0; n < N; ++n) {
      const auto idx = static_cast<std::size_t>(n);
      CHECK(t.phases[idx] >= 0.0);
      CHECK(t.phases[idx] < kTwoPi);
      const cd term = h(n) * r(n) * std::polar(1.0, t.phases[idx]);
      CHECK(std::abs(std::arg(term)) < 1e-10);
      sum += std::abs(h(n) * r(n));
    }
    CHECK(oracle::rel_err(objective(h, t, r), 0.8 * sum) < 1e-10);
  }
}

TEST_CASE("global phase of h shifts every phase and keeps the objective") {
  Rng rng(33);
  for (int k = 0; k < 100; ++k) {
    Eigen::RowVectorXcd h(4);
    Eigen::VectorXcd r(4);
    for (int n = 0; n < 4; ++n) {
      h(n) = rand_c(rng);
      r(n) = rand_c(rng);
    }
    const double psi = uniform(rng, 0, kTwoPi);
    const Eigen::RowVectorXcd h2 = h * std::polar(1.0, psi);
    const ReflectionCoefficient t1 = optimal_phases(h, r, 0.8);
    const ReflectionCoefficient t2 = optimal_phases(h2, r, 0.8);
    for (std::size_t n = 0; n < 4; ++n) {
      CHECK(angular_distance(t2.phases[n], t1.phases[n] - psi) < 1e-10);
    }
    CHECK(oracle::rel_err(objective(h2, t2, r), objective(h, t1, r)) < 1e-10);
  }
}

TEST_CASE("harvested power examples") {
  Eigen::VectorXcd r2(2);
  r2 << cd(1, 0), cd(1, 0);
  CHECK(harvested_power(ReflectionCoefficient::make(0.0, {1.0, 2.0}), r2, 0.6) ==
        doctest::Approx(1.2).epsilon(1e-12));
  Eigen::VectorXcd r1(1);
  r1 << cd(1, 0);
  CHECK(harvested_power(ReflectionCoefficient::make(0.8, {0.0}), r1, 0.6) ==
        doctest::Approx(0.024).epsilon(1e-12));
}

TEST_CASE("harvested power matches the element-wise oracle and its bound") {
  Rng rng(34);
  for (int k = 0; k < 500; ++k) {
    const int N = 16;
    Eigen::VectorXcd r(N);
    std::vector<oracle::cd> rv(N);
    std::vector<double> th(N);
    for (int n = 0; n < N; ++n) {
      r(n) = rv[static_cast<std::size_t>(n)] = rand_c(rng);
      th[static_cast<std::size_t>(n)] = uniform(rng, 0, kTwoPi);
    }
    const double a = uniform(rng, 0, 0.99);
    const double kappa = uniform(rng, 0.01, 0.99);
    const double p = harvested_power(ReflectionCoefficient::make(a, th), r, kappa);
    CHECK(oracle::rel_err(p, oracle::harvested(a, th, rv, kappa)) < 1e-12);
    CHECK(p >= 0.0);
    CHECK(p <= kappa * (1 + a) * (1 + a) * r.squaredNorm() * (1 + 1e-12));
  }
}

TEST_CASE("harvest at optimal phases is permutation invariant") {
  Rng rng(35);
  Eigen::RowVectorXcd h(5);
  Eigen::VectorXcd r(5);
  for (int n = 0; n < 5; ++n) {
    h(n) = rand_c(rng);
    r(n) = rand_c(rng);
  }
  Eigen::PermutationMatrix<Eigen::Dynamic> perm(5);
  perm.indices() << 3, 0, 4, 1, 2;
  const Eigen::RowVectorXcd hp = (perm * h.transpose()).transpose();
  const Eigen::VectorXcd rp = perm * r;
  const double a = harvested_power(optimal_phases(h, r, 0.8), r, 0.6);
  const double b = harvested_power(optimal_phases(hp, rp, 0.8), rp, 0.6);
  CHECK(oracle::rel_err(a, b) < 1e-12);
}

TEST_CASE("reflection coefficient contract") {
  CHECK_THROWS_AS(ReflectionCoefficient::make(1.0, {0.0}), std::invalid_argument);
  CHECK_THROWS_AS(ReflectionCoefficient::make(-0.1, {0.0}), std::invalid_argument);
  const ReflectionCoefficient t = ReflectionCoefficient::make(0.5, {-kPi / 2, 5 * kPi});
  CHECK(t.phases[0] == doctest::Approx(3 * kPi / 2));
  CHECK(t.phases[1] == doctest::Approx(kPi));
}
