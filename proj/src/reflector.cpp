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

#include "uavir/reflector.hpp"

#include <cmath>

#include "uavir/geometry.hpp"

namespace uavir {

ReflectionCoefficient ReflectionCoefficient::make(double amplitude,
                                                  std::vector<double> phases) {
  if (!(amplitude >= 0.0 && amplitude < 1.0)) {
    throw std::invalid_argument("reflection amplitude must lie in [0, 1)");
  }
  for (double& p : phases) {
    if (!std::isfinite(p)) throw std::invalid_argument("non-finite phase");
    p = wrap_angle(p);
  }
  return ReflectionCoefficient{amplitude, std::move(phases)};
}

ReflectionCoefficient optimal_phases(const Eigen::RowVectorXcd& h,
                                     const Eigen::VectorXcd& r,
                                     double amplitude) {
  if (h.size() != r.size()) {
    throw std::invalid_argument("optimal_phases: h and r differ in length");
  }
  std::vector<double> phases(static_cast<std::size_t>(h.size()), 0.0);
  for (Eigen::Index n = 0; n < h.size(); ++n) {
    const std::complex<double> cascade = h(n) * r(n);
    if (cascade != std::complex<double>(0.0, 0.0)) {
      phases[static_cast<std::size_t>(n)] = -std::arg(cascade);
    }
  }
  return ReflectionCoefficient::make(amplitude, std::move(phases));
}

double harvested_power(const ReflectionCoefficient& theta,
                       const Eigen::VectorXcd& r, double efficiency) {
  if (theta.size() != static_cast<std::size_t>(r.size())) {
    throw std::invalid_argument("harvested_power: Θ and r differ in length");
  }
  double total = 0.0;
  for (Eigen::Index n = 0; n < r.size(); ++n) {
    const auto residual = 1.0 - theta.element(static_cast<std::size_t>(n));
    total += std::norm(residual) * std::norm(r(n));
  }
  return efficiency * total;
}

}  // namespace uavir
