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

#pragma once

#include <complex>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace uavir {

// Θ = diag(a e^{jθ_1}, ..., a e^{jθ_N}) with a common amplitude a ∈ [0, 1)
// and every phase kept in [0, 2π).
struct ReflectionCoefficient {
  double amplitude{0.0};
  std::vector<double> phases;

  // Validates the amplitude and wraps the phases; throws std::invalid_argument.
  static ReflectionCoefficient make(double amplitude, std::vector<double> phases);

  std::size_t size() const { return phases.size(); }
  std::complex<double> element(std::size_t n) const {
    return std::polar(amplitude, phases[n]);
  }
};

// Phase alignment of every cascaded term h_n r_n: θ_n = -Arg(h_n r_n),
// which achieves |hΘr| = a Σ|h_n r_n|. Terms with h_n r_n = 0 get θ_n = 0.
ReflectionCoefficient optimal_phases(const Eigen::RowVectorXcd& h,
                                     const Eigen::VectorXcd& r,
                                     double amplitude);

// κ ‖(I - Θ) r‖², the RF power left in the unreflected fraction.
double harvested_power(const ReflectionCoefficient& theta,
                       const Eigen::VectorXcd& r, double efficiency);

}  // namespace uavir
