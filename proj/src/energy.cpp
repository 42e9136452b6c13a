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

#include "uavir/energy.hpp"

#include <algorithm>
#include <stdexcept>

namespace uavir {

void EnergyBudget::validate(double slot_seconds) const {
  if (!(move_power > hover_power && hover_power > reflect_power &&
        reflect_power > 0.0)) {
    throw std::invalid_argument("energy: need p_m > p_h > p_r > 0");
  }
  if (!(residual >= 0.0 && residual < move_power * slot_seconds)) {
    throw std::invalid_argument("energy: residual must lie in [0, p_m ΔT)");
  }
  if (energy > initial) {
    throw std::invalid_argument("energy: remaining energy exceeds E_0");
  }
}

EnergyBudget make_budget(double initial, double hover_power, double move_power,
                         double reflect_power, double residual) {
  EnergyBudget b;
  b.energy = initial;
  b.initial = initial;
  b.hover_power = hover_power;
  b.move_power = move_power;
  b.reflect_power = reflect_power;
  b.residual = residual;
  return b;
}

double net_power(double speed, double harvested, const EnergyBudget& budget) {
  if (speed > 0.0) return budget.move_power;
  const double credit = budget.cap_harvest_at_reflect
                            ? std::min(harvested, budget.reflect_power)
                            : harvested;
  return budget.hover_power + budget.reflect_power - credit;
}

EnergyBudget consume(const EnergyBudget& budget, double power,
                     double slot_seconds) {
  EnergyBudget next = budget;
  next.energy = budget.energy - power * slot_seconds;
  return next;
}

}  // namespace uavir
