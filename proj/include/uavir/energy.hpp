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

namespace uavir {

struct EnergyBudget {
  double energy{0.0};         // E, joules remaining
  double initial{0.0};        // E_0
  double hover_power{120.0};  // p_h
  double move_power{150.0};   // p_m
  double reflect_power{1e-3}; // p_r
  double residual{0.0};       // ε
  // When set, harvest only offsets the reflector draw instead of hover power.
  bool cap_harvest_at_reflect{false};

  // Checks p_m > p_h > p_r > 0, 0 <= ε < p_m ΔT and E <= E_0.
  // Throws std::invalid_argument.
  void validate(double slot_seconds) const;
};

EnergyBudget make_budget(double initial, double hover_power, double move_power,
                         double reflect_power, double residual);

// Hovering: p_h + p_r - p_e. Moving: p_m.
double net_power(double speed, double harvested, const EnergyBudget& budget);

EnergyBudget consume(const EnergyBudget& budget, double power, double slot_seconds);

// E < ε
inline bool exhausted(const EnergyBudget& budget) {
  return budget.energy < budget.residual;
}

}  // namespace uavir
