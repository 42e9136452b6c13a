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

#include <memory>
#include <optional>
#include <vector>

#include "uavir/channel.hpp"
#include "uavir/predictor.hpp"
#include "uavir/qfunction.hpp"
#include "uavir/world.hpp"

namespace uavir {

// How the value of a relocation decision is bootstrapped.
//   every_slot:   fit r(t) + γ max Q̃ at decision time, and again once the
//                 move completes with the first post-arrival reward.
//   arrival_only: only the post-arrival fit.
enum class Bootstrap { every_slot, arrival_only };

struct AgentParams {
  double gamma{0.1};
  int grid_size{9};
  double grid_spacing{2.0};
  double altitude{40.0};
  double explore_initial{0.3};
  double explore_floor{0.01};
  double explore_decay{0.999};
  Bootstrap bootstrap{Bootstrap::every_slot};
  // Rewards are divided by this before they reach the value model.
  double reward_scale{1.0};
};

// Everything the agent sees in one hover slot.
struct SlotObservation {
  CRowVector h;
  bool los{false};
  bool body_shadowed{false};
  Vec3 uav_position;
  UeState ue;
  Vec2 predicted;        // μ
  double reward_bits{0.0};
  bool decoded{false};   // η >= τ
  bool terminal{false};  // this slot exhausts the battery
};

struct Decision {
  std::optional<Vec3> target;  // set when the UAV should relocate
  bool explored{false};
};

struct PendingTransition {
  Features features;
  Vec3 target;
};

// r(t) = 1{v_r = 0} c ΔT, in bits.
double reward(double speed, double capacity_bps, double slot_seconds);

// Directly above the UE's latest position.
Vec3 greedy_policy(const UeState& ue, double altitude);

class Agent {
 public:
  Agent(AgentParams params, std::unique_ptr<ValueModel> model,
        FeatureEncoder encoder, const Scene& scene);

  // G x G grid around μ at the flight altitude, dropping points outside the
  // scene or inside obstacles. Never empty.
  std::vector<Vec3> candidates(Vec2 predicted) const;

  // ε-greedy over `values`; exact ties go to the candidate nearest `current`,
  // then to the lexicographically smallest position.
  std::size_t select_action(std::span<const double> values,
                            std::span<const Vec3> candidates, Vec3 current,
                            Rng& rng, bool* explored = nullptr);

  Decision on_communication_slot(const SlotObservation& obs, Rng& rng);

  double exploration() const { return exploration_; }
  void set_exploration(double e) { exploration_ = e; }
  bool has_pending() const { return pending_.has_value(); }
  std::size_t decisions() const { return decisions_; }

  const ValueModel& model() const { return *model_; }
  ValueModel& model() { return *model_; }
  std::unique_ptr<ValueModel> release_model() { return std::move(model_); }

  const AgentParams& params() const { return params_; }

 private:
  Features encode(const SlotObservation& obs, Vec3 candidate) const;

  AgentParams params_;
  std::unique_ptr<ValueModel> model_;
  FeatureEncoder encoder_;
  const Scene* scene_;
  double exploration_;
  std::optional<PendingTransition> pending_;
  std::size_t decisions_{0};
};

}  // namespace uavir
