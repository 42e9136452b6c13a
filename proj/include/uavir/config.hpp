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

// Scenario configuration: one JSON document, every field optional, unknown
// keys rejected. `default_config()` is the reference preset.

#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavir/agent.hpp"
#include "uavir/channel.hpp"
#include "uavir/energy.hpp"
#include "uavir/world.hpp"

namespace uavir {

// Carries every problem found, one "field.path: message" per line.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

// Explicit geometry replacing the generated street crossing.
struct CustomGeometry {
  Vec3 bounds_lo;
  Vec3 bounds_hi;
  std::vector<Building> buildings;
  std::vector<Tree> trees;
  std::vector<Rect> streets;
};

struct GeometryConfig {
  CrossingLayout layout;
  std::uint64_t tree_seed{2024};
  Vec3 static_ir_position{-9.0, -9.0, 16.5};
  std::optional<CustomGeometry> custom;
};

struct ArrayConfig {
  int rows{4};
  int cols{4};
  double spacing{0.5};
};

struct RadioConfig {
  double carrier_ghz{30.0};
  double bandwidth_hz{1e8};
  double tx_power_dbm{40.0};
  double snr_threshold_db{5.0};
  double amplitude{0.8};
  double harvest_efficiency{0.6};
  double thermal_noise_dbm_hz{-174.0};
  double noise_figure_db{9.0};
  int scatter_paths{3};
  double scatter_offset_db{15.0};
  double body_loss_db{30.0};
  double bs_gain_dbi{20.0};
  double ir_gain_dbi{12.0};
  double ue_gain_dbi{0.0};
  ArrayConfig bs_array{8, 8, 0.5};
  ArrayConfig ir_array{4, 4, 0.5};
};

struct TimingConfig {
  double slot_seconds{0.1};    // ΔT
  int coherence_multiple{10};  // k, ΔT = k Δt
  long horizon_slots{100000};  // safety cap per episode
};

struct UeConfig {
  double speed{1.0};
  double height{1.5};
  double swing_amplitude_deg{45.0};
  double swing_period_s{4.0};
  double shadow_half_width_deg{60.0};
  double shadow_max_elevation_deg{89.5};
};

struct UavConfig {
  double altitude{40.0};
  double max_speed{20.0};
  Vec2 start{0.0, 0.0};
};

struct EnergyConfig {
  double initial_j{432000.0};
  double hover_w{120.0};
  double move_w{150.0};
  double reflect_w{0.005};
  double residual_j{7.5};
  bool cap_harvest_at_reflect{false};
};

struct AgentConfig {
  double gamma{0.1};
  int grid_size{9};
  double grid_spacing{2.0};
  double explore_initial{0.3};
  double explore_floor{0.01};
  double explore_decay{0.999};
  double learning_rate{1e-3};
  int hidden_units{64};
  Bootstrap bootstrap{Bootstrap::every_slot};
  int warmup_episodes{30};
  std::uint64_t warmup_seed{9001};
  int history_window{20};
  int prediction_horizon_slots{10};
};

struct ScenarioConfig {
  std::uint64_t seed{1};
  GeometryConfig geometry;
  RadioConfig radio;
  TimingConfig timing;
  UeConfig ue;
  UavConfig uav;
  EnergyConfig energy;
  AgentConfig agent;
};

ScenarioConfig default_config();

// Throws ConfigError listing every problem with its field path.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);
std::string to_json(const ScenarioConfig& cfg, int indent = 2);

// Throws ConfigError.
void validate(const ScenarioConfig& cfg);

// FNV-1a 64 over the canonical JSON form, as 16 hex digits. The seed is
// excluded so that every run of one scenario shares a hash.
std::string config_hash(const ScenarioConfig& cfg);

// Δt = λ / v_e. A stationary UE gets `max_seconds`.
double coherence_time(double wavelength_m, double ue_speed, double max_seconds);

inline constexpr double kSpeedOfLight = 299792458.0;

// Derived runtime objects.
Scene build_scene(const ScenarioConfig& cfg);
RadioParams radio_params(const ScenarioConfig& cfg);
ChannelModel channel_model(const ScenarioConfig& cfg);
EnergyBudget initial_budget(const ScenarioConfig& cfg);
UeMotion ue_motion(const ScenarioConfig& cfg);
BodyShadow body_shadow(const ScenarioConfig& cfg);

}  // namespace uavir
