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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "uavir/config.hpp"
#include "uavir/qfunction.hpp"

namespace uavir {

enum class Policy { rl, greedy, static_ir };
enum class Stage { communication, mobility };

const char* policy_name(Policy p);
// Accepts "rl", "greedy", "static"; throws std::invalid_argument.
Policy parse_policy(const std::string& name);
const char* stage_name(Stage s);

// One slot of an episode, sampled at the end of the slot.
struct SlotRecord {
  long slot{0};
  double time{0.0};
  Stage stage{Stage::communication};
  Vec3 uav;
  Vec2 ue;
  double omega{0.0};
  double snr_db{0.0};  // NaN while moving (nothing is measured)
  double rate_bps{0.0};  // decoded rate, zero below threshold
  double reward_bits{0.0};
  double harvested_w{0.0};
  double power_w{0.0};
  double energy_j{0.0};
  bool los_bs_ir{false};
  bool los_ir_ue{false};
  bool body_shadowed{false};
  bool decoded{false};

  // Geometric LOS that is also clear of the user's body.
  bool line_of_sight() const { return los_ir_ue && !body_shadowed; }
};

struct EpisodeAggregates {
  long slots{0};
  long hover_slots{0};
  long relocations{0};
  double total_bits{0.0};
  double mean_rate_bps{0.0};      // total_bits / (hover_slots ΔT)
  double mean_rate_all_bps{0.0};  // total_bits / (slots ΔT)
  double los_fraction{0.0};       // over all slots
  double mean_harvest_w{0.0};     // over hover slots
  double energy_used_j{0.0};      // Σ p ΔT
};

// Recomputes every aggregate from the slot log.
EpisodeAggregates aggregate(std::span<const SlotRecord> slots, double slot_seconds);

struct EpisodeMetrics {
  Policy policy{Policy::static_ir};
  std::uint64_t seed{0};
  std::string config_hash;
  double slot_seconds{0.0};
  double initial_energy_j{0.0};
  double residual_j{0.0};
  std::vector<SlotRecord> slots;
  EpisodeAggregates aggregates;
};

// Learned value function carried between episodes.
struct WarmStart {
  ValueNetwork network;
  double exploration{0.0};
};

struct EpisodeOutcome {
  EpisodeMetrics metrics;
  std::optional<WarmStart> learned;  // rl only
};

class EpisodeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Glorot-initialised network for the configured architecture.
ValueNetwork fresh_network(const ScenarioConfig& cfg, std::uint64_t seed);

// Runs one episode with cfg.seed. For rl, `warm` seeds φ and ε; without it
// the agent starts from a fresh network at the initial exploration rate.
EpisodeOutcome run_episode(const ScenarioConfig& cfg, Policy policy,
                           const WarmStart* warm = nullptr);

using Progress = std::function<void(const std::string&)>;

// agent.warmup_episodes training episodes on seeds derived from
// agent.warmup_seed, carrying φ and ε from one to the next.
WarmStart warm_up(const ScenarioConfig& cfg, const Progress& progress = {});

enum class SweepAxis { altitude, tx_power };

const char* axis_name(SweepAxis a);
// Accepts "altitude", "tx-power" (or "tx_power"); throws std::invalid_argument.
SweepAxis parse_axis(const std::string& name);

// Altitude in metres, transmit power in watts.
ScenarioConfig with_axis(const ScenarioConfig& cfg, SweepAxis axis, double value);

struct SampleStat {
  double mean{0.0};
  double stddev{0.0};  // sample standard deviation, 0 for one sample
};

SampleStat sample_stat(std::span<const double> xs);

struct SweepRow {
  double value{0.0};
  Policy policy{Policy::static_ir};
  std::size_t runs{0};
  SampleStat rate_bps;
  SampleStat los_fraction;
  SampleStat harvest_w;
};

struct SweepTable {
  SweepAxis axis{SweepAxis::altitude};
  std::string config_hash;
  std::vector<std::uint64_t> seeds;
  std::vector<SweepRow> rows;  // ordered by (value, policy) as given
};

// Cross product of values x policies x seeds. rl warms up once per value.
// Any failure aborts with EpisodeError naming the failing tuple.
SweepTable run_sweep(const ScenarioConfig& cfg, SweepAxis axis,
                     std::span<const double> values,
                     std::span<const Policy> policies,
                     std::span<const std::uint64_t> seeds,
                     const Progress& progress = {});

}  // namespace uavir
