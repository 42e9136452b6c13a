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

#include "uavir/engine.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "uavir/agent.hpp"
#include "uavir/channel.hpp"
#include "uavir/energy.hpp"
#include "uavir/predictor.hpp"
#include "uavir/reflector.hpp"

namespace uavir {
namespace {

// Independent random streams per episode seed.
enum Stream : std::uint64_t { kUeStream = 1, kChannelStream = 2, kAgentStream = 3, kInitStream = 4 };

// Slots a UAV hovering without harvest credit lasts on a full battery.
long hover_endurance(const EnergyBudget& start, double slot_seconds, long cap) {
  EnergyBudget b = start;
  const double p = b.hover_power + b.reflect_power;
  long n = 0;
  while (n < cap) {
    b = consume(b, p, slot_seconds);
    ++n;
    if (exhausted(b)) break;
  }
  return n;
}

}  // namespace

const char* policy_name(Policy p) {
  switch (p) {
    case Policy::rl: return "rl";
    case Policy::greedy: return "greedy";
    case Policy::static_ir: return "static";
  }
  return "?";
}

Policy parse_policy(const std::string& name) {
  if (name == "rl") return Policy::rl;
  if (name == "greedy") return Policy::greedy;
  if (name == "static") return Policy::static_ir;
  throw std::invalid_argument("unknown policy '" + name + "' (rl, greedy, static)");
}

const char* stage_name(Stage s) {
  return s == Stage::communication ? "communication" : "mobility";
}

EpisodeAggregates aggregate(std::span<const SlotRecord> slots, double slot_seconds) {
  EpisodeAggregates a;
  a.slots = static_cast<long>(slots.size());
  long los = 0;
  double harvest = 0.0;
  Stage previous = Stage::communication;
  for (const auto& s : slots) {
    if (s.stage == Stage::communication) {
      ++a.hover_slots;
      harvest += s.harvested_w;
    } else if (previous == Stage::communication) {
      ++a.relocations;
    }
    previous = s.stage;
    if (s.line_of_sight()) ++los;
    a.total_bits += s.reward_bits;
    a.energy_used_j += s.power_w * slot_seconds;
  }
  if (a.hover_slots > 0) {
    a.mean_rate_bps = a.total_bits / (static_cast<double>(a.hover_slots) * slot_seconds);
    a.mean_harvest_w = harvest / static_cast<double>(a.hover_slots);
  }
  if (a.slots > 0) {
    a.mean_rate_all_bps = a.total_bits / (static_cast<double>(a.slots) * slot_seconds);
    a.los_fraction = static_cast<double>(los) / static_cast<double>(a.slots);
  }
  return a;
}

ValueNetwork fresh_network(const ScenarioConfig& cfg, std::uint64_t seed) {
  Rng init = make_rng(seed, kInitStream);
  ValueNetwork net(ValueNetwork::Layout{kFeatureDim, static_cast<std::size_t>(cfg.agent.hidden_units)},
                   init);
  net.set_learning_rate(cfg.agent.learning_rate);
  return net;
}

EpisodeOutcome run_episode(const ScenarioConfig& cfg, Policy policy, const WarmStart* warm) {
  const double dT = cfg.timing.slot_seconds;
  const Scene scene = build_scene(cfg);
  const ChannelModel channel = channel_model(cfg);
  const NoiseModel noise = channel.radio().noise();
  const UeMotion motion = ue_motion(cfg);
  const double threshold = db_to_linear(cfg.radio.snr_threshold_db);
  const double altitude = cfg.uav.altitude;

  Rng ue_rng = make_rng(cfg.seed, kUeStream);
  Rng channel_rng = make_rng(cfg.seed, kChannelStream);
  Rng agent_rng = make_rng(cfg.seed, kAgentStream);

  EpisodeOutcome out;
  EpisodeMetrics& m = out.metrics;
  m.policy = policy;
  m.seed = cfg.seed;
  m.config_hash = config_hash(cfg);
  m.slot_seconds = dT;

  UeState ue = spawn_ue(scene, motion, ue_rng);
  MovementHistory history(static_cast<std::size_t>(cfg.agent.history_window));
  history.update({ue.position.xy(), ue.omega, ue.time});

  const bool is_static = policy == Policy::static_ir;
  UavState uav;
  uav.position = is_static ? cfg.geometry.static_ir_position : lift(cfg.uav.start, altitude);
  uav.target = uav.position;

  EnergyBudget budget = initial_budget(cfg);
  budget.validate(dT);
  m.initial_energy_j = budget.initial;
  m.residual_j = budget.residual;
  const long horizon = cfg.timing.horizon_slots;
  const long static_slots = is_static ? hover_endurance(budget, dT, horizon) : horizon;

  std::unique_ptr<Agent> agent;
  if (policy == Policy::rl) {
    AgentParams ap;
    ap.gamma = cfg.agent.gamma;
    ap.grid_size = cfg.agent.grid_size;
    ap.grid_spacing = cfg.agent.grid_spacing;
    ap.altitude = altitude;
    ap.explore_initial = cfg.agent.explore_initial;
    ap.explore_floor = cfg.agent.explore_floor;
    ap.explore_decay = cfg.agent.explore_decay;
    ap.bootstrap = cfg.agent.bootstrap;
    ap.reward_scale = cfg.radio.bandwidth_hz * dT;
    ValueNetwork net = warm ? warm->network : fresh_network(cfg, cfg.seed);
    net.set_learning_rate(cfg.agent.learning_rate);
    FeatureEncoder enc;
    enc.bs_position = scene.bs_position;
    enc.ue_height = motion.height;
    agent = std::make_unique<Agent>(ap, std::make_unique<NeuralValueModel>(std::move(net)), enc,
                                    scene);
    if (warm) agent->set_exploration(warm->exploration);
  }

  bool stage_start = true;
  BsIrLink bs_ir;
  CVector w;
  CVector r;

  m.slots.reserve(static_cast<std::size_t>(std::min<long>(horizon, 50000)));
  for (long slot = 0; slot < horizon; ++slot) {
    ue = step_ue(ue, dT, scene, motion, ue_rng);
    history.update({ue.position.xy(), ue.omega, ue.time});

    SlotRecord rec;
    rec.slot = slot;
    rec.time = ue.time;
    double power = 0.0;

    if (uav.position != uav.target) {
      uav = step_uav(uav, dT, cfg.uav.max_speed);
      rec.stage = Stage::mobility;
      rec.snr_db = std::numeric_limits<double>::quiet_NaN();
      rec.los_bs_ir = segment_clear(scene.bs_position, uav.position, scene.obstacles);
      rec.los_ir_ue = segment_clear(uav.position, ue.position, scene.obstacles);
      rec.body_shadowed = body_blocked(ue, uav.position, channel.shadow());
      power = net_power(uav.speed, 0.0, budget);
    } else {
      uav.speed = 0.0;
      rec.stage = Stage::communication;
      if (stage_start) {
        bs_ir = channel.realize_bs_ir(scene, uav.position, channel_rng);
        w = beamformer(bs_ir.H, channel.radio().tx_power_w);
        r = bs_ir.H * w;
        stage_start = false;
      }
      const IrUeLink link = channel.realize_ir_ue(scene, uav.position, ue, channel_rng);
      const ReflectionCoefficient theta = optimal_phases(link.h, r, cfg.radio.amplitude);
      const double eta = snr(link.h, theta, r, noise);
      rec.decoded = eta >= threshold;
      rec.snr_db = 10.0 * std::log10(eta);
      rec.rate_bps = rec.decoded ? capacity(eta, noise) : 0.0;
      rec.reward_bits = reward(0.0, rec.rate_bps, dT);
      rec.harvested_w = harvested_power(theta, r, cfg.radio.harvest_efficiency);
      rec.los_bs_ir = bs_ir.los;
      rec.los_ir_ue = link.los;
      rec.body_shadowed = link.body_shadowed;
      power = is_static ? 0.0 : net_power(0.0, rec.harvested_w, budget);

      const bool terminal =
          is_static ? slot + 1 >= static_slots : exhausted(consume(budget, power, dT));
      std::optional<Vec3> target;
      if (policy == Policy::greedy) {
        if (!rec.decoded && !terminal) target = greedy_policy(ue, altitude);
      } else if (policy == Policy::rl) {
        SlotObservation obs;
        obs.h = link.h;
        obs.los = link.los;
        obs.body_shadowed = link.body_shadowed;
        obs.uav_position = uav.position;
        obs.ue = ue;
        obs.predicted =
            predict(history, cfg.agent.prediction_horizon_slots, dT).mean;
        obs.reward_bits = rec.reward_bits;
        obs.decoded = rec.decoded;
        obs.terminal = terminal;
        target = agent->on_communication_slot(obs, agent_rng).target;
      }
      if (target && *target != uav.position) {
        uav.target = *target;
        stage_start = true;
      }
    }

    budget = consume(budget, power, dT);
    rec.uav = uav.position;
    rec.ue = ue.position.xy();
    rec.omega = ue.omega;
    rec.power_w = power;
    rec.energy_j = budget.energy;
    m.slots.push_back(rec);

    if (is_static ? slot + 1 >= static_slots : exhausted(budget)) break;
  }

  m.aggregates = aggregate(m.slots, dT);
  if (agent) {
    auto model = agent->release_model();
    auto* neural = dynamic_cast<NeuralValueModel*>(model.get());
    out.learned = WarmStart{neural->network(), agent->exploration()};
  }
  return out;
}

WarmStart warm_up(const ScenarioConfig& cfg, const Progress& progress) {
  WarmStart state{fresh_network(cfg, cfg.agent.warmup_seed), cfg.agent.explore_initial};
  for (int i = 0; i < cfg.agent.warmup_episodes; ++i) {
    ScenarioConfig c = cfg;
    c.seed = mix_seed(cfg.agent.warmup_seed, static_cast<std::uint64_t>(i));
    EpisodeOutcome o = run_episode(c, Policy::rl, &state);
    state = std::move(*o.learned);
    if (progress) {
      progress("warm-up " + std::to_string(i + 1) + "/" +
               std::to_string(cfg.agent.warmup_episodes) +
               ": los=" + std::to_string(o.metrics.aggregates.los_fraction) +
               " rate=" + std::to_string(o.metrics.aggregates.mean_rate_bps));
    }
  }
  return state;
}

const char* axis_name(SweepAxis a) {
  return a == SweepAxis::altitude ? "altitude" : "tx-power";
}

SweepAxis parse_axis(const std::string& name) {
  if (name == "altitude") return SweepAxis::altitude;
  if (name == "tx-power" || name == "tx_power") return SweepAxis::tx_power;
  throw std::invalid_argument("unknown sweep axis '" + name + "' (altitude, tx-power)");
}

ScenarioConfig with_axis(const ScenarioConfig& cfg, SweepAxis axis, double value) {
  ScenarioConfig c = cfg;
  if (axis == SweepAxis::altitude) {
    c.uav.altitude = value;
  } else {
    if (!(value > 0.0)) throw std::invalid_argument("transmit power must be positive");
    c.radio.tx_power_dbm = 10.0 * std::log10(value) + 30.0;
  }
  validate(c);
  return c;
}

SampleStat sample_stat(std::span<const double> xs) {
  SampleStat s;
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    s.stddev = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  }
  return s;
}

SweepTable run_sweep(const ScenarioConfig& cfg, SweepAxis axis, std::span<const double> values,
                     std::span<const Policy> policies, std::span<const std::uint64_t> seeds,
                     const Progress& progress) {
  if (values.empty() || policies.empty() || seeds.empty()) {
    throw std::invalid_argument("sweep needs at least one value, policy and seed");
  }
  SweepTable table;
  table.axis = axis;
  table.config_hash = config_hash(cfg);
  table.seeds.assign(seeds.begin(), seeds.end());

  for (const double value : values) {
    const std::string at = std::string(axis_name(axis)) + "=" + std::to_string(value);
    ScenarioConfig base;
    try {
      base = with_axis(cfg, axis, value);
    } catch (const std::exception& e) {
      throw EpisodeError(at + ": " + e.what());
    }

    std::optional<WarmStart> warm;
    for (const Policy policy : policies) {
      if (policy == Policy::rl && !warm && base.agent.warmup_episodes > 0) {
        try {
          warm = warm_up(base, progress);
        } catch (const std::exception& e) {
          throw EpisodeError(at + " policy=rl warm-up: " + e.what());
        }
      }
      std::vector<double> rate, los, harvest;
      for (const std::uint64_t seed : seeds) {
        ScenarioConfig c = base;
        c.seed = seed;
        EpisodeOutcome o;
        try {
          o = run_episode(c, policy, warm ? &*warm : nullptr);
        } catch (const std::exception& e) {
          throw EpisodeError(at + " policy=" + policy_name(policy) +
                             " seed=" + std::to_string(seed) + ": " + e.what());
        }
        const auto& a = o.metrics.aggregates;
        rate.push_back(a.mean_rate_bps);
        los.push_back(a.los_fraction);
        harvest.push_back(a.mean_harvest_w);
        if (progress) {
          progress(at + " policy=" + policy_name(policy) + " seed=" + std::to_string(seed) +
                   ": los=" + std::to_string(a.los_fraction) +
                   " rate=" + std::to_string(a.mean_rate_bps));
        }
      }
      table.rows.push_back(SweepRow{value, policy, seeds.size(), sample_stat(rate),
                                    sample_stat(los), sample_stat(harvest)});
    }
  }
  return table;
}

}  // namespace uavir
