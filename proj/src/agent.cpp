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

#include "uavir/agent.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <tuple>

namespace uavir {

double reward(double speed, double capacity_bps, double slot_seconds) {
  return speed == 0.0 ? capacity_bps * slot_seconds : 0.0;
}

Vec3 greedy_policy(const UeState& ue, double altitude) {
  return lift(ue.position.xy(), altitude);
}

Agent::Agent(AgentParams params, std::unique_ptr<ValueModel> model,
             FeatureEncoder encoder, const Scene& scene)
    : params_(params),
      model_(std::move(model)),
      encoder_(encoder),
      scene_(&scene),
      exploration_(params.explore_initial) {
  if (!model_) throw std::invalid_argument("agent needs a value model");
  if (params_.grid_size < 1) throw std::invalid_argument("grid size must be >= 1");
  if (!(params_.reward_scale > 0.0)) {
    throw std::invalid_argument("reward scale must be positive");
  }
}

std::vector<Vec3> Agent::candidates(Vec2 predicted) const {
  std::vector<Vec3> out;
  const int g = params_.grid_size;
  out.reserve(static_cast<std::size_t>(g * g));
  const double half = 0.5 * (g - 1);
  for (int i = 0; i < g; ++i) {
    for (int j = 0; j < g; ++j) {
      const Vec3 c{predicted.x + (i - half) * params_.grid_spacing,
                   predicted.y + (j - half) * params_.grid_spacing,
                   params_.altitude};
      if (scene_->in_bounds(c) && !scene_->inside_obstacle(c)) out.push_back(c);
    }
  }
  if (out.empty()) {
    Vec3 above = lift(predicted, params_.altitude);
    above.x = std::clamp(above.x, scene_->bounds_lo.x, scene_->bounds_hi.x);
    above.y = std::clamp(above.y, scene_->bounds_lo.y, scene_->bounds_hi.y);
    out.push_back(above);
  }
  return out;
}

std::size_t Agent::select_action(std::span<const double> values,
                                 std::span<const Vec3> candidates, Vec3 current,
                                 Rng& rng, bool* explored) {
  if (candidates.empty() || values.size() != candidates.size()) {
    throw std::invalid_argument("select_action: bad candidate set");
  }
  ++decisions_;
  const bool explore = uniform(rng, 0.0, 1.0) < exploration_;
  exploration_ = std::max(params_.explore_floor, exploration_ * params_.explore_decay);
  if (explored) *explored = explore;
  if (explore) {
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    return pick(rng);
  }
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    if (values[i] != values[best]) {
      if (values[i] > values[best]) best = i;
      continue;
    }
    const double di = distance(candidates[i], current);
    const double db = distance(candidates[best], current);
    const Vec3& a = candidates[i];
    const Vec3& b = candidates[best];
    if (std::tie(di, a.x, a.y, a.z) < std::tie(db, b.x, b.y, b.z)) best = i;
  }
  return best;
}

Features Agent::encode(const SlotObservation& obs, Vec3 candidate) const {
  return encoder_.encode(obs.h, obs.los, obs.body_shadowed, candidate,
                         obs.ue.position.xy(), obs.ue.omega, obs.predicted);
}

Decision Agent::on_communication_slot(const SlotObservation& obs, Rng& rng) {
  const double r = obs.reward_bits / params_.reward_scale;
  const bool relocate = !obs.decoded && !obs.terminal;

  std::vector<Vec3> cands;
  std::vector<double> values;
  double best_value = 0.0;
  const auto evaluate_all = [&] {
    values.resize(cands.size());
    for (std::size_t i = 0; i < cands.size(); ++i) {
      values[i] = model_->value(encode(obs, cands[i]));
    }
    best_value = *std::max_element(values.begin(), values.end());
  };
  if (pending_ || relocate) {
    cands = candidates(obs.predicted);
    evaluate_all();
  }

  // The move that brought us here is judged by the first reward on arrival.
  if (pending_) {
    const double q = obs.terminal ? r : r + params_.gamma * best_value;
    model_->fit(pending_->features, q);
    pending_.reset();
    if (relocate) evaluate_all();
  }

  Decision out;
  if (!relocate) {
    model_->fit(encode(obs, obs.uav_position), r);
    return out;
  }

  const std::size_t a = select_action(values, cands, obs.uav_position, rng, &out.explored);
  const Features f = encode(obs, cands[a]);
  if (params_.bootstrap == Bootstrap::every_slot) {
    model_->fit(f, r + params_.gamma * best_value);
  }
  pending_ = PendingTransition{f, cands[a]};
  if (cands[a] != obs.uav_position) out.target = cands[a];
  return out;
}

}  // namespace uavir
