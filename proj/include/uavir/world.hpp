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

// Urban geometry, line-of-sight tests and the two movers (pedestrian UE and
// constant-altitude UAV). Everything here is a pure function of its inputs
// plus an explicit generator.

#pragma once

#include <span>
#include <stdexcept>
#include <variant>
#include <vector>

#include "uavir/geometry.hpp"
#include "uavir/rng.hpp"

namespace uavir {

struct Building {
  Vec3 lo;  // min corner (m)
  Vec3 hi;  // max corner (m)
};

// Vertical trunk with a spherical crown. Only the crown blocks.
struct Tree {
  Vec3 crown_center;
  double crown_radius{2.0};
};

using Obstacle = std::variant<Building, Tree>;

struct Rect {
  Vec2 lo;
  Vec2 hi;

  bool contains(Vec2 p) const {
    return p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y;
  }
  double area() const { return (hi.x - lo.x) * (hi.y - lo.y); }
};

class ScenarioError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Scene {
  std::vector<Obstacle> obstacles;
  std::vector<Rect> streets;  // walkable area is the union minus footprints
  Vec3 bounds_lo;
  Vec3 bounds_hi;
  Vec3 bs_position;

  bool in_bounds(Vec3 p) const;
  bool inside_footprint(Vec2 p) const;
  bool inside_obstacle(Vec3 p) const;
  bool walkable(Vec2 p) const;

  // Throws ScenarioError naming the first violated geometry invariant.
  void validate() const;
};

struct CrossingLayout {
  double street_width{15.0};
  double building_size{40.0};
  double building_height{16.0};
  int tree_count{12};
  double crown_radius{2.0};
  double crown_height{6.0};  // crown centre above ground
  double tree_inset{1.0};    // trunk distance from the building line
  double ceiling{200.0};
  Vec3 bs_position{-27.5, -27.5, 22.0};
};

// Two orthogonal streets crossing at the origin with a building in each
// quadrant; trees are scattered along the street edges from `tree_rng`.
Scene make_crossing_scene(const CrossingLayout& layout, Rng& tree_rng);

// True iff the open segment pq crosses no building box and no tree crown.
// Symmetric in (p, q). A degenerate segment is reported clear.
bool segment_clear(Vec3 p, Vec3 q, std::span<const Obstacle> obstacles);

struct BodyShadow {
  double half_width{deg2rad(60.0)};
  // Targets seen above this elevation are never shadowed; the torso cannot
  // occlude a path that leaves the device almost vertically.
  double max_elevation{deg2rad(89.0)};
};

struct UeState {
  Vec3 position;       // y (m), z is the handset height
  double omega{0.0};   // device bearing around the body, [0, 2π)
  Vec2 velocity;       // v_e (m/s)
  Vec2 waypoint;       // next straight-line target
  Vec2 destination;    // current random destination of the walk
  double heading{0.0}; // swing centre, follows the walking direction
  double time{0.0};    // s
};

struct UeMotion {
  double speed{1.0};
  double swing_amplitude{deg2rad(45.0)};
  double swing_period{4.0};
  double height{1.5};
};

bool body_blocked(const UeState& ue, Vec3 target, const BodyShadow& shadow);

// Uniform point on the walkable area; throws ScenarioError after 1000 misses.
Vec2 sample_walkable(const Scene& scene, Rng& rng);

// Next straight-line leg from `from` toward `destination`, detouring through
// the shared part of two streets when the direct segment would leave them.
Vec2 route_waypoint(const Scene& scene, Vec2 from, Vec2 destination);

UeState spawn_ue(const Scene& scene, const UeMotion& motion, Rng& rng);

UeState step_ue(const UeState& ue, double dt, const Scene& scene,
                const UeMotion& motion, Rng& rng);

struct UavState {
  Vec3 position;
  double speed{0.0};  // v_r; zero iff hovering
  Vec3 target;

  bool hovering() const { return speed == 0.0; }
};

UavState step_uav(const UavState& uav, double dt, double max_speed);

// Slots needed to cover from→to at full speed; zero when from == to.
int mobility_slots(Vec3 from, Vec3 to, double max_speed, double slot);

}  // namespace uavir
