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

#include "uavir/world.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include "uavir/log.hpp"

namespace uavir {
namespace {

constexpr int kMaxWalkableDraws = 1000;
// Relative slack used when deciding that a mover has reached its target.
constexpr double kArrivalSlack = 1e-9;

// Slab test restricted to the open parameter interval (0, 1). Grazing
// contact (zero-length overlap) does not count as a crossing.
bool segment_hits_box(Vec3 p, Vec3 d, const Building& b) {
  double t0 = 0.0;
  double t1 = 1.0;
  const double origin[3] = {p.x, p.y, p.z};
  const double dir[3] = {d.x, d.y, d.z};
  const double lo[3] = {b.lo.x, b.lo.y, b.lo.z};
  const double hi[3] = {b.hi.x, b.hi.y, b.hi.z};
  for (int axis = 0; axis < 3; ++axis) {
    if (dir[axis] == 0.0) {
      if (origin[axis] <= lo[axis] || origin[axis] >= hi[axis]) return false;
      continue;
    }
    const double inv = 1.0 / dir[axis];
    double ta = (lo[axis] - origin[axis]) * inv;
    double tb = (hi[axis] - origin[axis]) * inv;
    if (ta > tb) std::swap(ta, tb);
    t0 = std::max(t0, ta);
    t1 = std::min(t1, tb);
    if (t0 >= t1) return false;
  }
  return true;
}

bool segment_hits_sphere(Vec3 p, Vec3 d, const Tree& tree) {
  const Vec3 m = tree.crown_center - p;
  const double dd = d.dot(d);
  double t = dd > 0.0 ? m.dot(d) / dd : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  const Vec3 closest = p + d * t;
  const Vec3 gap = tree.crown_center - closest;
  return gap.dot(gap) < tree.crown_radius * tree.crown_radius;
}

bool lexicographic_less(Vec3 a, Vec3 b) {
  return std::tie(a.x, a.y, a.z) < std::tie(b.x, b.y, b.z);
}

}  // namespace

bool Scene::in_bounds(Vec3 p) const {
  return p.x >= bounds_lo.x && p.x <= bounds_hi.x && p.y >= bounds_lo.y &&
         p.y <= bounds_hi.y && p.z >= bounds_lo.z && p.z <= bounds_hi.z;
}

bool Scene::inside_footprint(Vec2 p) const {
  for (const auto& o : obstacles) {
    if (const auto* b = std::get_if<Building>(&o)) {
      if (p.x > b->lo.x && p.x < b->hi.x && p.y > b->lo.y && p.y < b->hi.y) {
        return true;
      }
    }
  }
  return false;
}

bool Scene::inside_obstacle(Vec3 p) const {
  for (const auto& o : obstacles) {
    if (const auto* b = std::get_if<Building>(&o)) {
      if (p.x > b->lo.x && p.x < b->hi.x && p.y > b->lo.y && p.y < b->hi.y &&
          p.z > b->lo.z && p.z < b->hi.z) {
        return true;
      }
    } else {
      const auto& t = std::get<Tree>(o);
      const Vec3 g = p - t.crown_center;
      if (g.dot(g) < t.crown_radius * t.crown_radius) return true;
    }
  }
  return false;
}

bool Scene::walkable(Vec2 p) const {
  if (inside_footprint(p)) return false;
  return std::any_of(streets.begin(), streets.end(),
                     [p](const Rect& r) { return r.contains(p); });
}

void Scene::validate() const {
  if (!(bounds_lo.x < bounds_hi.x && bounds_lo.y < bounds_hi.y &&
        bounds_lo.z < bounds_hi.z)) {
    throw ScenarioError("scenario bounds are empty");
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string where = "obstacle " + std::to_string(i);
    if (const auto* b = std::get_if<Building>(&obstacles[i])) {
      if (!(b->lo.x < b->hi.x && b->lo.y < b->hi.y && b->lo.z < b->hi.z)) {
        throw ScenarioError(where + ": box min corner must be below max");
      }
      if (!in_bounds(b->lo) || !in_bounds(b->hi)) {
        throw ScenarioError(where + ": building outside scenario bounds");
      }
    } else {
      const auto& t = std::get<Tree>(obstacles[i]);
      if (!(t.crown_radius > 0.0)) {
        throw ScenarioError(where + ": crown radius must be positive");
      }
      if (!in_bounds(t.crown_center)) {
        throw ScenarioError(where + ": tree outside scenario bounds");
      }
    }
  }
  if (streets.empty()) throw ScenarioError("scenario has no streets");
  for (std::size_t i = 0; i < streets.size(); ++i) {
    if (!(streets[i].lo.x < streets[i].hi.x &&
          streets[i].lo.y < streets[i].hi.y)) {
      throw ScenarioError("street " + std::to_string(i) + " is empty");
    }
  }
}

Scene make_crossing_scene(const CrossingLayout& layout, Rng& tree_rng) {
  const double w = layout.street_width / 2.0;
  const double extent = w + layout.building_size;

  Scene scene;
  scene.bounds_lo = {-extent, -extent, 0.0};
  scene.bounds_hi = {extent, extent, layout.ceiling};
  scene.bs_position = layout.bs_position;
  scene.streets = {Rect{{-extent, -w}, {extent, w}},
                   Rect{{-w, -extent}, {w, extent}}};

  for (const double sx : {-1.0, 1.0}) {
    for (const double sy : {-1.0, 1.0}) {
      const double x0 = sx < 0 ? -extent : w;
      const double y0 = sy < 0 ? -extent : w;
      scene.obstacles.emplace_back(Building{
          {x0, y0, 0.0},
          {x0 + layout.building_size, y0 + layout.building_size,
           layout.building_height}});
    }
  }

  // Eight edge runs: each street has two kerbs, each split by the crossing.
  const double kerb = w - layout.tree_inset;
  const double r = layout.crown_radius;
  for (int i = 0; i < layout.tree_count; ++i) {
    const int edge = static_cast<int>(uniform(tree_rng, 0.0, 8.0)) % 8;
    const double along = uniform(tree_rng, w + r, extent - r);
    const double side = (edge & 1) ? 1.0 : -1.0;
    const double half = (edge & 2) ? 1.0 : -1.0;
    Vec3 c{};
    if (edge < 4) {
      c = {half * along, side * kerb, layout.crown_height};
    } else {
      c = {side * kerb, half * along, layout.crown_height};
    }
    scene.obstacles.emplace_back(Tree{c, r});
  }
  return scene;
}

bool segment_clear(Vec3 p, Vec3 q, std::span<const Obstacle> obstacles) {
  if (p == q) {
    log::warn("segment_clear: degenerate segment treated as clear");
    return true;
  }
  // Canonical order makes the result exactly symmetric in (p, q).
  if (lexicographic_less(q, p)) std::swap(p, q);
  const Vec3 d = q - p;
  for (const auto& o : obstacles) {
    const bool hit = std::visit(
        [&](const auto& ob) {
          using T = std::decay_t<decltype(ob)>;
          if constexpr (std::is_same_v<T, Building>) {
            return segment_hits_box(p, d, ob);
          } else {
            return segment_hits_sphere(p, d, ob);
          }
        },
        o);
    if (hit) return false;
  }
  return true;
}

bool body_blocked(const UeState& ue, Vec3 target, const BodyShadow& shadow) {
  const Vec3 d = target - ue.position;
  const double horizontal = std::hypot(d.x, d.y);
  if (horizontal == 0.0) return false;
  if (std::atan2(d.z, horizontal) > shadow.max_elevation) return false;
  const double azimuth = std::atan2(d.y, d.x);
  return angular_distance(azimuth, ue.omega + kPi) < shadow.half_width;
}

Vec2 sample_walkable(const Scene& scene, Rng& rng) {
  double total = 0.0;
  for (const auto& s : scene.streets) total += s.area();
  for (int attempt = 0; attempt < kMaxWalkableDraws; ++attempt) {
    double pick = uniform(rng, 0.0, total);
    std::size_t idx = 0;
    while (idx + 1 < scene.streets.size() && pick > scene.streets[idx].area()) {
      pick -= scene.streets[idx].area();
      ++idx;
    }
    const Rect& s = scene.streets[idx];
    const Vec2 p{uniform(rng, s.lo.x, s.hi.x), uniform(rng, s.lo.y, s.hi.y)};
    // Overlaps are counted once: keep the draw only from the first street
    // containing the point.
    std::size_t first = 0;
    while (!scene.streets[first].contains(p)) ++first;
    if (first != idx) continue;
    if (scene.walkable(p)) return p;
  }
  throw ScenarioError("no walkable point found after 1000 draws");
}

Vec2 route_waypoint(const Scene& scene, Vec2 from, Vec2 destination) {
  for (const auto& s : scene.streets) {
    if (s.contains(from) && s.contains(destination)) return destination;
  }
  for (const auto& a : scene.streets) {
    if (!a.contains(from)) continue;
    for (const auto& b : scene.streets) {
      if (!b.contains(destination)) continue;
      const Rect shared{{std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)},
                        {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)}};
      if (shared.lo.x <= shared.hi.x && shared.lo.y <= shared.hi.y) {
        return (shared.lo + shared.hi) * 0.5;
      }
    }
  }
  throw ScenarioError("streets are not connected; cannot route pedestrian");
}

namespace {

double swing(const UeMotion& motion, double heading, double t) {
  return wrap_angle(heading + motion.swing_amplitude *
                                  std::sin(kTwoPi * t / motion.swing_period));
}

void aim(UeState& ue, Vec2 at) {
  ue.waypoint = at;
  const Vec2 d = at - ue.position.xy();
  if (d.norm() > 0.0) ue.heading = wrap_angle(std::atan2(d.y, d.x));
}

}  // namespace

UeState spawn_ue(const Scene& scene, const UeMotion& motion, Rng& rng) {
  UeState ue;
  ue.position = lift(sample_walkable(scene, rng), motion.height);
  ue.destination = sample_walkable(scene, rng);
  aim(ue, route_waypoint(scene, ue.position.xy(), ue.destination));
  ue.omega = swing(motion, ue.heading, 0.0);
  return ue;
}

UeState step_ue(const UeState& ue, double dt, const Scene& scene,
                const UeMotion& motion, Rng& rng) {
  UeState next = ue;
  next.time = ue.time + dt;
  const Vec2 here = ue.position.xy();
  const double gap = distance(here, ue.waypoint);
  if (gap == 0.0) {
    // Standing on the waypoint: pick the next leg and stay put this slot.
    if (ue.waypoint == ue.destination) {
      next.destination = sample_walkable(scene, rng);
    }
    aim(next, route_waypoint(scene, here, next.destination));
    next.velocity = {};
  } else {
    const double stride = motion.speed * dt;
    Vec2 moved;
    if (gap <= stride * (1.0 + kArrivalSlack)) {
      moved = ue.waypoint;
    } else {
      moved = here + (ue.waypoint - here) * (stride / gap);
    }
    next.position = lift(moved, ue.position.z);
    next.velocity = (moved - here) * (1.0 / dt);
  }
  next.omega = swing(motion, next.heading, next.time);
  return next;
}

UavState step_uav(const UavState& uav, double dt, double max_speed) {
  UavState next = uav;
  const double gap = distance(uav.position, uav.target);
  if (gap == 0.0) {
    next.speed = 0.0;
    return next;
  }
  const double reach = max_speed * dt;
  if (gap <= reach * (1.0 + kArrivalSlack)) {
    next.position = uav.target;
  } else {
    next.position = uav.position + (uav.target - uav.position) * (reach / gap);
  }
  next.speed = distance(uav.position, next.position) / dt;
  return next;
}

int mobility_slots(Vec3 from, Vec3 to, double max_speed, double slot) {
  const double d = distance(from, to);
  if (d == 0.0) return 0;
  const double ratio = d / (max_speed * slot);
  return std::max(1, static_cast<int>(std::ceil(ratio * (1.0 - kArrivalSlack))));
}

}  // namespace uavir
