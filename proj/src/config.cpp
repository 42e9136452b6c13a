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

#include "uavir/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace uavir {
namespace {

using nlohmann::json;

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out = "invalid configuration";
  for (const auto& l : lines) out += "\n  " + l;
  return out;
}

// Walks one JSON object, reading known keys and remembering which were
// consumed; everything left over is reported as unknown.
class Reader {
 public:
  Reader(const json& node, std::string path, std::vector<std::string>& problems)
      : node_(node), path_(std::move(path)), problems_(problems) {
    if (!node_.is_object()) {
      problems_.push_back(where("") + ": expected an object");
      ok_ = false;
    }
  }

  ~Reader() {
    if (!ok_) return;
    for (const auto& [key, value] : node_.items()) {
      if (!seen_.count(key)) problems_.push_back(where(key) + ": unknown key");
    }
  }

  std::string where(const std::string& key) const {
    if (path_.empty()) return key.empty() ? "<root>" : key;
    return key.empty() ? path_ : path_ + "." + key;
  }

  const json* find(const std::string& key) {
    if (!ok_) return nullptr;
    seen_.insert(key);
    const auto it = node_.find(key);
    return it == node_.end() ? nullptr : &*it;
  }

  void number(const std::string& key, double& out) {
    if (const json* v = find(key)) {
      if (v->is_number()) {
        out = v->get<double>();
      } else {
        problems_.push_back(where(key) + ": expected a number");
      }
    }
  }

  template <typename Int>
  void integer(const std::string& key, Int& out) {
    if (const json* v = find(key)) {
      if (v->is_number_integer()) {
        out = v->get<Int>();
      } else {
        problems_.push_back(where(key) + ": expected an integer");
      }
    }
  }

  void boolean(const std::string& key, bool& out) {
    if (const json* v = find(key)) {
      if (v->is_boolean()) {
        out = v->get<bool>();
      } else {
        problems_.push_back(where(key) + ": expected true or false");
      }
    }
  }

  void string(const std::string& key, std::string& out) {
    if (const json* v = find(key)) {
      if (v->is_string()) {
        out = v->get<std::string>();
      } else {
        problems_.push_back(where(key) + ": expected a string");
      }
    }
  }

  void vec3(const std::string& key, Vec3& out) { fixed_array(key, 3, &out.x, &out.y, &out.z); }
  void vec2(const std::string& key, Vec2& out) { fixed_array(key, 2, &out.x, &out.y, nullptr); }

  std::vector<std::string>& problems() { return problems_; }

 private:
  void fixed_array(const std::string& key, std::size_t n, double* a, double* b, double* c) {
    const json* v = find(key);
    if (!v) return;
    if (!v->is_array() || v->size() != n) {
      problems_.push_back(where(key) + ": expected an array of " + std::to_string(n) + " numbers");
      return;
    }
    double* dst[3] = {a, b, c};
    for (std::size_t i = 0; i < n; ++i) {
      if (!(*v)[i].is_number()) {
        problems_.push_back(where(key) + "[" + std::to_string(i) + "]: expected a number");
        return;
      }
    }
    for (std::size_t i = 0; i < n; ++i) *dst[i] = (*v)[i].get<double>();
  }

  const json& node_;
  std::string path_;
  std::vector<std::string>& problems_;
  std::set<std::string> seen_;
  bool ok_{true};
};

template <typename Fn>
void section(Reader& parent, const std::string& key, Fn&& fn) {
  if (const json* v = parent.find(key)) {
    Reader child(*v, parent.where(key), parent.problems());
    fn(child);
  }
}

void read_array(Reader& r, ArrayConfig& a) {
  r.integer("rows", a.rows);
  r.integer("cols", a.cols);
  r.number("spacing", a.spacing);
}

void read_custom(Reader& parent, std::optional<CustomGeometry>& out) {
  const json* v = parent.find("custom");
  if (!v || v->is_null()) return;
  auto& problems = parent.problems();
  Reader r(*v, parent.where("custom"), problems);
  CustomGeometry g;
  r.vec3("bounds_lo", g.bounds_lo);
  r.vec3("bounds_hi", g.bounds_hi);
  const auto list = [&](const std::string& key, auto&& each) {
    const json* arr = r.find(key);
    if (!arr) return;
    if (!arr->is_array()) {
      problems.push_back(r.where(key) + ": expected an array");
      return;
    }
    for (std::size_t i = 0; i < arr->size(); ++i) {
      Reader item((*arr)[i], r.where(key) + "[" + std::to_string(i) + "]", problems);
      each(item);
    }
  };
  list("buildings", [&](Reader& item) {
    Building b;
    item.vec3("min", b.lo);
    item.vec3("max", b.hi);
    g.buildings.push_back(b);
  });
  list("trees", [&](Reader& item) {
    Tree t;
    item.vec3("crown_center", t.crown_center);
    item.number("crown_radius", t.crown_radius);
    g.trees.push_back(t);
  });
  list("streets", [&](Reader& item) {
    Rect s;
    item.vec2("min", s.lo);
    item.vec2("max", s.hi);
    g.streets.push_back(s);
  });
  out = std::move(g);
}

const char* bootstrap_name(Bootstrap b) {
  return b == Bootstrap::every_slot ? "every_slot" : "arrival_only";
}

json vec_json(Vec3 v) { return json::array({v.x, v.y, v.z}); }
json vec_json(Vec2 v) { return json::array({v.x, v.y}); }

json array_json(const ArrayConfig& a) {
  return {{"rows", a.rows}, {"cols", a.cols}, {"spacing", a.spacing}};
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_lines(problems)), problems_(std::move(problems)) {}

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig parse_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError({std::string("<root>: malformed JSON: ") + e.what()});
  }

  ScenarioConfig cfg = default_config();
  std::vector<std::string> problems;
  {
    Reader root(doc, "", problems);
    root.integer("seed", cfg.seed);
    section(root, "geometry", [&](Reader& r) {
      auto& g = cfg.geometry;
      r.number("street_width", g.layout.street_width);
      r.number("building_size", g.layout.building_size);
      r.number("building_height", g.layout.building_height);
      r.integer("tree_count", g.layout.tree_count);
      r.number("crown_radius", g.layout.crown_radius);
      r.number("crown_height", g.layout.crown_height);
      r.number("tree_inset", g.layout.tree_inset);
      r.number("ceiling", g.layout.ceiling);
      r.vec3("bs_position", g.layout.bs_position);
      r.integer("tree_seed", g.tree_seed);
      r.vec3("static_ir_position", g.static_ir_position);
      read_custom(r, g.custom);
    });
    section(root, "radio", [&](Reader& r) {
      auto& x = cfg.radio;
      r.number("carrier_ghz", x.carrier_ghz);
      r.number("bandwidth_hz", x.bandwidth_hz);
      r.number("tx_power_dbm", x.tx_power_dbm);
      r.number("snr_threshold_db", x.snr_threshold_db);
      r.number("amplitude", x.amplitude);
      r.number("harvest_efficiency", x.harvest_efficiency);
      r.number("thermal_noise_dbm_hz", x.thermal_noise_dbm_hz);
      r.number("noise_figure_db", x.noise_figure_db);
      r.integer("scatter_paths", x.scatter_paths);
      r.number("scatter_offset_db", x.scatter_offset_db);
      r.number("body_loss_db", x.body_loss_db);
      r.number("bs_gain_dbi", x.bs_gain_dbi);
      r.number("ir_gain_dbi", x.ir_gain_dbi);
      r.number("ue_gain_dbi", x.ue_gain_dbi);
      section(r, "bs_array", [&](Reader& a) { read_array(a, x.bs_array); });
      section(r, "ir_array", [&](Reader& a) { read_array(a, x.ir_array); });
    });
    section(root, "timing", [&](Reader& r) {
      r.number("slot_seconds", cfg.timing.slot_seconds);
      r.integer("coherence_multiple", cfg.timing.coherence_multiple);
      r.integer("horizon_slots", cfg.timing.horizon_slots);
    });
    section(root, "ue", [&](Reader& r) {
      auto& u = cfg.ue;
      r.number("speed", u.speed);
      r.number("height", u.height);
      r.number("swing_amplitude_deg", u.swing_amplitude_deg);
      r.number("swing_period_s", u.swing_period_s);
      r.number("shadow_half_width_deg", u.shadow_half_width_deg);
      r.number("shadow_max_elevation_deg", u.shadow_max_elevation_deg);
    });
    section(root, "uav", [&](Reader& r) {
      r.number("altitude", cfg.uav.altitude);
      r.number("max_speed", cfg.uav.max_speed);
      r.vec2("start", cfg.uav.start);
    });
    section(root, "energy", [&](Reader& r) {
      auto& e = cfg.energy;
      r.number("initial_j", e.initial_j);
      r.number("hover_w", e.hover_w);
      r.number("move_w", e.move_w);
      r.number("reflect_w", e.reflect_w);
      r.number("residual_j", e.residual_j);
      r.boolean("cap_harvest_at_reflect", e.cap_harvest_at_reflect);
    });
    section(root, "agent", [&](Reader& r) {
      auto& a = cfg.agent;
      r.number("gamma", a.gamma);
      r.integer("grid_size", a.grid_size);
      r.number("grid_spacing", a.grid_spacing);
      r.number("explore_initial", a.explore_initial);
      r.number("explore_floor", a.explore_floor);
      r.number("explore_decay", a.explore_decay);
      r.number("learning_rate", a.learning_rate);
      r.integer("hidden_units", a.hidden_units);
      std::string mode = bootstrap_name(a.bootstrap);
      r.string("bootstrap", mode);
      if (mode == "every_slot") {
        a.bootstrap = Bootstrap::every_slot;
      } else if (mode == "arrival_only") {
        a.bootstrap = Bootstrap::arrival_only;
      } else {
        problems.push_back(r.where("bootstrap") + ": expected \"every_slot\" or \"arrival_only\"");
      }
      r.integer("warmup_episodes", a.warmup_episodes);
      r.integer("warmup_seed", a.warmup_seed);
      r.integer("history_window", a.history_window);
      r.integer("prediction_horizon_slots", a.prediction_horizon_slots);
    });
  }
  if (!problems.empty()) throw ConfigError(std::move(problems));
  validate(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({path + ": cannot open scenario file"});
  std::ostringstream text;
  text << in.rdbuf();
  return parse_config(text.str());
}

std::string to_json(const ScenarioConfig& cfg, int indent) {
  const auto& g = cfg.geometry;
  json geometry = {
      {"street_width", g.layout.street_width},
      {"building_size", g.layout.building_size},
      {"building_height", g.layout.building_height},
      {"tree_count", g.layout.tree_count},
      {"crown_radius", g.layout.crown_radius},
      {"crown_height", g.layout.crown_height},
      {"tree_inset", g.layout.tree_inset},
      {"ceiling", g.layout.ceiling},
      {"bs_position", vec_json(g.layout.bs_position)},
      {"tree_seed", g.tree_seed},
      {"static_ir_position", vec_json(g.static_ir_position)},
      {"custom", nullptr}};
  if (g.custom) {
    json c = {{"bounds_lo", vec_json(g.custom->bounds_lo)},
              {"bounds_hi", vec_json(g.custom->bounds_hi)},
              {"buildings", json::array()},
              {"trees", json::array()},
              {"streets", json::array()}};
    for (const auto& b : g.custom->buildings) {
      c["buildings"].push_back({{"min", vec_json(b.lo)}, {"max", vec_json(b.hi)}});
    }
    for (const auto& t : g.custom->trees) {
      c["trees"].push_back({{"crown_center", vec_json(t.crown_center)},
                            {"crown_radius", t.crown_radius}});
    }
    for (const auto& s : g.custom->streets) {
      c["streets"].push_back({{"min", vec_json(s.lo)}, {"max", vec_json(s.hi)}});
    }
    geometry["custom"] = std::move(c);
  }

  const auto& x = cfg.radio;
  const auto& e = cfg.energy;
  const auto& a = cfg.agent;
  json doc = {
      {"seed", cfg.seed},
      {"geometry", std::move(geometry)},
      {"radio",
       {{"carrier_ghz", x.carrier_ghz},
        {"bandwidth_hz", x.bandwidth_hz},
        {"tx_power_dbm", x.tx_power_dbm},
        {"snr_threshold_db", x.snr_threshold_db},
        {"amplitude", x.amplitude},
        {"harvest_efficiency", x.harvest_efficiency},
        {"thermal_noise_dbm_hz", x.thermal_noise_dbm_hz},
        {"noise_figure_db", x.noise_figure_db},
        {"scatter_paths", x.scatter_paths},
        {"scatter_offset_db", x.scatter_offset_db},
        {"body_loss_db", x.body_loss_db},
        {"bs_gain_dbi", x.bs_gain_dbi},
        {"ir_gain_dbi", x.ir_gain_dbi},
        {"ue_gain_dbi", x.ue_gain_dbi},
        {"bs_array", array_json(x.bs_array)},
        {"ir_array", array_json(x.ir_array)}}},
      {"timing",
       {{"slot_seconds", cfg.timing.slot_seconds},
        {"coherence_multiple", cfg.timing.coherence_multiple},
        {"horizon_slots", cfg.timing.horizon_slots}}},
      {"ue",
       {{"speed", cfg.ue.speed},
        {"height", cfg.ue.height},
        {"swing_amplitude_deg", cfg.ue.swing_amplitude_deg},
        {"swing_period_s", cfg.ue.swing_period_s},
        {"shadow_half_width_deg", cfg.ue.shadow_half_width_deg},
        {"shadow_max_elevation_deg", cfg.ue.shadow_max_elevation_deg}}},
      {"uav",
       {{"altitude", cfg.uav.altitude},
        {"max_speed", cfg.uav.max_speed},
        {"start", vec_json(cfg.uav.start)}}},
      {"energy",
       {{"initial_j", e.initial_j},
        {"hover_w", e.hover_w},
        {"move_w", e.move_w},
        {"reflect_w", e.reflect_w},
        {"residual_j", e.residual_j},
        {"cap_harvest_at_reflect", e.cap_harvest_at_reflect}}},
      {"agent",
       {{"gamma", a.gamma},
        {"grid_size", a.grid_size},
        {"grid_spacing", a.grid_spacing},
        {"explore_initial", a.explore_initial},
        {"explore_floor", a.explore_floor},
        {"explore_decay", a.explore_decay},
        {"learning_rate", a.learning_rate},
        {"hidden_units", a.hidden_units},
        {"bootstrap", bootstrap_name(a.bootstrap)},
        {"warmup_episodes", a.warmup_episodes},
        {"warmup_seed", a.warmup_seed},
        {"history_window", a.history_window},
        {"prediction_horizon_slots", a.prediction_horizon_slots}}}};
  return doc.dump(indent);
}

void validate(const ScenarioConfig& cfg) {
  std::vector<std::string> p;
  const auto require = [&](bool ok, const char* path, const char* msg) {
    if (!ok) p.push_back(std::string(path) + ": " + msg);
  };
  const auto finite = [](double v) { return std::isfinite(v); };

  const auto& g = cfg.geometry;
  if (!g.custom) {
    require(g.layout.street_width > 0, "geometry.street_width", "must be positive");
    require(g.layout.building_size > 0, "geometry.building_size", "must be positive");
    require(g.layout.building_height > 0, "geometry.building_height", "must be positive");
    require(g.layout.tree_count >= 0, "geometry.tree_count", "must be non-negative");
    require(g.layout.crown_radius > 0, "geometry.crown_radius", "must be positive");
    require(g.layout.tree_inset >= 0 && g.layout.tree_inset < g.layout.street_width / 2,
            "geometry.tree_inset", "must lie within the street half-width");
    require(g.layout.ceiling > g.layout.building_height, "geometry.ceiling",
            "must be above the buildings");
  }

  const auto& x = cfg.radio;
  require(x.carrier_ghz > 0 && finite(x.carrier_ghz), "radio.carrier_ghz", "must be positive");
  require(x.bandwidth_hz > 0 && finite(x.bandwidth_hz), "radio.bandwidth_hz", "must be positive");
  require(finite(x.tx_power_dbm), "radio.tx_power_dbm", "must be finite");
  require(finite(x.snr_threshold_db), "radio.snr_threshold_db", "must be finite");
  require(x.amplitude >= 0 && x.amplitude < 1, "radio.amplitude", "must lie in [0, 1)");
  require(x.harvest_efficiency > 0 && x.harvest_efficiency < 1, "radio.harvest_efficiency",
          "must lie in (0, 1)");
  require(finite(x.thermal_noise_dbm_hz), "radio.thermal_noise_dbm_hz", "must be finite");
  require(finite(x.noise_figure_db), "radio.noise_figure_db", "must be finite");
  require(x.scatter_paths >= 0, "radio.scatter_paths", "must be non-negative");
  require(x.body_loss_db >= 0, "radio.body_loss_db", "must be non-negative");
  require(x.bs_array.rows >= 1 && x.bs_array.cols >= 1, "radio.bs_array", "needs rows, cols >= 1");
  require(x.ir_array.rows >= 1 && x.ir_array.cols >= 1, "radio.ir_array", "needs rows, cols >= 1");
  require(x.bs_array.spacing > 0, "radio.bs_array.spacing", "must be positive");
  require(x.ir_array.spacing > 0, "radio.ir_array.spacing", "must be positive");

  const auto& t = cfg.timing;
  require(t.slot_seconds > 0, "timing.slot_seconds", "must be positive");
  require(t.coherence_multiple >= 1, "timing.coherence_multiple", "must be an integer >= 1");
  require(t.horizon_slots >= 1, "timing.horizon_slots", "must be >= 1");
  if (t.slot_seconds > 0 && t.coherence_multiple >= 1 && cfg.ue.speed > 0 &&
      x.carrier_ghz > 0) {
    const double dt = coherence_time(kSpeedOfLight / (x.carrier_ghz * 1e9), cfg.ue.speed,
                                     t.slot_seconds);
    const double implied = t.slot_seconds / t.coherence_multiple;
    require(std::abs(implied - dt) <= 0.01 * dt, "timing.slot_seconds",
            "slot_seconds / coherence_multiple must match the coherence time "
            "wavelength / ue.speed within 1%");
  }

  const auto& u = cfg.ue;
  require(u.speed >= 0, "ue.speed", "must be non-negative");
  require(u.height > 0, "ue.height", "must be positive");
  require(u.swing_period_s > 0, "ue.swing_period_s", "must be positive");
  require(u.shadow_half_width_deg >= 0 && u.shadow_half_width_deg <= 180,
          "ue.shadow_half_width_deg", "must lie in [0, 180]");
  require(u.shadow_max_elevation_deg > 0 && u.shadow_max_elevation_deg <= 90,
          "ue.shadow_max_elevation_deg", "must lie in (0, 90]");

  require(cfg.uav.altitude > 0, "uav.altitude", "must be positive");
  require(cfg.uav.max_speed > 0, "uav.max_speed", "must be positive");

  const auto& e = cfg.energy;
  require(e.move_w > e.hover_w && e.hover_w > e.reflect_w && e.reflect_w > 0, "energy",
          "need move_w > hover_w > reflect_w > 0");
  require(e.residual_j >= 0 && e.residual_j < e.move_w * t.slot_seconds, "energy.residual_j",
          "must lie in [0, move_w * slot_seconds)");
  require(e.initial_j > e.residual_j, "energy.initial_j", "must exceed residual_j");

  const auto& a = cfg.agent;
  require(a.gamma >= 0 && a.gamma < 1, "agent.gamma", "must lie in [0, 1)");
  require(a.grid_size >= 1, "agent.grid_size", "must be >= 1");
  require(a.grid_spacing > 0, "agent.grid_spacing", "must be positive");
  require(a.explore_initial >= 0 && a.explore_initial <= 1, "agent.explore_initial",
          "must lie in [0, 1]");
  require(a.explore_floor >= 0 && a.explore_floor <= a.explore_initial, "agent.explore_floor",
          "must lie in [0, explore_initial]");
  require(a.explore_decay > 0 && a.explore_decay <= 1, "agent.explore_decay",
          "must lie in (0, 1]");
  require(a.learning_rate > 0, "agent.learning_rate", "must be positive");
  require(a.hidden_units >= 1, "agent.hidden_units", "must be >= 1");
  require(a.warmup_episodes >= 0, "agent.warmup_episodes", "must be non-negative");
  require(a.history_window >= 2, "agent.history_window", "must be >= 2");
  require(a.prediction_horizon_slots >= 0, "agent.prediction_horizon_slots",
          "must be non-negative");

  if (p.empty()) {
    try {
      const Scene scene = build_scene(cfg);
      scene.validate();
      const Vec3 start = lift(cfg.uav.start, cfg.uav.altitude);
      require(scene.in_bounds(start) && !scene.inside_obstacle(start), "uav.start",
              "must be a free point inside the scene at flight altitude");
      require(scene.in_bounds(g.static_ir_position) && !scene.inside_obstacle(g.static_ir_position),
              "geometry.static_ir_position", "must be a free point inside the scene");
      require(segment_clear(scene.bs_position, g.static_ir_position, scene.obstacles),
              "geometry.static_ir_position", "needs a clear line of sight to the BS");
    } catch (const ScenarioError& err) {
      p.push_back(std::string("geometry: ") + err.what());
    }
  }
  if (!p.empty()) throw ConfigError(std::move(p));
}

std::string config_hash(const ScenarioConfig& cfg) {
  ScenarioConfig unseeded = cfg;
  unseeded.seed = 0;
  const std::string canonical = to_json(unseeded, -1);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const unsigned char c : canonical) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

double coherence_time(double wavelength_m, double ue_speed, double max_seconds) {
  if (!(ue_speed > 0.0)) return max_seconds;
  return wavelength_m / ue_speed;
}

Scene build_scene(const ScenarioConfig& cfg) {
  const auto& g = cfg.geometry;
  if (!g.custom) {
    Rng tree_rng = make_rng(g.tree_seed, 0);
    return make_crossing_scene(g.layout, tree_rng);
  }
  Scene s;
  s.bounds_lo = g.custom->bounds_lo;
  s.bounds_hi = g.custom->bounds_hi;
  s.bs_position = g.layout.bs_position;
  for (const auto& b : g.custom->buildings) s.obstacles.emplace_back(b);
  for (const auto& t : g.custom->trees) s.obstacles.emplace_back(t);
  s.streets = g.custom->streets;
  return s;
}

RadioParams radio_params(const ScenarioConfig& cfg) {
  const auto& x = cfg.radio;
  RadioParams r;
  r.carrier_ghz = x.carrier_ghz;
  r.bandwidth_hz = x.bandwidth_hz;
  r.tx_power_w = db_to_linear(x.tx_power_dbm - 30.0);
  r.thermal_noise_dbm_hz = x.thermal_noise_dbm_hz;
  r.noise_figure_db = x.noise_figure_db;
  r.scatter_paths = x.scatter_paths;
  r.scatter_offset_db = x.scatter_offset_db;
  r.body_loss_db = x.body_loss_db;
  r.bs_gain_dbi = x.bs_gain_dbi;
  r.ir_gain_dbi = x.ir_gain_dbi;
  r.ue_gain_dbi = x.ue_gain_dbi;
  return r;
}

ChannelModel channel_model(const ScenarioConfig& cfg) {
  const auto& x = cfg.radio;
  // The BS panel faces the crossing; the reflector panel faces the ground.
  const Vec3 bs_facing = (Vec3{0.0, 0.0, 0.0} - cfg.geometry.layout.bs_position).normalized();
  ArrayGeometry bs{x.bs_array.rows, x.bs_array.cols, x.bs_array.spacing,
                   bs_facing == Vec3{} ? Vec3{1.0, 0.0, 0.0} : bs_facing};
  ArrayGeometry ir{x.ir_array.rows, x.ir_array.cols, x.ir_array.spacing, {0.0, 0.0, -1.0}};
  return ChannelModel(radio_params(cfg), bs, ir, body_shadow(cfg));
}

EnergyBudget initial_budget(const ScenarioConfig& cfg) {
  const auto& e = cfg.energy;
  EnergyBudget b = make_budget(e.initial_j, e.hover_w, e.move_w, e.reflect_w, e.residual_j);
  b.cap_harvest_at_reflect = e.cap_harvest_at_reflect;
  return b;
}

UeMotion ue_motion(const ScenarioConfig& cfg) {
  UeMotion m;
  m.speed = cfg.ue.speed;
  m.height = cfg.ue.height;
  m.swing_amplitude = deg2rad(cfg.ue.swing_amplitude_deg);
  m.swing_period = cfg.ue.swing_period_s;
  return m;
}

BodyShadow body_shadow(const ScenarioConfig& cfg) {
  return BodyShadow{deg2rad(cfg.ue.shadow_half_width_deg),
                    deg2rad(cfg.ue.shadow_max_elevation_deg)};
}

}  // namespace uavir
