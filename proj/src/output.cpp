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

#include "uavir/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include <json.hpp>

namespace uavir {
namespace {

using nlohmann::json;

constexpr const char* kEpisodeColumns =
    "slot,time_s,stage,uav_x,uav_y,uav_z,ue_x,ue_y,omega_rad,snr_db,rate_bps,"
    "reward_bits,harvested_w,power_w,energy_j,los_bs_ir,los_ir_ue,body_shadowed,decoded";

constexpr const char* kSweepColumns =
    "axis,value,policy,runs,rate_mean_bps,rate_std_bps,los_mean,los_std,"
    "harvest_mean_w,harvest_std_w";

std::string real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_real(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') throw OutputError("not a number: '" + s + "'");
  return v;
}

long parse_long(const std::string& s) {
  const char* begin = s.c_str();
  char* end = nullptr;
  const long v = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') throw OutputError("not an integer: '" + s + "'");
  return v;
}

bool parse_flag(const std::string& s) {
  if (s == "1") return true;
  if (s == "0") return false;
  throw OutputError("not a 0/1 flag: '" + s + "'");
}

Stage parse_stage(const std::string& s) {
  if (s == "communication") return Stage::communication;
  if (s == "mobility") return Stage::mobility;
  throw OutputError("unknown stage '" + s + "'");
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream is(line);
  while (std::getline(is, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

// NaN and infinities have no JSON spelling; they are written as null and
// read back as NaN.
json real_json(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }
double json_real(const json& v) {
  return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

json aggregates_json(const EpisodeAggregates& a) {
  return {{"slots", a.slots},
          {"hover_slots", a.hover_slots},
          {"relocations", a.relocations},
          {"total_bits", a.total_bits},
          {"mean_rate_bps", a.mean_rate_bps},
          {"mean_rate_all_bps", a.mean_rate_all_bps},
          {"los_fraction", a.los_fraction},
          {"mean_harvest_w", a.mean_harvest_w},
          {"energy_used_j", a.energy_used_j}};
}

void write_csv(const EpisodeMetrics& m, std::ostream& os) {
  os << "# uavir episode\n";
  os << "# config_hash=" << m.config_hash << '\n';
  os << "# seed=" << m.seed << '\n';
  os << "# policy=" << policy_name(m.policy) << '\n';
  os << "# slot_seconds=" << real(m.slot_seconds) << '\n';
  os << "# initial_energy_j=" << real(m.initial_energy_j) << '\n';
  os << "# residual_j=" << real(m.residual_j) << '\n';
  os << kEpisodeColumns << '\n';
  for (const auto& s : m.slots) {
    os << s.slot << ',' << real(s.time) << ',' << stage_name(s.stage) << ','
       << real(s.uav.x) << ',' << real(s.uav.y) << ',' << real(s.uav.z) << ','
       << real(s.ue.x) << ',' << real(s.ue.y) << ',' << real(s.omega) << ','
       << real(s.snr_db) << ',' << real(s.rate_bps) << ',' << real(s.reward_bits) << ','
       << real(s.harvested_w) << ',' << real(s.power_w) << ',' << real(s.energy_j) << ','
       << int(s.los_bs_ir) << ',' << int(s.los_ir_ue) << ',' << int(s.body_shadowed) << ','
       << int(s.decoded) << '\n';
  }
}

void write_json(const EpisodeMetrics& m, std::ostream& os) {
  json slots = json::array();
  for (const auto& s : m.slots) {
    slots.push_back({{"slot", s.slot},
                     {"time_s", s.time},
                     {"stage", stage_name(s.stage)},
                     {"uav", {s.uav.x, s.uav.y, s.uav.z}},
                     {"ue", {s.ue.x, s.ue.y}},
                     {"omega_rad", s.omega},
                     {"snr_db", real_json(s.snr_db)},
                     {"rate_bps", s.rate_bps},
                     {"reward_bits", s.reward_bits},
                     {"harvested_w", s.harvested_w},
                     {"power_w", s.power_w},
                     {"energy_j", s.energy_j},
                     {"los_bs_ir", s.los_bs_ir},
                     {"los_ir_ue", s.los_ir_ue},
                     {"body_shadowed", s.body_shadowed},
                     {"decoded", s.decoded}});
  }
  const json doc = {{"config_hash", m.config_hash},
                    {"seed", m.seed},
                    {"policy", policy_name(m.policy)},
                    {"slot_seconds", m.slot_seconds},
                    {"initial_energy_j", m.initial_energy_j},
                    {"residual_j", m.residual_j},
                    {"aggregates", aggregates_json(m.aggregates)},
                    {"slots", std::move(slots)}};
  os << doc.dump(1) << '\n';
}

EpisodeMetrics read_csv(std::istream& is) {
  EpisodeMetrics m;
  std::map<std::string, std::string> meta;
  std::string line;
  bool header = false;
  long lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      const auto eq = line.find('=');
      if (eq != std::string::npos) {
        meta[line.substr(2, eq - 2)] = line.substr(eq + 1);
      }
      continue;
    }
    if (!header) {
      if (line != kEpisodeColumns) throw OutputError("unexpected CSV header");
      header = true;
      continue;
    }
    const auto c = split(line);
    if (c.size() != 19) {
      throw OutputError("line " + std::to_string(lineno) + ": expected 19 columns");
    }
    SlotRecord s;
    s.slot = parse_long(c[0]);
    s.time = parse_real(c[1]);
    s.stage = parse_stage(c[2]);
    s.uav = {parse_real(c[3]), parse_real(c[4]), parse_real(c[5])};
    s.ue = {parse_real(c[6]), parse_real(c[7])};
    s.omega = parse_real(c[8]);
    s.snr_db = parse_real(c[9]);
    s.rate_bps = parse_real(c[10]);
    s.reward_bits = parse_real(c[11]);
    s.harvested_w = parse_real(c[12]);
    s.power_w = parse_real(c[13]);
    s.energy_j = parse_real(c[14]);
    s.los_bs_ir = parse_flag(c[15]);
    s.los_ir_ue = parse_flag(c[16]);
    s.body_shadowed = parse_flag(c[17]);
    s.decoded = parse_flag(c[18]);
    m.slots.push_back(s);
  }
  if (!header) throw OutputError("missing CSV header");
  try {
    m.config_hash = meta.at("config_hash");
    m.seed = std::stoull(meta.at("seed"));
    m.policy = parse_policy(meta.at("policy"));
    m.slot_seconds = parse_real(meta.at("slot_seconds"));
    m.initial_energy_j = parse_real(meta.at("initial_energy_j"));
    m.residual_j = parse_real(meta.at("residual_j"));
  } catch (const OutputError&) {
    throw;
  } catch (const std::exception& e) {
    throw OutputError(std::string("bad CSV provenance block: ") + e.what());
  }
  m.aggregates = aggregate(m.slots, m.slot_seconds);
  return m;
}

EpisodeMetrics read_json(std::istream& is) {
  EpisodeMetrics m;
  try {
    const json doc = json::parse(is);
    m.config_hash = doc.at("config_hash").get<std::string>();
    m.seed = doc.at("seed").get<std::uint64_t>();
    m.policy = parse_policy(doc.at("policy").get<std::string>());
    m.slot_seconds = doc.at("slot_seconds").get<double>();
    m.initial_energy_j = doc.at("initial_energy_j").get<double>();
    m.residual_j = doc.at("residual_j").get<double>();
    for (const auto& j : doc.at("slots")) {
      SlotRecord s;
      s.slot = j.at("slot").get<long>();
      s.time = j.at("time_s").get<double>();
      s.stage = parse_stage(j.at("stage").get<std::string>());
      const auto& u = j.at("uav");
      s.uav = {u.at(0).get<double>(), u.at(1).get<double>(), u.at(2).get<double>()};
      const auto& e = j.at("ue");
      s.ue = {e.at(0).get<double>(), e.at(1).get<double>()};
      s.omega = j.at("omega_rad").get<double>();
      s.snr_db = json_real(j.at("snr_db"));
      s.rate_bps = j.at("rate_bps").get<double>();
      s.reward_bits = j.at("reward_bits").get<double>();
      s.harvested_w = j.at("harvested_w").get<double>();
      s.power_w = j.at("power_w").get<double>();
      s.energy_j = j.at("energy_j").get<double>();
      s.los_bs_ir = j.at("los_bs_ir").get<bool>();
      s.los_ir_ue = j.at("los_ir_ue").get<bool>();
      s.body_shadowed = j.at("body_shadowed").get<bool>();
      s.decoded = j.at("decoded").get<bool>();
      m.slots.push_back(s);
    }
  } catch (const OutputError&) {
    throw;
  } catch (const std::exception& e) {
    throw OutputError(std::string("malformed episode JSON: ") + e.what());
  }
  m.aggregates = aggregate(m.slots, m.slot_seconds);
  return m;
}

template <typename Writer>
void to_file(const std::string& path, Writer&& write) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw OutputError(path + ": cannot open for writing");
  write(os);
  os.flush();
  if (!os) throw OutputError(path + ": write failed");
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  throw std::invalid_argument("unknown format '" + name + "' (csv, json)");
}

void write_episode(const EpisodeMetrics& m, Format format, std::ostream& os) {
  if (format == Format::csv) {
    write_csv(m, os);
  } else {
    write_json(m, os);
  }
}

void write_sweep(const SweepTable& t, Format format, std::ostream& os) {
  std::string seeds;
  for (std::size_t i = 0; i < t.seeds.size(); ++i) {
    seeds += (i ? ";" : "") + std::to_string(t.seeds[i]);
  }
  if (format == Format::csv) {
    os << "# uavir sweep\n";
    os << "# config_hash=" << t.config_hash << '\n';
    os << "# seeds=" << seeds << '\n';
    os << kSweepColumns << '\n';
    for (const auto& r : t.rows) {
      os << axis_name(t.axis) << ',' << real(r.value) << ',' << policy_name(r.policy) << ','
         << r.runs << ',' << real(r.rate_bps.mean) << ',' << real(r.rate_bps.stddev) << ','
         << real(r.los_fraction.mean) << ',' << real(r.los_fraction.stddev) << ','
         << real(r.harvest_w.mean) << ',' << real(r.harvest_w.stddev) << '\n';
    }
    return;
  }
  json rows = json::array();
  for (const auto& r : t.rows) {
    rows.push_back({{"value", r.value},
                    {"policy", policy_name(r.policy)},
                    {"runs", r.runs},
                    {"rate_mean_bps", r.rate_bps.mean},
                    {"rate_std_bps", r.rate_bps.stddev},
                    {"los_mean", r.los_fraction.mean},
                    {"los_std", r.los_fraction.stddev},
                    {"harvest_mean_w", r.harvest_w.mean},
                    {"harvest_std_w", r.harvest_w.stddev}});
  }
  const json doc = {{"config_hash", t.config_hash},
                    {"axis", axis_name(t.axis)},
                    {"seeds", t.seeds},
                    {"rows", std::move(rows)}};
  os << doc.dump(1) << '\n';
}

void emit_episode(const EpisodeMetrics& m, Format format, const std::string& path) {
  to_file(path, [&](std::ostream& os) { write_episode(m, format, os); });
}

void emit_sweep(const SweepTable& t, Format format, const std::string& path) {
  to_file(path, [&](std::ostream& os) { write_sweep(t, format, os); });
}

EpisodeMetrics read_episode(std::istream& is, Format format) {
  return format == Format::csv ? read_csv(is) : read_json(is);
}

}  // namespace uavir
