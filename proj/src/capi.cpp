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

#include "uavir/uavir.h"

#include <cstring>
#include <new>
#include <string>
#include <vector>

#include "uavir/config.hpp"
#include "uavir/engine.hpp"
#include "uavir/output.hpp"

struct uavir_config {
  uavir::ScenarioConfig cfg;
};

struct uavir_model {
  uavir::WarmStart warm;
};

struct uavir_episode {
  uavir::EpisodeOutcome outcome;
};

struct uavir_sweep {
  uavir::SweepTable table;
};

namespace {

thread_local std::string g_last_error;

uavir_status fail(uavir_status code, std::string message) {
  g_last_error = std::move(message);
  return code;
}

// Maps exceptions escaping `body` onto status codes.
template <typename Fn>
uavir_status guarded(Fn&& body) {
  try {
    g_last_error.clear();
    return body();
  } catch (const uavir::ConfigError& e) {
    return fail(UAVIR_ERR_CONFIG, e.what());
  } catch (const uavir::OutputError& e) {
    return fail(UAVIR_ERR_IO, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(UAVIR_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(UAVIR_ERR_RUNTIME, "out of memory");
  } catch (const std::exception& e) {
    return fail(UAVIR_ERR_RUNTIME, e.what());
  } catch (...) {
    return fail(UAVIR_ERR_RUNTIME, "unknown error");
  }
}

bool to_policy(uavir_policy p, uavir::Policy& out) {
  switch (p) {
    case UAVIR_POLICY_RL: out = uavir::Policy::rl; return true;
    case UAVIR_POLICY_GREEDY: out = uavir::Policy::greedy; return true;
    case UAVIR_POLICY_STATIC: out = uavir::Policy::static_ir; return true;
  }
  return false;
}

uavir_policy from_policy(uavir::Policy p) {
  switch (p) {
    case uavir::Policy::rl: return UAVIR_POLICY_RL;
    case uavir::Policy::greedy: return UAVIR_POLICY_GREEDY;
    case uavir::Policy::static_ir: return UAVIR_POLICY_STATIC;
  }
  return UAVIR_POLICY_STATIC;
}

bool to_format(uavir_format f, uavir::Format& out) {
  if (f == UAVIR_FORMAT_CSV) {
    out = uavir::Format::csv;
    return true;
  }
  if (f == UAVIR_FORMAT_JSON) {
    out = uavir::Format::json;
    return true;
  }
  return false;
}

uavir::Progress bridge(uavir_progress_fn fn, void* user) {
  if (!fn) return {};
  return [fn, user](const std::string& msg) { fn(msg.c_str(), user); };
}

}  // namespace

extern "C" {

const char* uavir_version(void) { return "0.1.0"; }

const char* uavir_last_error(void) { return g_last_error.c_str(); }

uavir_status uavir_config_default(uavir_config** out) {
  return guarded([&] {
    if (!out) return fail(UAVIR_ERR_ARGUMENT, "out is NULL");
    *out = new uavir_config{uavir::default_config()};
    return UAVIR_OK;
  });
}

uavir_status uavir_config_load(const char* path, uavir_config** out) {
  return guarded([&] {
    if (!path || !out) return fail(UAVIR_ERR_ARGUMENT, "path or out is NULL");
    *out = new uavir_config{uavir::load_config(path)};
    return UAVIR_OK;
  });
}

uavir_status uavir_config_parse(const char* json_text, uavir_config** out) {
  return guarded([&] {
    if (!json_text || !out) return fail(UAVIR_ERR_ARGUMENT, "json_text or out is NULL");
    *out = new uavir_config{uavir::parse_config(json_text)};
    return UAVIR_OK;
  });
}

uavir_status uavir_config_set_seed(uavir_config* cfg, uint64_t seed) {
  if (!cfg) return fail(UAVIR_ERR_ARGUMENT, "cfg is NULL");
  cfg->cfg.seed = seed;
  return UAVIR_OK;
}

uavir_status uavir_config_hash(const uavir_config* cfg, char* buf, size_t len) {
  return guarded([&] {
    if (!cfg || !buf) return fail(UAVIR_ERR_ARGUMENT, "cfg or buf is NULL");
    const std::string h = uavir::config_hash(cfg->cfg);
    if (len < h.size() + 1) return fail(UAVIR_ERR_ARGUMENT, "buffer shorter than 17 bytes");
    std::memcpy(buf, h.c_str(), h.size() + 1);
    return UAVIR_OK;
  });
}

void uavir_config_free(uavir_config* cfg) { delete cfg; }

uavir_status uavir_model_load(const char* path, uavir_model** out) {
  return guarded([&] {
    if (!path || !out) return fail(UAVIR_ERR_ARGUMENT, "path or out is NULL");
    uavir::ValueNetwork net;
    try {
      net = uavir::ValueNetwork::load_file(path);
    } catch (const std::runtime_error& e) {
      return fail(UAVIR_ERR_IO, std::string(path) + ": " + e.what());
    }
    // A loaded model resumes at the exploration floor of whatever config
    // uses it; the caller's config decides the floor at run time.
    *out = new uavir_model{uavir::WarmStart{std::move(net), -1.0}};
    return UAVIR_OK;
  });
}

uavir_status uavir_model_save(const uavir_model* model, const char* path) {
  return guarded([&] {
    if (!model || !path) return fail(UAVIR_ERR_ARGUMENT, "model or path is NULL");
    try {
      model->warm.network.save_file(path);
    } catch (const std::runtime_error& e) {
      return fail(UAVIR_ERR_IO, std::string(path) + ": " + e.what());
    }
    return UAVIR_OK;
  });
}

uavir_status uavir_model_warm_up(const uavir_config* cfg, uavir_progress_fn progress, void* user,
                                 uavir_model** out) {
  return guarded([&] {
    if (!cfg || !out) return fail(UAVIR_ERR_ARGUMENT, "cfg or out is NULL");
    *out = new uavir_model{uavir::warm_up(cfg->cfg, bridge(progress, user))};
    return UAVIR_OK;
  });
}

void uavir_model_free(uavir_model* model) { delete model; }

uavir_status uavir_run_episode(const uavir_config* cfg, uavir_policy policy,
                               const uavir_model* warm, uavir_episode** out) {
  return guarded([&] {
    if (!cfg || !out) return fail(UAVIR_ERR_ARGUMENT, "cfg or out is NULL");
    uavir::Policy p;
    if (!to_policy(policy, p)) return fail(UAVIR_ERR_ARGUMENT, "unknown policy");
    uavir::validate(cfg->cfg);
    std::optional<uavir::WarmStart> start;
    if (warm) {
      start = warm->warm;
      if (start->exploration < 0.0) start->exploration = cfg->cfg.agent.explore_floor;
    }
    *out = new uavir_episode{uavir::run_episode(cfg->cfg, p, start ? &*start : nullptr)};
    return UAVIR_OK;
  });
}

uavir_status uavir_episode_aggregates(const uavir_episode* ep, uavir_aggregates* out) {
  if (!ep || !out) return fail(UAVIR_ERR_ARGUMENT, "ep or out is NULL");
  const auto& a = ep->outcome.metrics.aggregates;
  *out = uavir_aggregates{a.slots,         a.hover_slots,       a.relocations,
                          a.total_bits,    a.mean_rate_bps,     a.mean_rate_all_bps,
                          a.los_fraction,  a.mean_harvest_w,    a.energy_used_j};
  return UAVIR_OK;
}

uavir_status uavir_episode_write(const uavir_episode* ep, uavir_format format, const char* path) {
  return guarded([&] {
    if (!ep || !path) return fail(UAVIR_ERR_ARGUMENT, "ep or path is NULL");
    uavir::Format f;
    if (!to_format(format, f)) return fail(UAVIR_ERR_ARGUMENT, "unknown format");
    uavir::emit_episode(ep->outcome.metrics, f, path);
    return UAVIR_OK;
  });
}

uavir_status uavir_episode_model(const uavir_episode* ep, uavir_model** out) {
  return guarded([&] {
    if (!ep || !out) return fail(UAVIR_ERR_ARGUMENT, "ep or out is NULL");
    if (!ep->outcome.learned) return fail(UAVIR_ERR_ARGUMENT, "episode has no learned model");
    *out = new uavir_model{*ep->outcome.learned};
    return UAVIR_OK;
  });
}

void uavir_episode_free(uavir_episode* ep) { delete ep; }

uavir_status uavir_run_sweep(const uavir_config* cfg, uavir_axis axis, const double* values,
                             size_t n_values, const uavir_policy* policies, size_t n_policies,
                             const uint64_t* seeds, size_t n_seeds, uavir_progress_fn progress,
                             void* user, uavir_sweep** out) {
  return guarded([&] {
    if (!cfg || !out || !values || !policies || !seeds) {
      return fail(UAVIR_ERR_ARGUMENT, "NULL argument");
    }
    if (axis != UAVIR_AXIS_ALTITUDE && axis != UAVIR_AXIS_TX_POWER) {
      return fail(UAVIR_ERR_ARGUMENT, "unknown sweep axis");
    }
    std::vector<uavir::Policy> ps(n_policies);
    for (size_t i = 0; i < n_policies; ++i) {
      if (!to_policy(policies[i], ps[i])) return fail(UAVIR_ERR_ARGUMENT, "unknown policy");
    }
    const uavir::SweepAxis a =
        axis == UAVIR_AXIS_ALTITUDE ? uavir::SweepAxis::altitude : uavir::SweepAxis::tx_power;
    uavir::validate(cfg->cfg);
    *out = new uavir_sweep{uavir::run_sweep(cfg->cfg, a, {values, n_values}, ps,
                                            {seeds, n_seeds}, bridge(progress, user))};
    return UAVIR_OK;
  });
}

size_t uavir_sweep_row_count(const uavir_sweep* sweep) {
  return sweep ? sweep->table.rows.size() : 0;
}

uavir_status uavir_sweep_get_row(const uavir_sweep* sweep, size_t index, uavir_sweep_row* out) {
  if (!sweep || !out) return fail(UAVIR_ERR_ARGUMENT, "sweep or out is NULL");
  if (index >= sweep->table.rows.size()) return fail(UAVIR_ERR_ARGUMENT, "row index out of range");
  const auto& r = sweep->table.rows[index];
  *out = uavir_sweep_row{r.value,          from_policy(r.policy), r.runs,
                         r.rate_bps.mean,  r.rate_bps.stddev,     r.los_fraction.mean,
                         r.los_fraction.stddev, r.harvest_w.mean, r.harvest_w.stddev};
  return UAVIR_OK;
}

uavir_status uavir_sweep_write(const uavir_sweep* sweep, uavir_format format, const char* path) {
  return guarded([&] {
    if (!sweep || !path) return fail(UAVIR_ERR_ARGUMENT, "sweep or path is NULL");
    uavir::Format f;
    if (!to_format(format, f)) return fail(UAVIR_ERR_ARGUMENT, "unknown format");
    uavir::emit_sweep(sweep->table, f, path);
    return UAVIR_OK;
  });
}

void uavir_sweep_free(uavir_sweep* sweep) { delete sweep; }

}  // extern "C"
