/* SPDX-License-Identifier: Apache-2.0
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 * http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ------------------------------------------------------------------------
 */

/* C interface to the UAV reflector simulator.
 *
 * Every function returns a uavir_status. On failure the calling thread's
 * last error message is set and output handles are left untouched. Handles
 * are released with the matching *_free function, which accepts NULL. */

#ifndef UAVIR_H
#define UAVIR_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(UAVIR_BUILDING_LIBRARY)
#    define UAVIR_API __declspec(dllexport)
#  else
#    define UAVIR_API __declspec(dllimport)
#  endif
#else
#  define UAVIR_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum uavir_status {
  UAVIR_OK = 0,
  UAVIR_ERR_ARGUMENT = 1, /* bad pointer, enum, or value */
  UAVIR_ERR_CONFIG = 2,   /* scenario failed validation */
  UAVIR_ERR_RUNTIME = 3,  /* simulation failure */
  UAVIR_ERR_IO = 4        /* file could not be read or written */
} uavir_status;

typedef enum uavir_policy {
  UAVIR_POLICY_RL = 0,
  UAVIR_POLICY_GREEDY = 1,
  UAVIR_POLICY_STATIC = 2
} uavir_policy;

typedef enum uavir_format { UAVIR_FORMAT_CSV = 0, UAVIR_FORMAT_JSON = 1 } uavir_format;

typedef enum uavir_axis { UAVIR_AXIS_ALTITUDE = 0, UAVIR_AXIS_TX_POWER = 1 } uavir_axis;

typedef struct uavir_config uavir_config;
typedef struct uavir_model uavir_model;
typedef struct uavir_episode uavir_episode;
typedef struct uavir_sweep uavir_sweep;

typedef struct uavir_aggregates {
  long slots;
  long hover_slots;
  long relocations;
  double total_bits;
  double mean_rate_bps;
  double mean_rate_all_bps;
  double los_fraction;
  double mean_harvest_w;
  double energy_used_j;
} uavir_aggregates;

typedef struct uavir_sweep_row {
  double value;
  uavir_policy policy;
  size_t runs;
  double rate_mean_bps;
  double rate_std_bps;
  double los_mean;
  double los_std;
  double harvest_mean_w;
  double harvest_std_w;
} uavir_sweep_row;

/* Receives progress lines during long runs. */
typedef void (*uavir_progress_fn)(const char* message, void* user);

UAVIR_API const char* uavir_version(void);
/* Message for the most recent failure on this thread; "" if none. */
UAVIR_API const char* uavir_last_error(void);

/* Scenario configuration. */
UAVIR_API uavir_status uavir_config_default(uavir_config** out);
UAVIR_API uavir_status uavir_config_load(const char* path, uavir_config** out);
UAVIR_API uavir_status uavir_config_parse(const char* json_text, uavir_config** out);
UAVIR_API uavir_status uavir_config_set_seed(uavir_config* cfg, uint64_t seed);
/* Writes the 16 hex digit hash plus a terminator; needs len >= 17. */
UAVIR_API uavir_status uavir_config_hash(const uavir_config* cfg, char* buf, size_t len);
UAVIR_API void uavir_config_free(uavir_config* cfg);

/* Value-function parameters. */
UAVIR_API uavir_status uavir_model_load(const char* path, uavir_model** out);
UAVIR_API uavir_status uavir_model_save(const uavir_model* model, const char* path);
/* Runs the configured warm-up episodes and returns the trained model. */
UAVIR_API uavir_status uavir_model_warm_up(const uavir_config* cfg, uavir_progress_fn progress,
                                           void* user, uavir_model** out);
UAVIR_API void uavir_model_free(uavir_model* model);

/* One episode. `warm` may be NULL; it is only used by the rl policy. */
UAVIR_API uavir_status uavir_run_episode(const uavir_config* cfg, uavir_policy policy,
                                         const uavir_model* warm, uavir_episode** out);
UAVIR_API uavir_status uavir_episode_aggregates(const uavir_episode* ep, uavir_aggregates* out);
UAVIR_API uavir_status uavir_episode_write(const uavir_episode* ep, uavir_format format,
                                           const char* path);
/* The value function after an rl episode; UAVIR_ERR_ARGUMENT otherwise. */
UAVIR_API uavir_status uavir_episode_model(const uavir_episode* ep, uavir_model** out);
UAVIR_API void uavir_episode_free(uavir_episode* ep);

/* Cross product of values x policies x seeds. */
UAVIR_API uavir_status uavir_run_sweep(const uavir_config* cfg, uavir_axis axis,
                                       const double* values, size_t n_values,
                                       const uavir_policy* policies, size_t n_policies,
                                       const uint64_t* seeds, size_t n_seeds,
                                       uavir_progress_fn progress, void* user,
                                       uavir_sweep** out);
UAVIR_API size_t uavir_sweep_row_count(const uavir_sweep* sweep);
UAVIR_API uavir_status uavir_sweep_get_row(const uavir_sweep* sweep, size_t index,
                                       uavir_sweep_row* out);
UAVIR_API uavir_status uavir_sweep_write(const uavir_sweep* sweep, uavir_format format,
                                         const char* path);
UAVIR_API void uavir_sweep_free(uavir_sweep* sweep);

#ifdef __cplusplus
}
#endif

#endif /* UAVIR_H */
