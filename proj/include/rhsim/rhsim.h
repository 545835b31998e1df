// SPDX-License-Identifier: Apache-2.0
//
// rhsim: holographic-surface beamforming simulator for aerial platforms
// Copyright (C) 2026 The rhsim authors
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

/* C interface to the rhsim simulator.
 *
 * Objects are opaque handles owned by the caller and released with the matching *_free function.
 * Every fallible call returns an rhsim_status; on failure rhsim_last_error() describes the cause
 * for the calling thread until its next failing call.
 */

#ifndef RHSIM_H
#define RHSIM_H

#include <stddef.h>
#include <stdint.h>

#if defined(RHSIM_BUILDING_LIBRARY)
#define RHSIM_API __attribute__((visibility("default")))
#else
#define RHSIM_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rhsim_status
{
    RHSIM_OK = 0,
    RHSIM_ERR_CONFIG = 1,
    RHSIM_ERR_INVALID_ARGUMENT = 2,
    RHSIM_ERR_SINGULAR_GEOMETRY = 3,
    RHSIM_ERR_SHAPE = 4,
    RHSIM_ERR_RANK_DEFICIENT = 5,
    RHSIM_ERR_INFEASIBLE = 6,
    RHSIM_ERR_IO = 7,
    RHSIM_ERR_RUNTIME = 8
} rhsim_status;

typedef enum rhsim_command
{
    RHSIM_CMD_SWEEP = 0,
    RHSIM_CMD_PROBE = 1,
    RHSIM_CMD_RENDER = 2,
    RHSIM_CMD_DUMP = 3
} rhsim_command;

typedef struct rhsim_scenario rhsim_scenario;
typedef struct rhsim_result rhsim_result;

typedef struct rhsim_run_options
{
    int threads;            /* >= 1 */
    int has_probe_point;    /* nonzero: probe_point overrides the scenario's probe point */
    double probe_point[3];  /* platform frame, metres */
    int dump_gains;         /* probe: also write per-element gains CSV */
} rhsim_run_options;

RHSIM_API const char *rhsim_version(void);
RHSIM_API const char *rhsim_last_error(void);
RHSIM_API const char *rhsim_status_string(rhsim_status status);

/* `source` is a config file path or the name of a bundled preset (e.g. "paper_sec4"). */
RHSIM_API rhsim_status rhsim_scenario_load(const char *source, rhsim_scenario **out);
RHSIM_API rhsim_status rhsim_scenario_parse(const char *yaml_text, rhsim_scenario **out);
RHSIM_API void rhsim_scenario_free(rhsim_scenario *scenario);

RHSIM_API rhsim_status rhsim_scenario_set_seed(rhsim_scenario *scenario, uint64_t seed);
RHSIM_API rhsim_status rhsim_scenario_get_seed(const rhsim_scenario *scenario, uint64_t *seed);
RHSIM_API rhsim_status rhsim_scenario_counts(const rhsim_scenario *scenario, size_t *elements, size_t *feeds,
                                             size_t *users);

/* Writes 64 hex characters plus a terminator. */
RHSIM_API rhsim_status rhsim_scenario_digest(const rhsim_scenario *scenario, char out[65]);

/* Canonical YAML. `required` receives the size including the terminator; a NULL or short buffer
 * yields RHSIM_ERR_INVALID_ARGUMENT with `required` still set. */
RHSIM_API rhsim_status rhsim_scenario_serialize(const rhsim_scenario *scenario, char *buffer, size_t capacity,
                                                size_t *required);

RHSIM_API rhsim_status rhsim_command_from_string(const char *name, rhsim_command *out);
RHSIM_API void rhsim_run_options_init(rhsim_run_options *options);

/* On RHSIM_OK or a total sweep failure (RHSIM_ERR_RUNTIME) *out receives a result handle. */
RHSIM_API rhsim_status rhsim_run(const rhsim_scenario *scenario, rhsim_command command, const char *out_dir,
                                 const rhsim_run_options *options, rhsim_result **out);

RHSIM_API const char *rhsim_result_summary(const rhsim_result *result);
RHSIM_API size_t rhsim_result_artifact_count(const rhsim_result *result);
RHSIM_API const char *rhsim_result_artifact(const rhsim_result *result, size_t index);
RHSIM_API size_t rhsim_result_failed_points(const rhsim_result *result);
RHSIM_API int rhsim_result_total_failure(const rhsim_result *result);
RHSIM_API void rhsim_result_free(rhsim_result *result);

RHSIM_API rhsim_status rhsim_rayleigh_distance(double aperture_m, double frequency_hz, double *out_m);
RHSIM_API rhsim_status rhsim_noise_power(double noise_psd_dbm_hz, double bandwidth_hz, double *out_w);
RHSIM_API rhsim_status rhsim_free_space_path_loss(double distance_m, double frequency_hz, double *out_db);

#ifdef __cplusplus
}
#endif

#endif
