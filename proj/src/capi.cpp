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

#include "rhsim/rhsim.h"

#include "rhsim/error.hpp"
#include "rhsim/run.hpp"
#include "rhsim/scenario.hpp"

#include <cstring>
#include <new>
#include <string>
#include <vector>

struct rhsim_scenario
{
    rhsim::Scenario value;
};

struct rhsim_result
{
    std::string summary;
    std::vector<std::string> artifacts;
    std::size_t failed_points = 0;
    bool total_failure = false;
};

namespace
{

thread_local std::string last_error;

rhsim_status status_of(rhsim::ErrorCode code)
{
    using rhsim::ErrorCode;
    switch (code)
    {
    case ErrorCode::invalid_config:
        return RHSIM_ERR_CONFIG;
    case ErrorCode::invalid_input:
        return RHSIM_ERR_INVALID_ARGUMENT;
    case ErrorCode::singular_geometry:
        return RHSIM_ERR_SINGULAR_GEOMETRY;
    case ErrorCode::shape_mismatch:
        return RHSIM_ERR_SHAPE;
    case ErrorCode::rank_deficiency:
        return RHSIM_ERR_RANK_DEFICIENT;
    case ErrorCode::infeasible_task:
    case ErrorCode::infeasible:
        return RHSIM_ERR_INFEASIBLE;
    case ErrorCode::io:
        return RHSIM_ERR_IO;
    }
    return RHSIM_ERR_RUNTIME;
}

rhsim_status fail(rhsim_status status, std::string message)
{
    last_error = std::move(message);
    return status;
}

// Runs `fn`, translating exceptions into status codes; nothing propagates across the C boundary.
template <typename Fn> rhsim_status guarded(Fn &&fn) noexcept
{
    try
    {
        return fn();
    }
    catch (const rhsim::Error &e)
    {
        return fail(status_of(e.code()), e.what());
    }
    catch (const std::bad_alloc &)
    {
        return fail(RHSIM_ERR_RUNTIME, "out of memory");
    }
    catch (const std::exception &e)
    {
        return fail(RHSIM_ERR_RUNTIME, e.what());
    }
    catch (...)
    {
        return fail(RHSIM_ERR_RUNTIME, "unknown error");
    }
}

#define RHSIM_REQUIRE(cond, what)                                                                                      \
    do                                                                                                                 \
    {                                                                                                                  \
        if (!(cond))                                                                                                   \
            return fail(RHSIM_ERR_INVALID_ARGUMENT, what);                                                             \
    } while (0)

} // namespace

extern "C" {

const char *rhsim_version(void) { return RHSIM_VERSION; }

const char *rhsim_last_error(void) { return last_error.c_str(); }

const char *rhsim_status_string(rhsim_status status)
{
    switch (status)
    {
    case RHSIM_OK:
        return "ok";
    case RHSIM_ERR_CONFIG:
        return "configuration error";
    case RHSIM_ERR_INVALID_ARGUMENT:
        return "invalid argument";
    case RHSIM_ERR_SINGULAR_GEOMETRY:
        return "singular geometry";
    case RHSIM_ERR_SHAPE:
        return "shape mismatch";
    case RHSIM_ERR_RANK_DEFICIENT:
        return "rank deficient";
    case RHSIM_ERR_INFEASIBLE:
        return "infeasible";
    case RHSIM_ERR_IO:
        return "i/o error";
    case RHSIM_ERR_RUNTIME:
        return "runtime error";
    }
    return "unknown status";
}

rhsim_status rhsim_scenario_load(const char *source, rhsim_scenario **out)
{
    RHSIM_REQUIRE(source && out, "rhsim_scenario_load: null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new rhsim_scenario{rhsim::load_scenario(source)};
        return RHSIM_OK;
    });
}

rhsim_status rhsim_scenario_parse(const char *yaml_text, rhsim_scenario **out)
{
    RHSIM_REQUIRE(yaml_text && out, "rhsim_scenario_parse: null argument");
    *out = nullptr;
    return guarded([&] {
        *out = new rhsim_scenario{rhsim::parse_scenario(yaml_text)};
        return RHSIM_OK;
    });
}

void rhsim_scenario_free(rhsim_scenario *scenario) { delete scenario; }

rhsim_status rhsim_scenario_set_seed(rhsim_scenario *scenario, uint64_t seed)
{
    RHSIM_REQUIRE(scenario, "rhsim_scenario_set_seed: null scenario");
    scenario->value.seed = seed;
    return RHSIM_OK;
}

rhsim_status rhsim_scenario_get_seed(const rhsim_scenario *scenario, uint64_t *seed)
{
    RHSIM_REQUIRE(scenario && seed, "rhsim_scenario_get_seed: null argument");
    *seed = scenario->value.seed;
    return RHSIM_OK;
}

rhsim_status rhsim_scenario_counts(const rhsim_scenario *scenario, size_t *elements, size_t *feeds, size_t *users)
{
    RHSIM_REQUIRE(scenario, "rhsim_scenario_counts: null scenario");
    const auto &g = scenario->value.geometry;
    const auto panels = static_cast<size_t>(g.panels);
    if (elements)
        *elements = panels * static_cast<size_t>(g.elements_x) * static_cast<size_t>(g.elements_y);
    if (feeds)
        *feeds = panels * static_cast<size_t>(g.feeds_per_panel);
    if (users)
        *users = static_cast<size_t>(scenario->value.users.count);
    return RHSIM_OK;
}

rhsim_status rhsim_scenario_digest(const rhsim_scenario *scenario, char out[65])
{
    RHSIM_REQUIRE(scenario && out, "rhsim_scenario_digest: null argument");
    return guarded([&] {
        const auto hex = rhsim::digest(scenario->value);
        std::memcpy(out, hex.c_str(), 65);
        return RHSIM_OK;
    });
}

rhsim_status rhsim_scenario_serialize(const rhsim_scenario *scenario, char *buffer, size_t capacity, size_t *required)
{
    RHSIM_REQUIRE(scenario, "rhsim_scenario_serialize: null scenario");
    return guarded([&] {
        const auto text = rhsim::serialize(scenario->value);
        if (required)
            *required = text.size() + 1;
        if (!buffer || capacity < text.size() + 1)
            return fail(RHSIM_ERR_INVALID_ARGUMENT, "rhsim_scenario_serialize: buffer too small");
        std::memcpy(buffer, text.c_str(), text.size() + 1);
        return RHSIM_OK;
    });
}

rhsim_status rhsim_command_from_string(const char *name, rhsim_command *out)
{
    RHSIM_REQUIRE(name && out, "rhsim_command_from_string: null argument");
    const auto cmd = rhsim::parse_command(name);
    if (!cmd)
        return fail(RHSIM_ERR_INVALID_ARGUMENT, std::string("unknown command '") + name + "'");
    *out = static_cast<rhsim_command>(*cmd);
    return RHSIM_OK;
}

void rhsim_run_options_init(rhsim_run_options *options)
{
    if (!options)
        return;
    *options = rhsim_run_options{};
    options->threads = 1;
}

rhsim_status rhsim_run(const rhsim_scenario *scenario, rhsim_command command, const char *out_dir,
                       const rhsim_run_options *options, rhsim_result **out)
{
    RHSIM_REQUIRE(scenario && out_dir && out, "rhsim_run: null argument");
    RHSIM_REQUIRE(command >= RHSIM_CMD_SWEEP && command <= RHSIM_CMD_DUMP, "rhsim_run: unknown command");
    *out = nullptr;
    return guarded([&] {
        rhsim::RunOptions opts;
        if (options)
        {
            opts.threads = options->threads;
            opts.dump_gains = options->dump_gains != 0;
            if (options->has_probe_point)
                opts.probe_point = rhsim::Vec3{options->probe_point[0], options->probe_point[1], options->probe_point[2]};
        }
        const auto result = rhsim::run(scenario->value, static_cast<rhsim::Command>(command), out_dir, opts);
        auto *handle = new rhsim_result;
        handle->summary = result.summary;
        for (const auto &p : result.artifacts)
            handle->artifacts.push_back(p.string());
        handle->failed_points = result.failed_points;
        handle->total_failure = result.total_failure;
        *out = handle;
        if (result.total_failure)
            return fail(RHSIM_ERR_RUNTIME, "every sweep point failed");
        return RHSIM_OK;
    });
}

const char *rhsim_result_summary(const rhsim_result *result) { return result ? result->summary.c_str() : ""; }

size_t rhsim_result_artifact_count(const rhsim_result *result) { return result ? result->artifacts.size() : 0; }

const char *rhsim_result_artifact(const rhsim_result *result, size_t index)
{
    if (!result || index >= result->artifacts.size())
        return nullptr;
    return result->artifacts[index].c_str();
}

size_t rhsim_result_failed_points(const rhsim_result *result) { return result ? result->failed_points : 0; }

int rhsim_result_total_failure(const rhsim_result *result) { return result && result->total_failure ? 1 : 0; }

void rhsim_result_free(rhsim_result *result) { delete result; }

rhsim_status rhsim_rayleigh_distance(double aperture_m, double frequency_hz, double *out_m)
{
    RHSIM_REQUIRE(out_m, "rhsim_rayleigh_distance: null output");
    return guarded([&] {
        *out_m = rhsim::rayleigh_distance(aperture_m, frequency_hz);
        return RHSIM_OK;
    });
}

rhsim_status rhsim_noise_power(double noise_psd_dbm_hz, double bandwidth_hz, double *out_w)
{
    RHSIM_REQUIRE(out_w, "rhsim_noise_power: null output");
    return guarded([&] {
        *out_w = rhsim::noise_power(noise_psd_dbm_hz, bandwidth_hz);
        return RHSIM_OK;
    });
}

rhsim_status rhsim_free_space_path_loss(double distance_m, double frequency_hz, double *out_db)
{
    RHSIM_REQUIRE(out_db, "rhsim_free_space_path_loss: null output");
    return guarded([&] {
        *out_db = rhsim::free_space_path_loss_db(distance_m, frequency_hz);
        return RHSIM_OK;
    });
}

} // extern "C"
