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

// sim: command-line front end over the rhsim C API.
//
//   sim sweep|probe|render|dump --config <path|preset> --out <dir> [--threads N] [--seed S]
//
// Exit status: 0 success, 1 configuration or usage error, 2 runtime failure.

#include "rhsim/rhsim.h"

#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_config = 1;
constexpr int exit_runtime = 2;

struct ScenarioDeleter
{
    void operator()(rhsim_scenario *s) const { rhsim_scenario_free(s); }
};
struct ResultDeleter
{
    void operator()(rhsim_result *r) const { rhsim_result_free(r); }
};

int report(const char *stage, rhsim_status status)
{
    std::fprintf(stderr, "sim: %s: %s: %s\n", stage, rhsim_status_string(status), rhsim_last_error());
    return status == RHSIM_ERR_CONFIG ? exit_config : exit_runtime;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Holographic-surface beamforming simulator for aerial platforms"};
    app.set_version_flag("--version", std::string(rhsim_version()));

    std::string command;
    std::string config;
    std::string out_dir;
    int threads = 1;
    std::optional<std::uint64_t> seed;
    std::vector<double> point;
    bool gains = false;

    app.add_option("command", command, "sweep | probe | render | dump")
        ->required()
        ->check(CLI::IsMember({"sweep", "probe", "render", "dump"}));
    app.add_option("--config,-c", config, "Scenario file, or a bundled preset name such as paper_sec4")->required();
    app.add_option("--out,-o", out_dir, "Output directory (falls back to $RHSIM_OUT_DIR)");
    app.add_option("--threads,-j", threads, "Worker threads for sweep points")->check(CLI::PositiveNumber);
    app.add_option("--seed,-s", seed, "Override the scenario seed");
    app.add_option("--point", point, "probe: point x,y,z in metres (platform frame)")->delimiter(',')->expected(3);
    app.add_flag("--gains", gains, "probe: also write per-element gains CSV");

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError &e)
    {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    if (out_dir.empty())
        if (const char *env = std::getenv("RHSIM_OUT_DIR"); env && *env)
            out_dir = env;
    if (out_dir.empty())
    {
        std::fprintf(stderr, "sim: no output directory (use --out or set RHSIM_OUT_DIR)\n");
        return exit_config;
    }

    rhsim_scenario *raw = nullptr;
    if (const auto st = rhsim_scenario_load(config.c_str(), &raw); st != RHSIM_OK)
    {
        std::fprintf(stderr, "sim: cannot load %s: %s\n", config.c_str(), rhsim_last_error());
        return exit_config;
    }
    std::unique_ptr<rhsim_scenario, ScenarioDeleter> scenario(raw);
    if (seed)
        rhsim_scenario_set_seed(scenario.get(), *seed);

    rhsim_command cmd{};
    if (const auto st = rhsim_command_from_string(command.c_str(), &cmd); st != RHSIM_OK)
        return report("command", st);

    rhsim_run_options options;
    rhsim_run_options_init(&options);
    options.threads = threads;
    options.dump_gains = gains ? 1 : 0;
    if (point.size() == 3)
    {
        options.has_probe_point = 1;
        for (int i = 0; i < 3; ++i)
            options.probe_point[i] = point[static_cast<std::size_t>(i)];
    }

    rhsim_result *result_raw = nullptr;
    const auto st = rhsim_run(scenario.get(), cmd, out_dir.c_str(), &options, &result_raw);
    std::unique_ptr<rhsim_result, ResultDeleter> result(result_raw);
    if (result)
    {
        std::fputs(rhsim_result_summary(result.get()), stdout);
        for (size_t i = 0; i < rhsim_result_artifact_count(result.get()); ++i)
            std::printf("wrote %s\n", rhsim_result_artifact(result.get(), i));
        if (const auto failed = rhsim_result_failed_points(result.get()))
            std::fprintf(stderr, "sim: %zu sweep point(s) failed; see the error column\n", failed);
    }
    if (st != RHSIM_OK)
        return report(command.c_str(), st);
    return exit_ok;
}
