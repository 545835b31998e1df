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

#ifndef RHSIM_RUN_HPP
#define RHSIM_RUN_HPP

#include "rhsim/scenario.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace rhsim
{

// Everything the physics chain derives from a scenario, computed once.
struct SystemModel
{
    ArrayGeometry geometry;
    UserSet users;
    ChannelMatrix channel;
    Hologram hologram;
    BeamformingMatrix beamforming;
    LinkState link;
    CVector baseline_channel;
    RVector baseline_rates;
    double noise_w = 0.0;
    double tx_power_w = 0.0;
};

SystemModel build_system(const Scenario &scenario);
SweepSetup make_sweep_setup(const Scenario &scenario, const SystemModel &system);

enum class Command
{
    sweep,
    probe,
    render,
    dump
};

std::optional<Command> parse_command(std::string_view name);

struct RunOptions
{
    int threads = 1;
    std::optional<Vec3> probe_point; // overrides the scenario's probe point
    bool dump_gains = false;
};

struct RunResult
{
    std::string summary;                          // human-readable report
    std::vector<std::filesystem::path> artifacts; // files written, manifest last
    std::size_t failed_points = 0;
    bool total_failure = false;
};

// Writes the command's CSV artifacts plus manifest.json into out_dir (created if needed).
// Throws Error(io) naming the path on write failures.
RunResult run(const Scenario &scenario, Command command, const std::filesystem::path &out_dir,
              const RunOptions &options = {});

} // namespace rhsim

#endif
