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

#ifndef RHSIM_SCENARIO_HPP
#define RHSIM_SCENARIO_HPP

#include "rhsim/channel.hpp"
#include "rhsim/energy.hpp"
#include "rhsim/geometry.hpp"
#include "rhsim/holography.hpp"
#include "rhsim/link.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rhsim
{

struct HologramConfig
{
    double threshold = 0.5;
    HologramMode mode = HologramMode::binary;
    std::optional<WavefrontModel> wavefront; // empty: classify per user
    double amplitude_tolerance = default_amplitude_tolerance;
};

struct LinkConfig
{
    PrecoderKind precoder = PrecoderKind::zero_forcing;
    double condition_cap = default_condition_cap;
};

struct EnergyConfig
{
    double per_element_power = 0.0; // W
    double min_rate = 1e6;          // bit/s, per user
    int max_iterations = 100;
    double tolerance = 1e-9;
    int grid_resolution = 100;
};

enum class SweepSpacing
{
    linear,
    log
};

struct SweepConfig
{
    // Either explicit values or a generated range.
    std::vector<double> values;
    double start = 0.1; // W
    double stop = 10.0; // W
    int points = 34;
    SweepSpacing spacing = SweepSpacing::linear;

    std::vector<double> circuit_powers() const;
};

struct RenderConfig
{
    double azimuth_start = -90.0;
    double azimuth_stop = 90.0;
    double azimuth_step = 0.25;
    double elevation = 0.0;
};

struct ProbeConfig
{
    std::optional<Vec3> point; // platform frame, m
    bool dump_gains = false;
};

struct Scenario
{
    std::string name = "custom";
    std::uint64_t seed = 1;
    ArraySpec geometry;
    double platform_height = 1000.0; // m
    RadioConfig radio;
    UserPlacement users;
    HologramConfig hologram;
    LinkConfig link;
    EnergyConfig energy;
    SweepConfig sweep;
    RenderConfig render;
    ProbeConfig probe;

    // Cross-field checks beyond what the loader enforces per key; throws ConfigError.
    void validate() const;
};

// `source` is a file path, or the name of a bundled preset when no such file exists.
Scenario load_scenario(const std::string &source);

// Throws ConfigError with line and dotted key on syntax errors, unknown keys, missing keys and
// out-of-range values.
Scenario parse_scenario(std::string_view yaml_text, const std::string &origin = "<string>");

std::vector<std::string> preset_names();
Scenario load_preset(const std::string &name);
std::string_view preset_text(const std::string &name);

// Canonical YAML: fixed key order, shortest round-trip number formatting.
std::string serialize(const Scenario &scenario);

// SHA-256 of serialize(scenario), lower-case hex.
std::string digest(const Scenario &scenario);

std::string sha256_hex(std::string_view bytes);

} // namespace rhsim

#endif
