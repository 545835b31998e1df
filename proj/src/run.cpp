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

#include "rhsim/run.hpp"
#include "rhsim/error.hpp"

#include <chrono>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

namespace rhsim
{

namespace fs = std::filesystem;

std::optional<Command> parse_command(std::string_view name)
{
    if (name == "sweep")
        return Command::sweep;
    if (name == "probe")
        return Command::probe;
    if (name == "render")
        return Command::render;
    if (name == "dump")
        return Command::dump;
    return std::nullopt;
}

namespace
{

std::string_view command_name(Command c)
{
    switch (c)
    {
    case Command::sweep:
        return "sweep";
    case Command::probe:
        return "probe";
    case Command::render:
        return "render";
    case Command::dump:
        return "dump";
    }
    return "?";
}

ArraySpec platform_array(const Scenario &scenario)
{
    ArraySpec spec = scenario.geometry;
    spec.platform_position = Vec3{};
    return spec;
}

UserPlacement placement(const Scenario &scenario)
{
    UserPlacement p = scenario.users;
    p.height = scenario.platform_height;
    return p;
}

class ArtifactWriter
{
public:
    explicit ArtifactWriter(fs::path dir) : dir_(std::move(dir))
    {
        std::error_code ec;
        fs::create_directories(dir_, ec);
        if (ec)
            throw Error(ErrorCode::io, fmt::format("{}: cannot create output directory: {}", dir_.string(), ec.message()));
    }

    template <typename Fn> void write(const std::string &name, Fn &&fill)
    {
        const auto path = dir_ / name;
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out)
            throw Error(ErrorCode::io, fmt::format("{}: cannot open for writing", path.string()));
        fill(out);
        out.flush();
        if (!out)
            throw Error(ErrorCode::io, fmt::format("{}: write failed", path.string()));
        written_.push_back(path);
    }

    const std::vector<fs::path> &written() const { return written_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
};

std::string summarize_sweep(const EESweepReport &report)
{
    std::string s = fmt::format("{:>14} {:>16} {:>16} {:>6} {:>9}\n", "P_c [W]", "EE RHS [bit/J]", "EE UAV [bit/J]",
                                "iters", "converged");
    for (std::size_t i = 0; i < report.sweep_values.size(); ++i)
    {
        if (!report.errors[i].empty())
            s += fmt::format("{:>14.6g}  failed: {}\n", report.sweep_values[i], report.errors[i]);
        else
            s += fmt::format("{:>14.6g} {:>16.6e} {:>16.6e} {:>6} {:>9}\n", report.sweep_values[i], report.ee_rhs[i],
                             report.ee_baseline[i], report.iterations[i], report.converged[i] ? "yes" : "no");
    }
    return s;
}

RunResult run_sweep(const Scenario &scenario, ArtifactWriter &writer, const RunOptions &options)
{
    const auto system = build_system(scenario);
    const auto setup = make_sweep_setup(scenario, system);
    DinkelbachOptions opt;
    opt.max_iterations = scenario.energy.max_iterations;
    opt.tolerance = scenario.energy.tolerance;
    auto report = ee_sweep(setup, scenario.sweep.circuit_powers(), opt, options.threads);
    report.config_digest = digest(scenario);
    writer.write("sweep.csv", [&](std::ostream &out) { write_sweep_csv(out, report); });

    RunResult r;
    r.failed_points = report.failed_points();
    r.total_failure = r.failed_points == report.sweep_values.size();
    r.summary = summarize_sweep(report);
    return r;
}

RunResult run_probe(const Scenario &scenario, ArtifactWriter &writer, const RunOptions &options)
{
    const auto point = options.probe_point ? options.probe_point : scenario.probe.point;
    if (!point)
        throw ConfigError("probe.point_m", 0, "probe.point_m: required for probe (or pass a point on the command line)");
    const auto geometry = build_array(platform_array(scenario));
    const double f = scenario.radio.carrier_frequency;
    const auto rc = classify_region(geometry, *point, f, scenario.hologram.amplitude_tolerance);
    const auto chosen = channel_auto(geometry, *point, f, scenario.hologram.amplitude_tolerance);

    std::string s = fmt::format("point              : ({}, {}, {}) m\n", point->x, point->y, point->z);
    s += fmt::format("distance           : {:.6f} m\n", rc.distance);
    s += fmt::format("rayleigh distance  : {:.6f} m\n", rc.rayleigh_distance);
    s += fmt::format("uniform-power dist.: {:.6f} m\n", rc.uniform_power_distance);
    s += fmt::format("amplitude ratio    : {:.9f}\n", rc.amplitude_ratio);
    s += fmt::format("region             : {}\n", to_string(rc.region));
    s += fmt::format("selected model     : {}\n\n", to_string(chosen.model));
    s += fmt::format("{:>6} {:>16} {:>16} {:>18}\n", "model", "mean gain [dB]", "spread [dB]", "corr. with NUSW");

    const auto reference = channel_nusw(geometry, *point, f);
    std::string csv = "model,mean_gain_dB,amplitude_spread_dB,correlation_with_nusw\n";
    for (auto model : {WavefrontModel::upw, WavefrontModel::usw, WavefrontModel::nusw})
    {
        const auto row = channel_for(geometry, *point, f, model);
        const Eigen::ArrayXd mag = row.gains.cwiseAbs().array();
        const double mean_db = 10.0 * std::log10(mag.square().mean());
        const double spread_db = 20.0 * std::log10(mag.maxCoeff() / mag.minCoeff());
        const double corr = normalized_correlation(row.gains, reference.gains);
        s += fmt::format("{:>6} {:>16.6f} {:>16.6e} {:>18.12f}\n", to_string(model), mean_db, spread_db, corr);
        csv += fmt::format("{},{},{},{}\n", to_string(model), mean_db, spread_db, corr);
    }
    writer.write("probe.csv", [&](std::ostream &out) { out << csv; });

    if (options.dump_gains || scenario.probe.dump_gains)
        writer.write("probe_gains.csv", [&](std::ostream &out) {
            out << "element,re,im,magnitude_dB,phase_rad\n";
            for (Eigen::Index m = 0; m < chosen.gains.size(); ++m)
            {
                const auto g = chosen.gains[m];
                out << fmt::format("{},{},{},{},{}\n", m, g.real(), g.imag(), 20.0 * std::log10(std::abs(g)),
                                   std::arg(g));
            }
        });

    RunResult r;
    r.summary = s;
    return r;
}

RunResult run_render(const Scenario &scenario, ArtifactWriter &writer)
{
    const auto system = build_system(scenario);
    const auto &geometry = system.geometry;
    const auto &h = system.hologram;
    auto grid_csv = [&](std::ostream &out, bool binary) {
        out << "panel,ix,iy,value\n";
        for (std::size_t m = 0; m < geometry.element_count(); ++m)
        {
            const auto idx = geometry.element_index(m);
            if (binary)
                out << fmt::format("{},{},{},{}\n", idx.panel, idx.ix, idx.iy, int(h.binary_pattern[m]));
            else
                out << fmt::format("{},{},{},{}\n", idx.panel, idx.ix, idx.iy,
                                   h.continuous_pattern[static_cast<Eigen::Index>(m)]);
        }
    };
    writer.write("hologram_continuous.csv", [&](std::ostream &out) { grid_csv(out, false); });
    writer.write("hologram_binary.csv", [&](std::ostream &out) { grid_csv(out, true); });

    // Equal, in-phase feed drive: the beam the hologram alone produces.
    const auto feeds = static_cast<Eigen::Index>(geometry.feed_count());
    const CVector weights = CVector::Constant(feeds, cdouble(1.0 / std::sqrt(double(feeds)), 0.0));
    const auto grid = angle_grid(scenario.render.azimuth_start, scenario.render.azimuth_stop, scenario.render.azimuth_step);
    const auto pattern = radiation_pattern(system.beamforming, weights, geometry, scenario.radio.carrier_frequency, grid,
                                           scenario.render.elevation);
    writer.write("radiation_pattern.csv", [&](std::ostream &out) {
        out << "angle_deg,gain_dB\n";
        for (std::size_t i = 0; i < pattern.angles_deg.size(); ++i)
            out << fmt::format("{},{}\n", pattern.angles_deg[i], pattern.gain_db[i]);
    });

    RunResult r;
    r.summary = fmt::format("active elements: {} of {}\n", h.active_count(), geometry.element_count());
    for (std::size_t k = 0; k < system.users.size(); ++k)
        r.summary += fmt::format("user {}: azimuth {:.3f} deg, model {}\n", k, system.users.azimuths_deg[k],
                                 to_string(system.channel.models[k]));
    if (pattern.degenerate)
        r.summary += "radiation pattern: degenerate (no radiated field)\n";
    else
        r.summary += fmt::format("radiation pattern peak: {:.2f} deg\n", pattern.angles_deg[pattern.argmax()]);
    return r;
}

RunResult run_dump(const Scenario &scenario, ArtifactWriter &writer)
{
    const auto geometry = build_array(platform_array(scenario));
    writer.write("geometry.csv", [&](std::ostream &out) { write_geometry_csv(out, geometry); });
    RunResult r;
    r.summary = fmt::format("{} elements, {} feeds\n", geometry.element_count(), geometry.feed_count());
    return r;
}

} // namespace

SystemModel build_system(const Scenario &scenario)
{
    scenario.validate();
    SystemModel sys;
    const double f = scenario.radio.carrier_frequency;
    sys.geometry = build_array(platform_array(scenario));
    sys.users = place_users(placement(scenario), sys.geometry.platform_position(), scenario.seed);
    sys.channel = channel_matrix(sys.geometry, sys.users.positions, f, scenario.hologram.wavefront,
                                 scenario.hologram.amplitude_tolerance);

    HologramRequest req;
    req.targets = sys.users.positions;
    req.models = sys.channel.models;
    req.frequency = f;
    req.waveguide_index = scenario.radio.waveguide_index;
    req.threshold = scenario.hologram.threshold;
    sys.hologram = synthesize_hologram(sys.geometry, req);
    sys.beamforming =
        beamforming_matrix(sys.hologram, sys.geometry, f, scenario.radio.waveguide_index, scenario.hologram.mode);

    sys.noise_w = noise_power(scenario.radio.noise_psd, scenario.radio.bandwidth);
    sys.tx_power_w = dbm_to_watts(scenario.radio.tx_power);
    sys.link = evaluate_link(effective_channel(sys.channel, sys.beamforming), scenario.link.precoder, sys.tx_power_w,
                             sys.noise_w, scenario.radio.bandwidth, scenario.link.condition_cap);
    sys.baseline_channel = single_antenna_channel(sys.geometry.platform_position(), sys.users.positions, f);
    sys.baseline_rates = baseline_uav_only(sys.baseline_channel, sys.tx_power_w, sys.noise_w, scenario.radio.bandwidth);
    return sys;
}

SweepSetup make_sweep_setup(const Scenario &scenario, const SystemModel &system)
{
    const auto k = static_cast<Eigen::Index>(system.users.size());
    SweepSetup setup;
    setup.rhs.cross_gains = cross_gains(system.link.effective_channel, system.link.precoder);
    setup.rhs.tx_power = system.tx_power_w;
    setup.rhs.noise = system.noise_w;
    setup.rhs.bandwidth = scenario.radio.bandwidth;
    setup.rhs.data_sizes = Eigen::Map<const RVector>(system.users.data_sizes_bits.data(), k);
    setup.rhs.min_rates = RVector::Constant(k, scenario.energy.min_rate);
    setup.rhs.pa_efficiency = scenario.radio.pa_efficiency;

    std::size_t active = system.hologram.active_count();
    if (scenario.hologram.mode == HologramMode::continuous)
        active = static_cast<std::size_t>((system.hologram.continuous_pattern.array() > 0.0).count());
    setup.rhs.static_power = scenario.energy.per_element_power * static_cast<double>(active);
    setup.baseline_rates = system.baseline_rates;
    setup.baseline_tx_power = system.tx_power_w;
    return setup;
}

RunResult run(const Scenario &scenario, Command command, const fs::path &out_dir, const RunOptions &options)
{
    scenario.validate();
    if (options.threads < 1)
        throw Error(ErrorCode::invalid_input, "threads must be >= 1");
    const auto started = std::chrono::steady_clock::now();
    ArtifactWriter writer(out_dir);

    RunResult result;
    switch (command)
    {
    case Command::sweep:
        result = run_sweep(scenario, writer, options);
        break;
    case Command::probe:
        result = run_probe(scenario, writer, options);
        break;
    case Command::render:
        result = run_render(scenario, writer);
        break;
    case Command::dump:
        result = run_dump(scenario, writer);
        break;
    }
    const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();

    nlohmann::ordered_json manifest;
    manifest["tool"] = "rhsim";
    manifest["version"] = RHSIM_VERSION;
    manifest["command"] = std::string(command_name(command));
    manifest["scenario"] = scenario.name;
    manifest["config_digest"] = digest(scenario);
    manifest["seed"] = scenario.seed;
    manifest["threads"] = options.threads;
    manifest["wall_time_s"] = wall;
    manifest["failed_points"] = result.failed_points;
    auto &artifacts = manifest["artifacts"] = nlohmann::ordered_json::array();
    for (const auto &p : writer.written())
    {
        std::ifstream in(p, std::ios::binary);
        std::ostringstream bytes;
        bytes << in.rdbuf();
        artifacts.push_back({{"file", p.filename().string()}, {"sha256", sha256_hex(bytes.str())}});
    }
    manifest["config"] = serialize(scenario);
    writer.write("manifest.json", [&](std::ostream &out) { out << manifest.dump(2) << '\n'; });

    result.artifacts = writer.written();
    return result;
}

} // namespace rhsim
