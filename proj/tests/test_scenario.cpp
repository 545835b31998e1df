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

#include "rhsim/error.hpp"
#include "rhsim/run.hpp"
#include "rhsim/scenario.hpp"

#include <doctest.h>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

using namespace rhsim;

namespace
{

std::string preset_copy() { return std::string(preset_text("paper_sec4")); }

std::string drop_line(const std::string &text, const std::string &needle)
{
    std::istringstream in(text);
    std::string out, line;
    while (std::getline(in, line))
        if (line.find(needle) == std::string::npos)
            out += line + "\n";
    return out;
}

std::string slurp(const std::filesystem::path &p)
{
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

} // namespace

TEST_CASE("bundled preset carries the reference scenario")
{
    const auto s = load_preset("paper_sec4");
    CHECK(s.name == "paper_sec4");
    CHECK(s.radio.carrier_frequency == 26.2e9);
    CHECK(s.radio.bandwidth == 120e6);
    CHECK(s.radio.noise_psd == -174.0);
    CHECK(s.radio.tx_power == 23.0);
    CHECK(s.geometry.panels == 4);
    CHECK(s.geometry.elements_x == 48);
    CHECK(s.geometry.elements_y == 8);
    CHECK(s.geometry.dx == 2.64e-3);
    CHECK(s.geometry.dy == 5.65e-3);
    CHECK(s.geometry.feeds_per_panel == 8);
    CHECK(s.platform_height == 1000.0);
    CHECK(s.users.count == 3);
    CHECK(s.users.data_size_bits == 50e3);
    CHECK(s.users.azimuth_min_deg == -50.0);
    CHECK(s.users.azimuth_max_deg == 50.0);

    const auto sys = build_system(s);
    CHECK(sys.geometry.element_count() == 1536);
    CHECK(sys.geometry.feed_count() == 32);
    CHECK(sys.users.size() == 3);

    CHECK(load_scenario("paper_sec4").name == "paper_sec4");
    CHECK(load_scenario("preset:paper_sec4").name == "paper_sec4");
    CHECK(std::find(preset_names().begin(), preset_names().end(), "paper_sec4") != preset_names().end());
}

TEST_CASE("preset file on disk and embedded preset agree")
{
    const auto from_file = load_scenario(RHSIM_SOURCE_DIR "/presets/paper_sec4.yaml");
    CHECK(digest(from_file) == digest(load_preset("paper_sec4")));
}

TEST_CASE("missing carrier frequency is reported by name")
{
    const auto text = drop_line(preset_copy(), "carrier_frequency_hz");
    try
    {
        parse_scenario(text);
        FAIL("expected a config error");
    }
    catch (const ConfigError &e)
    {
        CHECK(e.code() == ErrorCode::invalid_config);
        CHECK(std::string(e.what()).find("carrier_frequency") != std::string::npos);
        CHECK(e.key().find("carrier_frequency") != std::string::npos);
    }
}

TEST_CASE("unknown keys are rejected with a line number")
{
    auto text = preset_copy();
    text = std::regex_replace(text, std::regex("  bandwidth_hz: 120e6"), "  bandwidth_hz: 120e6\n  bandwith_hz: 1");
    try
    {
        parse_scenario(text);
        FAIL("expected a config error");
    }
    catch (const ConfigError &e)
    {
        CHECK(std::string(e.what()).find("bandwith_hz") != std::string::npos);
        CHECK(e.line() > 0);
    }
}

TEST_CASE("constraint violations name the field")
{
    const auto text = std::regex_replace(preset_copy(), std::regex("pa_efficiency: 1.0"), "pa_efficiency: 1.5");
    try
    {
        parse_scenario(text);
        FAIL("expected a config error");
    }
    catch (const Error &e)
    {
        CHECK(std::string(e.what()).find("pa_efficiency") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_scenario("geometry: [unterminated"), Error);
    CHECK_THROWS_AS(load_scenario("/nonexistent/rhsim.yaml"), Error);
}

TEST_CASE("serialize and reload keeps the digest")
{
    const auto a = load_preset("paper_sec4");
    const auto text = serialize(a);
    const auto b = parse_scenario(text);
    CHECK(digest(a) == digest(b));
    CHECK(serialize(b) == text);

    auto c = a;
    c.seed = 8;
    CHECK(digest(c) != digest(a));
}

TEST_CASE("sha256 of known inputs")
{
    CHECK(sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("sweep range expands to the requested points")
{
    SweepConfig sc;
    sc.points = 12;
    sc.spacing = SweepSpacing::log;
    const auto v = sc.circuit_powers();
    REQUIRE(v.size() == 12);
    CHECK(v.front() == doctest::Approx(0.1));
    CHECK(v.back() == doctest::Approx(10.0));
    for (std::size_t i = 1; i < v.size(); ++i)
        CHECK(v[i] / v[i - 1] == doctest::Approx(v[1] / v[0]).epsilon(1e-12));
    CHECK(SweepConfig{}.circuit_powers().size() == 34);
    sc.spacing = SweepSpacing::linear;
    sc.start = 1.0;
    sc.stop = 2.0;
    sc.points = 3;
    CHECK(sc.circuit_powers() == std::vector<double>{1.0, 1.5, 2.0});
}

TEST_CASE("runs write their artifacts and a manifest")
{
    const auto dir = std::filesystem::temp_directory_path() / "rhsim_unit_run";
    std::filesystem::remove_all(dir);
    const auto s = load_preset("paper_sec4");

    const auto dump = run(s, Command::dump, dir);
    CHECK(dump.artifacts.back().filename() == "manifest.json");
    const auto geo = slurp(dir / "geometry.csv");
    CHECK(std::count(geo.begin(), geo.end(), '\n') == 1 + 1536 + 32);

    const auto first = run(s, Command::sweep, dir / "a");
    RunOptions threaded;
    threaded.threads = 4;
    run(s, Command::sweep, dir / "b", threaded);
    CHECK(first.failed_points == 0);
    CHECK_FALSE(first.total_failure);
    CHECK(slurp(dir / "a" / "sweep.csv") == slurp(dir / "b" / "sweep.csv"));
    const auto manifest = slurp(dir / "a" / "manifest.json");
    CHECK(manifest.find(digest(s)) != std::string::npos);
    CHECK(manifest.find("\"seed\"") != std::string::npos);

    RunOptions probe;
    probe.probe_point = Vec3{0, 0, -5};
    probe.dump_gains = true;
    const auto pr = run(s, Command::probe, dir / "p", probe);
    CHECK(pr.summary.find("radiating") != std::string::npos);
    CHECK(std::filesystem::exists(dir / "p" / "probe_gains.csv"));
    const auto gains = slurp(dir / "p" / "probe_gains.csv");
    CHECK(gains.rfind("element,re,im,magnitude_dB,phase_rad", 0) == 0);

    run(s, Command::render, dir / "r");
    for (const char *f : {"hologram_continuous.csv", "hologram_binary.csv", "radiation_pattern.csv"})
        CHECK(std::filesystem::exists(dir / "r" / f));
    CHECK(slurp(dir / "r" / "radiation_pattern.csv").rfind("angle_deg,gain_dB", 0) == 0);
    CHECK(slurp(dir / "r" / "hologram_binary.csv").rfind("panel,ix,iy,value", 0) == 0);

    CHECK(parse_command("sweep") == Command::sweep);
    CHECK_FALSE(parse_command("fly").has_value());
    std::filesystem::remove_all(dir);
}
