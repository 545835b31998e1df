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

#include "rhsim/scenario.hpp"
#include "rhsim/error.hpp"

#include <cctype>
#include <cmath>
#include <fmt/format.h>
#include <fstream>
#include <filesystem>
#include <limits>
#include <openssl/evp.h>
#include <set>
#include <sstream>
#include <yaml-cpp/yaml.h>

namespace rhsim
{

namespace detail
{
extern const std::string_view paper_sec4_preset;
}

namespace
{

int line_of(const YAML::Node &node) { return node.IsDefined() ? node.Mark().line + 1 : 0; }

// One mapping in the config tree. Every key read is recorded so leftovers can be rejected.
class Section
{
public:
    Section(YAML::Node node, std::string path, int parent_line) : node_(std::move(node)), path_(std::move(path))
    {
        if (!node_.IsMap())
            throw ConfigError(path_, node_.IsDefined() ? line_of(node_) : parent_line,
                              fmt::format("{}: expected a mapping", path_.empty() ? "<root>" : path_));
    }

    bool has(const std::string &key) const { return static_cast<bool>(node_[key]); }

    std::string key_path(const std::string &key) const { return path_.empty() ? key : path_ + "." + key; }

    YAML::Node get(const std::string &key)
    {
        used_.insert(key);
        const YAML::Node n = node_[key];
        if (!n)
            throw ConfigError(key_path(key), line_of(node_), fmt::format("{}: required key missing", key_path(key)));
        return n;
    }

    double number(const std::string &key) { return to_number(get(key), key); }
    double number(const std::string &key, double fallback) { return has(key) ? number(key) : fallback; }

    long long integer(const std::string &key)
    {
        const auto n = get(key);
        try
        {
            return n.as<long long>();
        }
        catch (const YAML::Exception &)
        {
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: expected an integer", key_path(key)));
        }
    }
    long long integer(const std::string &key, long long fallback) { return has(key) ? integer(key) : fallback; }

    std::string text(const std::string &key)
    {
        const auto n = get(key);
        if (!n.IsScalar())
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: expected a string", key_path(key)));
        return n.as<std::string>();
    }
    std::string text(const std::string &key, const std::string &fallback) { return has(key) ? text(key) : fallback; }

    bool boolean(const std::string &key, bool fallback)
    {
        if (!has(key))
            return fallback;
        const auto n = get(key);
        try
        {
            return n.as<bool>();
        }
        catch (const YAML::Exception &)
        {
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: expected true or false", key_path(key)));
        }
    }

    Vec3 vec3(const YAML::Node &n, const std::string &path)
    {
        if (!n.IsSequence() || n.size() != 3)
            throw ConfigError(path, line_of(n), fmt::format("{}: expected [x, y, z]", path));
        return {to_number(n[0], path), to_number(n[1], path), to_number(n[2], path)};
    }

    std::vector<double> numbers(const std::string &key)
    {
        const auto n = get(key);
        if (!n.IsSequence())
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: expected a list", key_path(key)));
        std::vector<double> out;
        for (const auto &item : n)
            out.push_back(to_number(item, key));
        return out;
    }

    Section child(const std::string &key)
    {
        const auto n = get(key);
        return Section(n, key_path(key), line_of(node_));
    }

    void reject_unknown() const
    {
        for (const auto &kv : node_)
        {
            const auto key = kv.first.as<std::string>();
            if (!used_.count(key))
                throw ConfigError(key_path(key), line_of(kv.first), fmt::format("{}: unknown key", key_path(key)));
        }
    }

    template <typename Enum>
    Enum choice(const std::string &key, std::initializer_list<std::pair<const char *, Enum>> options, Enum fallback)
    {
        if (!has(key))
            return fallback;
        const auto n = get(key);
        const auto value = n.as<std::string>();
        std::string allowed;
        for (const auto &[name, e] : options)
        {
            if (value == name)
                return e;
            allowed += allowed.empty() ? name : fmt::format(", {}", name);
        }
        throw ConfigError(key_path(key), line_of(n),
                          fmt::format("{}: '{}' is not one of {{{}}}", key_path(key), value, allowed));
    }

private:
    double to_number(const YAML::Node &n, const std::string &key) const
    {
        double v = 0.0;
        try
        {
            v = n.as<double>();
        }
        catch (const YAML::Exception &)
        {
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: expected a number", key_path(key)));
        }
        if (!std::isfinite(v))
            throw ConfigError(key_path(key), line_of(n), fmt::format("{}: must be finite", key_path(key)));
        return v;
    }

    YAML::Node node_;
    std::string path_;
    std::set<std::string> used_;
};

[[noreturn]] void invalid(const std::string &key, const std::string &constraint)
{
    throw ConfigError(key, 0, fmt::format("{}: {}", key, constraint));
}

int count_field(Section &s, const std::string &key)
{
    const auto v = s.integer(key);
    if (v < 1 || v > std::numeric_limits<int>::max())
        throw ConfigError(s.key_path(key), 0, fmt::format("{}: must be an integer >= 1", s.key_path(key)));
    return static_cast<int>(v);
}

} // namespace

std::vector<double> SweepConfig::circuit_powers() const
{
    if (!values.empty())
        return values;
    std::vector<double> out(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
    {
        const double t = points > 1 ? static_cast<double>(i) / (points - 1) : 0.0;
        out[static_cast<std::size_t>(i)] =
            spacing == SweepSpacing::log ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    }
    out.front() = start;
    if (points > 1)
        out.back() = stop;
    return out;
}

void Scenario::validate() const
{
    try
    {
        radio.validate();
    }
    catch (const Error &e)
    {
        // RadioConfig names fields without unit suffixes; report the config key instead.
        static const std::pair<const char *, const char *> keys[] = {
            {"carrier_frequency", "radio.carrier_frequency_hz"}, {"bandwidth", "radio.bandwidth_hz"},
            {"noise_psd", "radio.noise_psd_dbm_hz"},             {"tx_power", "radio.tx_power_dbm"},
            {"pa_efficiency", "radio.pa_efficiency"},           {"waveguide_index", "radio.waveguide_index"}};
        const std::string what = e.what();
        const std::string field = what.substr(0, what.find(':'));
        for (const auto &[name, key] : keys)
            if (field == name)
                invalid(key, what.substr(what.find(':') + 2));
        throw ConfigError("radio", 0, "radio: " + what);
    }
    if (geometry.panels < 1)
        invalid("geometry.panels", "must be >= 1");
    if (geometry.elements_x < 1)
        invalid("geometry.elements_x", "must be >= 1");
    if (geometry.elements_y < 1)
        invalid("geometry.elements_y", "must be >= 1");
    if (geometry.feeds_per_panel < 1)
        invalid("geometry.feeds_per_panel", "must be >= 1");
    if (!(geometry.dx > 0.0))
        invalid("geometry.dx_m", "must be > 0");
    if (!(geometry.dy > 0.0))
        invalid("geometry.dy_m", "must be > 0");
    if (!(geometry.feed_layer_depth >= 0.0))
        invalid("geometry.feed_layer_depth_m", "must be >= 0");
    if (!geometry.panel_offsets.empty() && geometry.panel_offsets.size() != static_cast<std::size_t>(geometry.panels))
        invalid("geometry.panel_offsets_m", "needs one offset per panel");
    if (!(platform_height > 0.0))
        invalid("geometry.platform_height_m", "must be > 0");
    if (users.count < 1)
        invalid("users.count", "must be >= 1");
    if (users.azimuth_min_deg > users.azimuth_max_deg)
        invalid("users.azimuth_min_deg", "must not exceed users.azimuth_max_deg");
    if (users.azimuth_min_deg <= -90.0 || users.azimuth_max_deg >= 90.0)
        invalid("users.azimuth_min_deg", "azimuths must lie strictly within (-90, 90) degrees");
    if (std::abs(users.elevation_deg) >= 90.0)
        invalid("users.elevation_deg", "must lie strictly within (-90, 90) degrees");
    if (!(users.slant_range >= 0.0))
        invalid("users.slant_range_m", "must be >= 0");
    if (!(users.data_size_bits > 0.0))
        invalid("users.data_size_bits", "must be > 0");
    if (!(hologram.threshold >= 0.0 && hologram.threshold <= 1.0))
        invalid("hologram.threshold", "must lie in [0, 1]");
    if (!(hologram.amplitude_tolerance > 0.0))
        invalid("hologram.amplitude_tolerance", "must be > 0");
    if (!(link.condition_cap >= 1.0))
        invalid("link.condition_cap", "must be >= 1");
    if (!(energy.per_element_power >= 0.0))
        invalid("energy.per_element_power_w", "must be >= 0");
    if (!(energy.min_rate >= 0.0))
        invalid("energy.min_rate_bps", "must be >= 0");
    if (energy.max_iterations < 1)
        invalid("energy.max_iterations", "must be >= 1");
    if (!(energy.tolerance > 0.0))
        invalid("energy.tolerance", "must be > 0");
    if (energy.grid_resolution < 2)
        invalid("energy.grid_resolution", "must be >= 2");
    if (sweep.values.empty())
    {
        if (sweep.points < 1)
            invalid("sweep.points", "must be >= 1");
        if (!(sweep.start >= 0.0))
            invalid("sweep.circuit_power_start_w", "must be >= 0");
        if (!(sweep.stop > sweep.start) && sweep.points > 1)
            invalid("sweep.circuit_power_stop_w", "must exceed circuit_power_start_w");
        if (sweep.spacing == SweepSpacing::log && !(sweep.start > 0.0))
            invalid("sweep.circuit_power_start_w", "must be > 0 for log spacing");
    }
    else
    {
        for (std::size_t i = 0; i < sweep.values.size(); ++i)
        {
            if (!(sweep.values[i] >= 0.0))
                invalid("sweep.circuit_powers_w", "values must be >= 0");
            if (i > 0 && !(sweep.values[i] > sweep.values[i - 1]))
                invalid("sweep.circuit_powers_w", "values must be strictly increasing");
        }
    }
    if (!(render.azimuth_step > 0.0))
        invalid("render.azimuth_step_deg", "must be > 0");
    if (render.azimuth_stop < render.azimuth_start)
        invalid("render.azimuth_stop_deg", "must be >= azimuth_start_deg");
}

Scenario parse_scenario(std::string_view yaml_text, const std::string &origin)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(yaml_text));
    }
    catch (const YAML::ParserException &e)
    {
        throw ConfigError("", e.mark.line + 1,
                          fmt::format("{}:{}: YAML syntax error: {}", origin, e.mark.line + 1, e.msg));
    }

    Scenario s;
    try
    {
        Section top(root, "", 0);
        s.name = top.text("name", "custom");
        {
            const auto n = top.get("seed");
            try
            {
                s.seed = n.as<std::uint64_t>();
            }
            catch (const YAML::Exception &)
            {
                throw ConfigError("seed", line_of(n), "seed: expected a non-negative integer");
            }
        }

        auto g = top.child("geometry");
        s.geometry.panels = count_field(g, "panels");
        s.geometry.elements_x = count_field(g, "elements_x");
        s.geometry.elements_y = count_field(g, "elements_y");
        s.geometry.dx = g.number("dx_m");
        s.geometry.dy = g.number("dy_m");
        s.geometry.feeds_per_panel = count_field(g, "feeds_per_panel");
        s.geometry.tiling_axis = g.choice("tiling_axis", {{"x", TilingAxis::x}, {"y", TilingAxis::y}}, TilingAxis::x);
        s.geometry.feed_layer_depth = g.number("feed_layer_depth_m", s.geometry.feed_layer_depth);
        s.platform_height = g.number("platform_height_m");
        if (g.has("panel_offsets_m"))
        {
            const auto list = g.get("panel_offsets_m");
            if (!list.IsSequence())
                throw ConfigError("geometry.panel_offsets_m", line_of(list), "geometry.panel_offsets_m: expected a list");
            for (const auto &item : list)
                s.geometry.panel_offsets.push_back(g.vec3(item, "geometry.panel_offsets_m"));
        }
        g.reject_unknown();

        auto r = top.child("radio");
        s.radio.carrier_frequency = r.number("carrier_frequency_hz");
        s.radio.bandwidth = r.number("bandwidth_hz");
        s.radio.noise_psd = r.number("noise_psd_dbm_hz");
        s.radio.tx_power = r.number("tx_power_dbm");
        s.radio.pa_efficiency = r.number("pa_efficiency");
        s.radio.waveguide_index = r.number("waveguide_index");
        r.reject_unknown();

        auto u = top.child("users");
        s.users.count = count_field(u, "count");
        s.users.azimuth_min_deg = u.number("azimuth_min_deg");
        s.users.azimuth_max_deg = u.number("azimuth_max_deg");
        s.users.elevation_deg = u.number("elevation_deg");
        s.users.slant_range = u.number("slant_range_m", 0.0);
        s.users.data_size_bits = u.number("data_size_bits");
        u.reject_unknown();

        if (top.has("hologram"))
        {
            auto h = top.child("hologram");
            s.hologram.threshold = h.number("threshold", s.hologram.threshold);
            s.hologram.mode = h.choice("mode", {{"binary", HologramMode::binary}, {"continuous", HologramMode::continuous}},
                                       s.hologram.mode);
            const auto wf = h.text("wavefront", "auto");
            if (wf == "auto")
                s.hologram.wavefront.reset();
            else if (wf == "upw")
                s.hologram.wavefront = WavefrontModel::upw;
            else if (wf == "usw")
                s.hologram.wavefront = WavefrontModel::usw;
            else if (wf == "nusw")
                s.hologram.wavefront = WavefrontModel::nusw;
            else
                throw ConfigError("hologram.wavefront", 0,
                                  fmt::format("hologram.wavefront: '{}' is not one of {{auto, upw, usw, nusw}}", wf));
            s.hologram.amplitude_tolerance = h.number("amplitude_tolerance", s.hologram.amplitude_tolerance);
            h.reject_unknown();
        }

        if (top.has("link"))
        {
            auto l = top.child("link");
            s.link.precoder = l.choice(
                "precoder", {{"zero-forcing", PrecoderKind::zero_forcing}, {"matched-filter", PrecoderKind::matched_filter}},
                s.link.precoder);
            s.link.condition_cap = l.number("condition_cap", s.link.condition_cap);
            l.reject_unknown();
        }

        if (top.has("energy"))
        {
            auto e = top.child("energy");
            s.energy.per_element_power = e.number("per_element_power_w", s.energy.per_element_power);
            s.energy.min_rate = e.number("min_rate_bps", s.energy.min_rate);
            s.energy.max_iterations = static_cast<int>(e.integer("max_iterations", s.energy.max_iterations));
            s.energy.tolerance = e.number("tolerance", s.energy.tolerance);
            s.energy.grid_resolution = static_cast<int>(e.integer("grid_resolution", s.energy.grid_resolution));
            e.reject_unknown();
        }

        if (top.has("sweep"))
        {
            auto w = top.child("sweep");
            if (w.has("circuit_powers_w"))
            {
                if (w.has("circuit_power_start_w") || w.has("circuit_power_stop_w") || w.has("points") ||
                    w.has("spacing"))
                    throw ConfigError("sweep.circuit_powers_w", 0,
                                      "sweep.circuit_powers_w: give either an explicit list or a start/stop range");
                s.sweep.values = w.numbers("circuit_powers_w");
                if (s.sweep.values.empty())
                    throw ConfigError("sweep.circuit_powers_w", 0, "sweep.circuit_powers_w: list is empty");
            }
            else
            {
                s.sweep.start = w.number("circuit_power_start_w");
                s.sweep.stop = w.number("circuit_power_stop_w");
                s.sweep.points = count_field(w, "points");
                s.sweep.spacing =
                    w.choice("spacing", {{"log", SweepSpacing::log}, {"linear", SweepSpacing::linear}}, SweepSpacing::log);
            }
            w.reject_unknown();
        }

        if (top.has("render"))
        {
            auto rd = top.child("render");
            s.render.azimuth_start = rd.number("azimuth_start_deg", s.render.azimuth_start);
            s.render.azimuth_stop = rd.number("azimuth_stop_deg", s.render.azimuth_stop);
            s.render.azimuth_step = rd.number("azimuth_step_deg", s.render.azimuth_step);
            s.render.elevation = rd.number("elevation_deg", s.render.elevation);
            rd.reject_unknown();
        }

        if (top.has("probe"))
        {
            auto p = top.child("probe");
            if (p.has("point_m"))
                s.probe.point = p.vec3(p.get("point_m"), "probe.point_m");
            s.probe.dump_gains = p.boolean("dump_gains", false);
            p.reject_unknown();
        }
        top.reject_unknown();
    }
    catch (const ConfigError &e)
    {
        if (e.line() > 0 && std::string_view(e.what()).find(origin) == std::string_view::npos)
            throw ConfigError(e.key(), e.line(), fmt::format("{}:{}: {}", origin, e.line(), e.what()));
        throw;
    }

    s.validate();
    return s;
}

std::vector<std::string> preset_names() { return {"paper_sec4"}; }

std::string_view preset_text(const std::string &name)
{
    if (name == "paper_sec4")
        return detail::paper_sec4_preset;
    throw ConfigError("", 0, fmt::format("unknown preset '{}'", name));
}

Scenario load_preset(const std::string &name) { return parse_scenario(preset_text(name), "preset:" + name); }

Scenario load_scenario(const std::string &source)
{
    namespace fs = std::filesystem;
    std::error_code ec;
    if (!fs::exists(source, ec))
    {
        for (const auto &name : preset_names())
            if (source == name || source == "preset:" + name)
                return load_preset(name);
        throw Error(ErrorCode::io, fmt::format("{}: no such file or bundled preset", source));
    }
    std::ifstream in(source, std::ios::binary);
    if (!in)
        throw Error(ErrorCode::io, fmt::format("{}: cannot open for reading", source));
    std::ostringstream text;
    text << in.rdbuf();
    return parse_scenario(text.str(), source);
}

namespace
{

std::string num(double v) { return fmt::format("{}", v); }

std::string vec(const Vec3 &v) { return fmt::format("[{}, {}, {}]", num(v.x), num(v.y), num(v.z)); }

} // namespace

std::string serialize(const Scenario &s)
{
    std::string out;
    auto line = [&](int indent, std::string_view key, const std::string &value) {
        out += fmt::format("{:{}}{}: {}\n", "", indent, key, value);
    };
    auto section = [&](std::string_view key) { out += fmt::format("{}:\n", key); };

    line(0, "name", fmt::format("\"{}\"", s.name));
    line(0, "seed", fmt::format("{}", s.seed));

    section("geometry");
    line(2, "panels", fmt::format("{}", s.geometry.panels));
    line(2, "elements_x", fmt::format("{}", s.geometry.elements_x));
    line(2, "elements_y", fmt::format("{}", s.geometry.elements_y));
    line(2, "dx_m", num(s.geometry.dx));
    line(2, "dy_m", num(s.geometry.dy));
    line(2, "feeds_per_panel", fmt::format("{}", s.geometry.feeds_per_panel));
    line(2, "tiling_axis", s.geometry.tiling_axis == TilingAxis::x ? "x" : "y");
    line(2, "feed_layer_depth_m", num(s.geometry.feed_layer_depth));
    line(2, "platform_height_m", num(s.platform_height));
    if (!s.geometry.panel_offsets.empty())
    {
        out += "  panel_offsets_m:\n";
        for (const auto &o : s.geometry.panel_offsets)
            out += fmt::format("    - {}\n", vec(o));
    }

    section("radio");
    line(2, "carrier_frequency_hz", num(s.radio.carrier_frequency));
    line(2, "bandwidth_hz", num(s.radio.bandwidth));
    line(2, "noise_psd_dbm_hz", num(s.radio.noise_psd));
    line(2, "tx_power_dbm", num(s.radio.tx_power));
    line(2, "pa_efficiency", num(s.radio.pa_efficiency));
    line(2, "waveguide_index", num(s.radio.waveguide_index));

    section("users");
    line(2, "count", fmt::format("{}", s.users.count));
    line(2, "azimuth_min_deg", num(s.users.azimuth_min_deg));
    line(2, "azimuth_max_deg", num(s.users.azimuth_max_deg));
    line(2, "elevation_deg", num(s.users.elevation_deg));
    line(2, "slant_range_m", num(s.users.slant_range));
    line(2, "data_size_bits", num(s.users.data_size_bits));

    section("hologram");
    line(2, "threshold", num(s.hologram.threshold));
    line(2, "mode", s.hologram.mode == HologramMode::binary ? "binary" : "continuous");
    if (s.hologram.wavefront)
    {
        const auto name = to_string(*s.hologram.wavefront);
        std::string lower(name);
        for (auto &c : lower)
            c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
        line(2, "wavefront", lower);
    }
    else
    {
        line(2, "wavefront", "auto");
    }
    line(2, "amplitude_tolerance", num(s.hologram.amplitude_tolerance));

    section("link");
    line(2, "precoder", std::string(to_string(s.link.precoder)));
    line(2, "condition_cap", num(s.link.condition_cap));

    section("energy");
    line(2, "per_element_power_w", num(s.energy.per_element_power));
    line(2, "min_rate_bps", num(s.energy.min_rate));
    line(2, "max_iterations", fmt::format("{}", s.energy.max_iterations));
    line(2, "tolerance", num(s.energy.tolerance));
    line(2, "grid_resolution", fmt::format("{}", s.energy.grid_resolution));

    section("sweep");
    if (!s.sweep.values.empty())
    {
        std::string list;
        for (std::size_t i = 0; i < s.sweep.values.size(); ++i)
            list += (i ? ", " : "") + num(s.sweep.values[i]);
        line(2, "circuit_powers_w", "[" + list + "]");
    }
    else
    {
        line(2, "circuit_power_start_w", num(s.sweep.start));
        line(2, "circuit_power_stop_w", num(s.sweep.stop));
        line(2, "points", fmt::format("{}", s.sweep.points));
        line(2, "spacing", s.sweep.spacing == SweepSpacing::log ? "log" : "linear");
    }

    section("render");
    line(2, "azimuth_start_deg", num(s.render.azimuth_start));
    line(2, "azimuth_stop_deg", num(s.render.azimuth_stop));
    line(2, "azimuth_step_deg", num(s.render.azimuth_step));
    line(2, "elevation_deg", num(s.render.elevation));

    section("probe");
    if (s.probe.point)
        line(2, "point_m", vec(*s.probe.point));
    line(2, "dump_gains", s.probe.dump_gains ? "true" : "false");
    return out;
}

std::string sha256_hex(std::string_view bytes)
{
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &len, EVP_sha256(), nullptr) != 1)
        throw Error(ErrorCode::io, "SHA-256 digest failed");
    std::string hex;
    for (unsigned int i = 0; i < len; ++i)
        hex += fmt::format("{:02x}", md[i]);
    return hex;
}

std::string digest(const Scenario &scenario) { return sha256_hex(serialize(scenario)); }

} // namespace rhsim
