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

#include "rhsim/geometry.hpp"
#include "rhsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <ostream>
#include <random>
#include <tuple>

namespace rhsim
{

Vec3 direction_from_angles(double azimuth_deg, double elevation_deg)
{
    const double az = deg2rad(azimuth_deg), el = deg2rad(elevation_deg);
    return {std::sin(az) * std::cos(el), std::sin(el), -std::cos(az) * std::cos(el)};
}

Angles angles_of(const Vec3 &direction)
{
    const double n = direction.norm();
    const double el = std::asin(std::clamp(direction.y / n, -1.0, 1.0));
    const double az = std::atan2(direction.x, -direction.z);
    return {rad2deg(az), rad2deg(el)};
}

ElementIndex ArrayGeometry::element_index(std::size_t m) const
{
    const auto per_panel = static_cast<std::size_t>(spec_.elements_x * spec_.elements_y);
    const auto in_panel = m % per_panel;
    return {static_cast<int>(m / per_panel), static_cast<int>(in_panel % spec_.elements_x),
            static_cast<int>(in_panel / spec_.elements_x)};
}

std::size_t ArrayGeometry::element_at(int panel, int ix, int iy) const
{
    return (static_cast<std::size_t>(panel) * spec_.elements_y + iy) * spec_.elements_x + ix;
}

ArrayGeometry ArrayGeometry::translated(const Vec3 &delta) const
{
    ArrayGeometry out = *this;
    out.spec_.platform_position = spec_.platform_position + delta;
    for (auto &p : out.elements_)
        p = p + delta;
    for (auto &p : out.feeds_)
        p = p + delta;
    return out;
}

ArrayGeometry build_array(const ArraySpec &spec)
{
    auto invalid = [](const std::string &what) { return Error(ErrorCode::invalid_config, what); };
    if (spec.panels < 1)
        throw invalid(fmt::format("panels must be >= 1 (got {})", spec.panels));
    if (spec.elements_x < 1 || spec.elements_y < 1)
        throw invalid(fmt::format("elements per panel must be >= 1 (got {} x {})", spec.elements_x, spec.elements_y));
    if (spec.feeds_per_panel < 1)
        throw invalid(fmt::format("feeds_per_panel must be >= 1 (got {})", spec.feeds_per_panel));
    if (!(spec.dx > 0.0) || !(spec.dy > 0.0))
        throw invalid(fmt::format("element spacings must be > 0 (got dx={}, dy={})", spec.dx, spec.dy));
    if (!(spec.feed_layer_depth >= 0.0))
        throw invalid("feed_layer_depth must be >= 0");
    if (!spec.panel_offsets.empty() && spec.panel_offsets.size() != static_cast<std::size_t>(spec.panels))
        throw invalid(fmt::format("panel_offsets has {} entries for {} panels", spec.panel_offsets.size(), spec.panels));

    ArrayGeometry g;
    g.spec_ = spec;

    const double width = spec.elements_x * spec.dx;
    const double height = spec.elements_y * spec.dy;
    const double pitch = spec.tiling_axis == TilingAxis::x ? width : height;
    if (spec.panel_offsets.empty())
    {
        for (int p = 0; p < spec.panels; ++p)
        {
            const double c = (p - (spec.panels - 1) / 2.0) * pitch;
            g.panel_offsets_.push_back(spec.tiling_axis == TilingAxis::x ? Vec3{c, 0.0, 0.0} : Vec3{0.0, c, 0.0});
        }
    }
    else
    {
        g.panel_offsets_ = spec.panel_offsets;
    }

    const Vec3 &origin = spec.platform_position;
    g.elements_.reserve(static_cast<std::size_t>(spec.panels) * spec.elements_x * spec.elements_y);
    g.feeds_.reserve(static_cast<std::size_t>(spec.panels) * spec.feeds_per_panel);
    for (int p = 0; p < spec.panels; ++p)
    {
        const Vec3 centre = origin + g.panel_offsets_[p];
        for (int iy = 0; iy < spec.elements_y; ++iy)
            for (int ix = 0; ix < spec.elements_x; ++ix)
                g.elements_.push_back(centre + Vec3{(ix - (spec.elements_x - 1) / 2.0) * spec.dx,
                                                    (iy - (spec.elements_y - 1) / 2.0) * spec.dy, 0.0});
        // Feeds sit on the panel's x centreline, one per equal-width segment, behind the surface.
        for (int f = 0; f < spec.feeds_per_panel; ++f)
            g.feeds_.push_back(
                centre + Vec3{(f + 0.5) * width / spec.feeds_per_panel - width / 2.0, 0.0, spec.feed_layer_depth});
    }

    if (!spec.panel_offsets.empty())
    {
        auto sorted = g.elements_;
        auto key = [](const Vec3 &v) { return std::tie(v.x, v.y, v.z); };
        std::sort(sorted.begin(), sorted.end(), [&](const Vec3 &a, const Vec3 &b) { return key(a) < key(b); });
        if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
            throw invalid("panel_offsets place two elements at the same position");
    }
    return g;
}

ArrayGeometry build_array(int panels, int nx, int ny, double dx, double dy, int feeds_per_panel,
                          TilingAxis tiling_axis, const Vec3 &platform_position)
{
    ArraySpec spec;
    spec.panels = panels;
    spec.elements_x = nx;
    spec.elements_y = ny;
    spec.dx = dx;
    spec.dy = dy;
    spec.feeds_per_panel = feeds_per_panel;
    spec.tiling_axis = tiling_axis;
    spec.platform_position = platform_position;
    return build_array(spec);
}

Aperture aperture_of(const ArrayGeometry &geometry)
{
    const auto &pts = geometry.element_positions();
    if (pts.size() < 2)
        return {0.0, true};
    double best = 0.0;
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = i + 1; j < pts.size(); ++j)
        {
            const Vec3 d = pts[i] - pts[j];
            best = std::max(best, d.dot(d));
        }
    return {std::sqrt(best), false};
}

double rayleigh_distance(double aperture_m, double frequency_hz)
{
    if (!(aperture_m > 0.0) || !(frequency_hz > 0.0))
        throw Error(ErrorCode::invalid_input,
                    fmt::format("rayleigh_distance needs aperture > 0 and frequency > 0 (got {}, {})", aperture_m,
                                frequency_hz));
    return 2.0 * aperture_m * aperture_m * frequency_hz / speed_of_light;
}

namespace
{
// Portable [0, 1) from the top 53 bits; std::uniform_real_distribution is implementation-defined.
double unit_draw(std::mt19937_64 &rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }
} // namespace

UserSet place_users(const UserPlacement &placement, const Vec3 &platform_position, std::uint64_t seed)
{
    if (placement.count < 1)
        throw Error(ErrorCode::invalid_config, fmt::format("user count must be >= 1 (got {})", placement.count));
    if (placement.azimuth_min_deg > placement.azimuth_max_deg)
        throw Error(ErrorCode::invalid_config, "azimuth range bounds are not ordered");
    if (!(placement.data_size_bits > 0.0))
        throw Error(ErrorCode::invalid_config, "data_size_bits must be > 0");
    if (placement.azimuth_min_deg <= -90.0 || placement.azimuth_max_deg >= 90.0 ||
        std::abs(placement.elevation_deg) >= 90.0)
        throw Error(ErrorCode::invalid_config, "user angles must stay within the lower half-space (|angle| < 90 deg)");
    if (placement.slant_range <= 0.0 && !(placement.height > 0.0))
        throw Error(ErrorCode::invalid_config, "platform height must be > 0");

    std::mt19937_64 rng(seed);
    UserSet users;
    const double span = placement.azimuth_max_deg - placement.azimuth_min_deg;
    for (int k = 0; k < placement.count; ++k)
    {
        const double az = placement.azimuth_min_deg + span * unit_draw(rng);
        const Vec3 u = direction_from_angles(az, placement.elevation_deg);
        // Ground plane lies at z = platform.z - height; u.z < 0 inside the allowed angle range.
        const double range = placement.slant_range > 0.0 ? placement.slant_range : placement.height / -u.z;
        users.positions.push_back(platform_position + range * u);
        users.azimuths_deg.push_back(az);
        users.elevations_deg.push_back(placement.elevation_deg);
        users.data_sizes_bits.push_back(placement.data_size_bits);
    }
    return users;
}

void write_geometry_csv(std::ostream &out, const ArrayGeometry &geometry)
{
    out << "kind,panel,ix,iy,x,y,z\n";
    const auto &el = geometry.element_positions();
    for (std::size_t m = 0; m < el.size(); ++m)
    {
        const auto idx = geometry.element_index(m);
        out << fmt::format("element,{},{},{},{},{},{}\n", idx.panel, idx.ix, idx.iy, el[m].x, el[m].y, el[m].z);
    }
    const auto &fd = geometry.feed_positions();
    const auto per_panel = static_cast<std::size_t>(geometry.spec().feeds_per_panel);
    for (std::size_t f = 0; f < fd.size(); ++f)
        out << fmt::format("feed,{},{},0,{},{},{}\n", f / per_panel, f % per_panel, fd[f].x, fd[f].y, fd[f].z);
}

} // namespace rhsim
