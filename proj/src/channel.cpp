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

#include "rhsim/channel.hpp"
#include "rhsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>

namespace rhsim
{

void RadioConfig::validate() const
{
    auto fail = [](const char *field, const std::string &constraint) {
        throw Error(ErrorCode::invalid_config, fmt::format("{}: {}", field, constraint));
    };
    if (!(carrier_frequency > 0.0) || !std::isfinite(carrier_frequency))
        fail("carrier_frequency", "must be a finite value > 0");
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        fail("bandwidth", "must be a finite value > 0");
    if (!std::isfinite(noise_psd))
        fail("noise_psd", "must be finite");
    if (!std::isfinite(tx_power))
        fail("tx_power", "must be finite");
    if (!(pa_efficiency > 0.0 && pa_efficiency <= 1.0))
        fail("pa_efficiency", "must lie in (0, 1]");
    if (!(waveguide_index >= 1.0) || !std::isfinite(waveguide_index))
        fail("waveguide_index", "must be >= 1");
}

std::string_view to_string(WavefrontModel model)
{
    switch (model)
    {
    case WavefrontModel::upw:
        return "UPW";
    case WavefrontModel::usw:
        return "USW";
    case WavefrontModel::nusw:
        return "NUSW";
    }
    return "?";
}

std::string_view to_string(Region region)
{
    switch (region)
    {
    case Region::far_field:
        return "far-field";
    case Region::radiating_near_field:
        return "radiating-near-field";
    case Region::non_uniform_near_field:
        return "non-uniform-near-field";
    }
    return "?";
}

namespace
{

constexpr double coincidence_tolerance = 1e-12; // m

struct DistanceSpread
{
    double min = std::numeric_limits<double>::infinity();
    double max = 0.0;
};

DistanceSpread element_distances(const ArrayGeometry &geometry, const Vec3 &point)
{
    DistanceSpread s;
    for (const auto &r : geometry.element_positions())
    {
        const double d = distance(r, point);
        s.min = std::min(s.min, d);
        s.max = std::max(s.max, d);
    }
    return s;
}

void require_clear_of_elements(const DistanceSpread &spread, const Vec3 &point)
{
    if (spread.min <= coincidence_tolerance)
        throw Error(ErrorCode::singular_geometry,
                    fmt::format("point ({}, {}, {}) coincides with an array element", point.x, point.y, point.z));
}

// Smallest range along `dir` beyond which the element distance ratio stays within 1 + tolerance.
double uniform_power_distance(const ArrayGeometry &geometry, const Vec3 &dir, double aperture, double tolerance)
{
    if (geometry.element_count() < 2)
        return 0.0;
    const Vec3 &c = geometry.platform_position();
    auto ratio_at = [&](double d) {
        const auto s = element_distances(geometry, c + d * dir);
        return s.min > 0.0 ? s.max / s.min : std::numeric_limits<double>::infinity();
    };
    const double limit = 1.0 + tolerance;
    double good = std::max(aperture, 1e-6);
    while (ratio_at(good) > limit && good < 1e12 * aperture)
        good *= 2.0;
    double bad = good;
    while (ratio_at(bad) <= limit)
    {
        good = bad;
        bad *= 0.9;
        if (bad < 1e-9 * aperture)
            return 0.0;
    }
    for (int i = 0; i < 200 && good - bad > 1e-12 * good; ++i)
    {
        const double mid = 0.5 * (good + bad);
        (ratio_at(mid) > limit ? bad : good) = mid;
    }
    return good;
}

} // namespace

RegionClassification classify_region(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz,
                                     double amplitude_tolerance)
{
    if (!(frequency_hz > 0.0))
        throw Error(ErrorCode::invalid_input, "frequency must be > 0");
    if (!(amplitude_tolerance > 0.0))
        throw Error(ErrorCode::invalid_input, "amplitude_tolerance must be > 0");
    const auto spread = element_distances(geometry, point);
    require_clear_of_elements(spread, point);

    RegionClassification rc;
    const auto aperture = aperture_of(geometry);
    rc.rayleigh_distance = aperture.degenerate ? 0.0 : rayleigh_distance(aperture.meters, frequency_hz);
    const Vec3 offset = point - geometry.platform_position();
    rc.distance = offset.norm();
    rc.amplitude_ratio = spread.max / spread.min;
    const Vec3 dir = rc.distance > 0.0 ? (1.0 / rc.distance) * offset : Vec3{0.0, 0.0, -1.0};
    rc.uniform_power_distance = uniform_power_distance(geometry, dir, aperture.meters, amplitude_tolerance);

    if (rc.distance >= rc.rayleigh_distance)
        rc.region = Region::far_field;
    else if (rc.amplitude_ratio > 1.0 + amplitude_tolerance)
        rc.region = Region::non_uniform_near_field;
    else
        rc.region = Region::radiating_near_field;
    return rc;
}

ChannelRow channel_upw(const ArrayGeometry &geometry, double azimuth_deg, double elevation_deg, double frequency_hz,
                       double reference_distance)
{
    if (!(frequency_hz > 0.0) || !(reference_distance > 0.0))
        throw Error(ErrorCode::invalid_input, "channel_upw needs frequency > 0 and reference_distance > 0");
    const double lambda = wavelength(frequency_hz);
    const double k = 2.0 * pi / lambda;
    const double amplitude = lambda / (4.0 * pi * reference_distance);
    // Propagation direction of the arriving plane wave.
    const Vec3 u = -1.0 * direction_from_angles(azimuth_deg, elevation_deg);
    const Vec3 &c = geometry.platform_position();
    const auto &el = geometry.element_positions();

    ChannelRow row{CVector(static_cast<Eigen::Index>(el.size())), WavefrontModel::upw};
    for (std::size_t m = 0; m < el.size(); ++m)
        row.gains[static_cast<Eigen::Index>(m)] = std::polar(amplitude, -k * u.dot(el[m] - c));
    return row;
}

namespace
{

ChannelRow spherical_row(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz, bool per_element_power)
{
    if (!(frequency_hz > 0.0))
        throw Error(ErrorCode::invalid_input, "frequency must be > 0");
    const auto spread = element_distances(geometry, point);
    require_clear_of_elements(spread, point);
    const double lambda = wavelength(frequency_hz);
    const double k = 2.0 * pi / lambda;
    const double d_centre = distance(point, geometry.platform_position());
    if (!per_element_power && !(d_centre > coincidence_tolerance))
        throw Error(ErrorCode::singular_geometry, "point coincides with the array reference position");
    const double common = lambda / (4.0 * pi * d_centre);
    const auto &el = geometry.element_positions();

    ChannelRow row{CVector(static_cast<Eigen::Index>(el.size())),
                   per_element_power ? WavefrontModel::nusw : WavefrontModel::usw};
    for (std::size_t m = 0; m < el.size(); ++m)
    {
        const double d = distance(el[m], point);
        const double a = per_element_power ? lambda / (4.0 * pi * d) : common;
        row.gains[static_cast<Eigen::Index>(m)] = std::polar(a, -k * d);
    }
    return row;
}

} // namespace

ChannelRow channel_usw(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz)
{
    return spherical_row(geometry, point, frequency_hz, false);
}

ChannelRow channel_nusw(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz)
{
    return spherical_row(geometry, point, frequency_hz, true);
}

ChannelRow channel_for(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz, WavefrontModel model)
{
    switch (model)
    {
    case WavefrontModel::usw:
        return channel_usw(geometry, point, frequency_hz);
    case WavefrontModel::nusw:
        return channel_nusw(geometry, point, frequency_hz);
    case WavefrontModel::upw:
        break;
    }
    const Vec3 offset = point - geometry.platform_position();
    const double d = offset.norm();
    if (!(d > coincidence_tolerance))
        throw Error(ErrorCode::singular_geometry, "UPW target coincides with the array reference position");
    const auto a = angles_of(offset);
    return channel_upw(geometry, a.azimuth_deg, a.elevation_deg, frequency_hz, d);
}

ChannelRow channel_auto(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz,
                        double amplitude_tolerance)
{
    const auto rc = classify_region(geometry, point, frequency_hz, amplitude_tolerance);
    switch (rc.region)
    {
    case Region::far_field:
        return channel_for(geometry, point, frequency_hz, WavefrontModel::upw);
    case Region::radiating_near_field:
        return channel_usw(geometry, point, frequency_hz);
    case Region::non_uniform_near_field:
        break;
    }
    return channel_nusw(geometry, point, frequency_hz);
}

ChannelMatrix channel_matrix(const ArrayGeometry &geometry, const std::vector<Vec3> &points, double frequency_hz,
                             std::optional<WavefrontModel> model, double amplitude_tolerance)
{
    ChannelMatrix h;
    h.frequency = frequency_hz;
    h.gains.resize(static_cast<Eigen::Index>(points.size()), static_cast<Eigen::Index>(geometry.element_count()));
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        auto row = model ? channel_for(geometry, points[k], frequency_hz, *model)
                         : channel_auto(geometry, points[k], frequency_hz, amplitude_tolerance);
        h.gains.row(static_cast<Eigen::Index>(k)) = row.gains.transpose();
        h.models.push_back(row.model);
    }
    return h;
}

double normalized_correlation(const CVector &a, const CVector &b)
{
    if (a.size() != b.size())
        throw Error(ErrorCode::shape_mismatch, "normalized_correlation: length mismatch");
    const double na = a.norm(), nb = b.norm();
    if (na == 0.0 || nb == 0.0)
        return 0.0;
    return std::abs(a.dot(b)) / (na * nb);
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }

double noise_power(double noise_psd_dbm_hz, double bandwidth_hz)
{
    if (!(bandwidth_hz > 0.0))
        throw Error(ErrorCode::invalid_input, "bandwidth must be > 0");
    return dbm_to_watts(noise_psd_dbm_hz) * bandwidth_hz;
}

double free_space_path_loss_db(double distance_m, double frequency_hz)
{
    if (!(distance_m > 0.0) || !(frequency_hz > 0.0))
        throw Error(ErrorCode::invalid_input, "path loss needs distance > 0 and frequency > 0");
    return 20.0 * std::log10(4.0 * pi * distance_m / wavelength(frequency_hz));
}

} // namespace rhsim
