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

#ifndef RHSIM_CHANNEL_HPP
#define RHSIM_CHANNEL_HPP

#include "rhsim/geometry.hpp"
#include "rhsim/types.hpp"

#include <optional>
#include <string_view>
#include <vector>

namespace rhsim
{

struct RadioConfig
{
    double carrier_frequency = 26.2e9; // Hz
    double bandwidth = 120e6;          // Hz
    double noise_psd = -174.0;         // dBm/Hz
    double tx_power = 23.0;            // dBm, total across users
    double pa_efficiency = 1.0;        // (0, 1]
    double waveguide_index = 1.7320508075688772;

    // Throws Error(invalid_config) naming the first offending field.
    void validate() const;
};

enum class WavefrontModel
{
    upw,
    usw,
    nusw
};

std::string_view to_string(WavefrontModel model);

enum class Region
{
    far_field,
    radiating_near_field,
    non_uniform_near_field
};

std::string_view to_string(Region region);

struct RegionClassification
{
    double rayleigh_distance = 0.0;
    double uniform_power_distance = 0.0; // along the ray from the array reference through the point
    double distance = 0.0;               // point to array reference (platform position)
    double amplitude_ratio = 1.0;        // max/min element-to-point distance
    Region region = Region::far_field;
};

inline constexpr double default_amplitude_tolerance = 0.01;

RegionClassification classify_region(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz,
                                     double amplitude_tolerance = default_amplitude_tolerance);

struct ChannelRow
{
    CVector gains; // one dimensionless complex amplitude per element
    WavefrontModel model = WavefrontModel::upw;
};

// Plane wave arriving from (azimuth, elevation): A exp(-j k <u, r_m - c>) with u the propagation
// direction (toward the array), c the platform position and A = lambda / (4 pi reference_distance).
ChannelRow channel_upw(const ArrayGeometry &geometry, double azimuth_deg, double elevation_deg, double frequency_hz,
                       double reference_distance);

// Exact per-element path phase, amplitude fixed by the distance to the platform position.
ChannelRow channel_usw(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz);

// Exact per-element path phase and per-element free-space amplitude.
ChannelRow channel_nusw(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz);

// Dispatches on classify_region: NUSW / USW / UPW for the three regions.
ChannelRow channel_auto(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz,
                        double amplitude_tolerance = default_amplitude_tolerance);

// Single row under an explicit model; UPW takes its direction and reference distance from the point.
ChannelRow channel_for(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz, WavefrontModel model);

struct ChannelMatrix
{
    CMatrix gains; // users x elements
    std::vector<WavefrontModel> models;
    double frequency = 0.0;
};

// `model` empty selects channel_auto per user.
ChannelMatrix channel_matrix(const ArrayGeometry &geometry, const std::vector<Vec3> &points, double frequency_hz,
                             std::optional<WavefrontModel> model = std::nullopt,
                             double amplitude_tolerance = default_amplitude_tolerance);

// |<a, b>| / (|a| |b|)
double normalized_correlation(const CVector &a, const CVector &b);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// Integrated thermal noise: noise_psd (dBm/Hz) over `bandwidth` Hz, in watts.
double noise_power(double noise_psd_dbm_hz, double bandwidth_hz);

// 20 log10(4 pi d / lambda)
double free_space_path_loss_db(double distance_m, double frequency_hz);

} // namespace rhsim

#endif
