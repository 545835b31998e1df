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

#ifndef RHSIM_GEOMETRY_HPP
#define RHSIM_GEOMETRY_HPP

#include "rhsim/types.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace rhsim
{

// Frame convention (platform-centred): panels lie in the x-y plane around the platform position and
// radiate toward -z, where the ground sits at z = platform.z - height. Azimuth rotates boresight toward
// +x (the panel tiling axis), elevation toward +y.
Vec3 direction_from_angles(double azimuth_deg, double elevation_deg);

struct Angles
{
    double azimuth_deg;
    double elevation_deg;
};
Angles angles_of(const Vec3 &direction);

enum class TilingAxis
{
    x,
    y
};

struct ArraySpec
{
    int panels = 4;
    int elements_x = 48;
    int elements_y = 8;
    double dx = 2.64e-3; // m
    double dy = 5.65e-3; // m
    int feeds_per_panel = 8;
    TilingAxis tiling_axis = TilingAxis::x;
    Vec3 platform_position{};
    std::vector<Vec3> panel_offsets; // empty: edge-to-edge tiling along tiling_axis
    double feed_layer_depth = 5e-3;  // m, behind the radiating plane
};

struct ElementIndex
{
    int panel;
    int ix;
    int iy;
};

class ArrayGeometry
{
public:
    ArrayGeometry() = default;

    const ArraySpec &spec() const { return spec_; }
    int panels() const { return spec_.panels; }
    int elements_x() const { return spec_.elements_x; }
    int elements_y() const { return spec_.elements_y; }
    double dx() const { return spec_.dx; }
    double dy() const { return spec_.dy; }
    const Vec3 &platform_position() const { return spec_.platform_position; }
    const std::vector<Vec3> &panel_offsets() const { return panel_offsets_; }

    std::size_t element_count() const { return elements_.size(); }
    std::size_t feed_count() const { return feeds_.size(); }
    const std::vector<Vec3> &element_positions() const { return elements_; }
    const std::vector<Vec3> &feed_positions() const { return feeds_; }

    // Elements are stored panel-major, then row (iy), then column (ix).
    ElementIndex element_index(std::size_t m) const;
    std::size_t element_at(int panel, int ix, int iy) const;
    int feed_panel(std::size_t f) const { return static_cast<int>(f) / spec_.feeds_per_panel; }

    // Returns a copy rigidly shifted by `delta` (elements, feeds and platform).
    ArrayGeometry translated(const Vec3 &delta) const;

private:
    friend ArrayGeometry build_array(const ArraySpec &spec);

    ArraySpec spec_;
    std::vector<Vec3> panel_offsets_;
    std::vector<Vec3> elements_;
    std::vector<Vec3> feeds_;
};

// Throws Error(invalid_config) for non-positive counts/spacings, a panel_offsets list of the wrong
// length, or offsets that make two elements coincide.
ArrayGeometry build_array(const ArraySpec &spec);

ArrayGeometry build_array(int panels, int nx, int ny, double dx, double dy, int feeds_per_panel,
                          TilingAxis tiling_axis, const Vec3 &platform_position);

struct Aperture
{
    double meters = 0.0;
    bool degenerate = false; // set when fewer than two elements exist
};

// Largest distance between any two element centres (exhaustive pairwise scan).
Aperture aperture_of(const ArrayGeometry &geometry);

// Fraunhofer boundary 2 D^2 / lambda.
double rayleigh_distance(double aperture_m, double frequency_hz);

struct UserSet
{
    std::vector<Vec3> positions;
    std::vector<double> azimuths_deg;
    std::vector<double> elevations_deg;
    std::vector<double> data_sizes_bits;

    std::size_t size() const { return positions.size(); }
};

struct UserPlacement
{
    int count = 3;
    double azimuth_min_deg = -50.0;
    double azimuth_max_deg = 50.0;
    double elevation_deg = 0.0;
    double height = 1000.0;   // platform altitude above ground, m
    double slant_range = 0.0; // > 0: place on this sphere instead of the ground plane
    double data_size_bits = 50e3;
};

// Azimuths are drawn uniformly from [azimuth_min, azimuth_max] with a seeded mt19937_64.
UserSet place_users(const UserPlacement &placement, const Vec3 &platform_position, std::uint64_t seed);

// CSV with header "kind,panel,ix,iy,x,y,z"; elements first, then feeds (ix = feed index, iy = 0).
void write_geometry_csv(std::ostream &out, const ArrayGeometry &geometry);

} // namespace rhsim

#endif
