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

#ifndef RHSIM_HOLOGRAPHY_HPP
#define RHSIM_HOLOGRAPHY_HPP

#include "rhsim/channel.hpp"
#include "rhsim/geometry.hpp"
#include "rhsim/types.hpp"

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace rhsim
{

enum class HologramMode
{
    binary,
    continuous
};

struct Hologram
{
    RVector continuous_pattern;              // per element, in [0, 1]
    std::vector<std::uint8_t> binary_pattern; // 1 iff continuous_pattern >= threshold
    double threshold = 0.5;
    int target_count = 0;

    std::size_t active_count() const;
};

struct BeamformingMatrix
{
    CMatrix entries; // elements x feeds
    Hologram source_hologram;
    double waveguide_index = 1.0;
    HologramMode mode = HologramMode::binary;
};

// Guided wave launched by one feed, exp(-j k n_s |r_m - r_f|).
CVector reference_wave(const ArrayGeometry &geometry, std::size_t feed_index, double frequency_hz,
                       double waveguide_index);

// Unit-modulus conjugate of the channel phase toward `point` under `model`.
CVector object_wave(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz, WavefrontModel model);

// (Re(obj conj(ref)) + 1) / 2 per element. Throws Error(shape_mismatch) on unequal lengths.
RVector interference_pattern(const CVector &object_wave, const CVector &reference_wave);

// Weighted mean (fixed summation order), then min-max rescaled to span [0, 1]. A flat mean is
// returned unscaled. Empty `weights` means uniform.
RVector superimpose(std::span<const RVector> patterns, std::span<const double> weights = {});

// Ties (pattern == threshold) map to 1.
std::vector<std::uint8_t> binarize(const RVector &pattern, double threshold);

Hologram make_hologram(RVector continuous_pattern, double threshold, int target_count);

struct HologramRequest
{
    std::vector<Vec3> targets;
    std::vector<WavefrontModel> models; // one per target
    std::vector<double> weights;        // per target; empty means uniform
    double frequency = 26.2e9;
    double waveguide_index = 1.7320508075688772;
    double threshold = 0.5;
};

// Interferes each target's object wave with every feed's reference wave and superimposes the
// K x feeds patterns (target weight split evenly across feeds), then thresholds.
Hologram synthesize_hologram(const ArrayGeometry &geometry, const HologramRequest &request);

BeamformingMatrix beamforming_matrix(const Hologram &hologram, const ArrayGeometry &geometry, double frequency_hz,
                                     double waveguide_index, HologramMode mode);

struct RadiationPattern
{
    std::vector<double> angles_deg;
    std::vector<double> gain_db; // peak normalised to 0 dB
    bool degenerate = false;     // zero radiated field everywhere; gains are -inf

    std::size_t argmax() const;
};

// Far-field power |h(theta) . M v|^2 over an azimuth grid at fixed elevation, where h is the unit-amplitude
// plane-wave channel toward theta.
RadiationPattern radiation_pattern(const BeamformingMatrix &matrix, const CVector &feed_weights,
                                   const ArrayGeometry &geometry, double frequency_hz,
                                   std::span<const double> azimuth_grid_deg, double elevation_deg = 0.0);

// Uniform azimuth grid [start, stop] inclusive with the given step.
std::vector<double> angle_grid(double start_deg, double stop_deg, double step_deg);

} // namespace rhsim

#endif
