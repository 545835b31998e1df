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

#include "rhsim/holography.hpp"
#include "rhsim/error.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <numeric>

namespace rhsim
{

std::size_t Hologram::active_count() const
{
    return static_cast<std::size_t>(std::count(binary_pattern.begin(), binary_pattern.end(), std::uint8_t{1}));
}

CVector reference_wave(const ArrayGeometry &geometry, std::size_t feed_index, double frequency_hz,
                       double waveguide_index)
{
    if (feed_index >= geometry.feed_count())
        throw Error(ErrorCode::invalid_input,
                    fmt::format("feed index {} out of range ({} feeds)", feed_index, geometry.feed_count()));
    const double ks = 2.0 * pi * waveguide_index / wavelength(frequency_hz);
    const Vec3 &feed = geometry.feed_positions()[feed_index];
    const auto &el = geometry.element_positions();
    CVector psi(static_cast<Eigen::Index>(el.size()));
    for (std::size_t m = 0; m < el.size(); ++m)
        psi[static_cast<Eigen::Index>(m)] = std::polar(1.0, -ks * distance(el[m], feed));
    return psi;
}

CVector object_wave(const ArrayGeometry &geometry, const Vec3 &point, double frequency_hz, WavefrontModel model)
{
    const auto row = channel_for(geometry, point, frequency_hz, model);
    CVector psi(row.gains.size());
    for (Eigen::Index m = 0; m < row.gains.size(); ++m)
        psi[m] = std::polar(1.0, -std::arg(row.gains[m]));
    return psi;
}

RVector interference_pattern(const CVector &object_wave, const CVector &reference_wave)
{
    if (object_wave.size() != reference_wave.size())
        throw Error(ErrorCode::shape_mismatch, fmt::format("interference_pattern: {} object vs {} reference samples",
                                                           object_wave.size(), reference_wave.size()));
    RVector p(object_wave.size());
    for (Eigen::Index m = 0; m < p.size(); ++m)
        p[m] = std::clamp((std::real(object_wave[m] * std::conj(reference_wave[m])) + 1.0) / 2.0, 0.0, 1.0);
    return p;
}

RVector superimpose(std::span<const RVector> patterns, std::span<const double> weights)
{
    if (patterns.empty())
        throw Error(ErrorCode::invalid_input, "superimpose: no patterns");
    if (!weights.empty() && weights.size() != patterns.size())
        throw Error(ErrorCode::invalid_input,
                    fmt::format("superimpose: {} weights for {} patterns", weights.size(), patterns.size()));
    const Eigen::Index n = patterns.front().size();
    double weight_sum = 0.0;
    for (std::size_t i = 0; i < patterns.size(); ++i)
    {
        if (patterns[i].size() != n)
            throw Error(ErrorCode::shape_mismatch, "superimpose: patterns differ in length");
        if (!weights.empty())
        {
            if (!(weights[i] >= 0.0))
                throw Error(ErrorCode::invalid_input, "superimpose: weights must be >= 0");
            weight_sum += weights[i];
        }
    }
    if (!weights.empty() && std::abs(weight_sum - 1.0) > 1e-9)
        throw Error(ErrorCode::invalid_input, fmt::format("superimpose: weights sum to {}, expected 1", weight_sum));

    const double uniform = 1.0 / static_cast<double>(patterns.size());
    RVector mean = RVector::Zero(n);
    for (std::size_t i = 0; i < patterns.size(); ++i)
        mean += (weights.empty() ? uniform : weights[i]) * patterns[i];

    const double lo = mean.minCoeff(), hi = mean.maxCoeff();
    if (!(hi > lo))
        return mean;
    return ((mean.array() - lo) / (hi - lo)).matrix();
}

std::vector<std::uint8_t> binarize(const RVector &pattern, double threshold)
{
    std::vector<std::uint8_t> b(static_cast<std::size_t>(pattern.size()));
    for (Eigen::Index m = 0; m < pattern.size(); ++m)
        b[static_cast<std::size_t>(m)] = pattern[m] >= threshold ? 1 : 0;
    return b;
}

Hologram make_hologram(RVector continuous_pattern, double threshold, int target_count)
{
    if (!(threshold >= 0.0 && threshold <= 1.0))
        throw Error(ErrorCode::invalid_input, fmt::format("threshold {} outside [0, 1]", threshold));
    Hologram h;
    h.binary_pattern = binarize(continuous_pattern, threshold);
    h.continuous_pattern = std::move(continuous_pattern);
    h.threshold = threshold;
    h.target_count = target_count;
    return h;
}

Hologram synthesize_hologram(const ArrayGeometry &geometry, const HologramRequest &request)
{
    const auto k_targets = request.targets.size();
    if (k_targets == 0)
        throw Error(ErrorCode::invalid_input, "synthesize_hologram: no targets");
    if (request.models.size() != k_targets)
        throw Error(ErrorCode::shape_mismatch, "synthesize_hologram: one wavefront model per target required");
    if (!request.weights.empty() && request.weights.size() != k_targets)
        throw Error(ErrorCode::shape_mismatch, "synthesize_hologram: one weight per target required");

    const std::size_t feeds = geometry.feed_count();
    std::vector<CVector> references;
    references.reserve(feeds);
    for (std::size_t f = 0; f < feeds; ++f)
        references.push_back(reference_wave(geometry, f, request.frequency, request.waveguide_index));

    std::vector<RVector> patterns;
    std::vector<double> weights;
    patterns.reserve(k_targets * feeds);
    for (std::size_t k = 0; k < k_targets; ++k)
    {
        const auto obj = object_wave(geometry, request.targets[k], request.frequency, request.models[k]);
        const double wk = request.weights.empty() ? 1.0 / static_cast<double>(k_targets) : request.weights[k];
        for (std::size_t f = 0; f < feeds; ++f)
        {
            patterns.push_back(interference_pattern(obj, references[f]));
            weights.push_back(wk / static_cast<double>(feeds));
        }
    }
    return make_hologram(superimpose(patterns, weights), request.threshold, static_cast<int>(k_targets));
}

BeamformingMatrix beamforming_matrix(const Hologram &hologram, const ArrayGeometry &geometry, double frequency_hz,
                                     double waveguide_index, HologramMode mode)
{
    const auto n = static_cast<Eigen::Index>(geometry.element_count());
    if (hologram.continuous_pattern.size() != n || static_cast<Eigen::Index>(hologram.binary_pattern.size()) != n)
        throw Error(ErrorCode::shape_mismatch,
                    fmt::format("hologram has {} samples, geometry {} elements", hologram.continuous_pattern.size(), n));

    BeamformingMatrix bm;
    bm.entries.resize(n, static_cast<Eigen::Index>(geometry.feed_count()));
    for (std::size_t f = 0; f < geometry.feed_count(); ++f)
    {
        const auto ref = reference_wave(geometry, f, frequency_hz, waveguide_index);
        for (Eigen::Index m = 0; m < n; ++m)
        {
            const double a = mode == HologramMode::binary ? double(hologram.binary_pattern[static_cast<std::size_t>(m)])
                                                          : hologram.continuous_pattern[m];
            bm.entries(m, static_cast<Eigen::Index>(f)) = a * ref[m];
        }
    }
    bm.source_hologram = hologram;
    bm.waveguide_index = waveguide_index;
    bm.mode = mode;
    return bm;
}

std::size_t RadiationPattern::argmax() const
{
    return static_cast<std::size_t>(std::max_element(gain_db.begin(), gain_db.end()) - gain_db.begin());
}

RadiationPattern radiation_pattern(const BeamformingMatrix &matrix, const CVector &feed_weights,
                                   const ArrayGeometry &geometry, double frequency_hz,
                                   std::span<const double> azimuth_grid_deg, double elevation_deg)
{
    if (azimuth_grid_deg.empty())
        throw Error(ErrorCode::invalid_input, "radiation_pattern: empty angle grid");
    if (feed_weights.size() != matrix.entries.cols())
        throw Error(ErrorCode::shape_mismatch, fmt::format("radiation_pattern: {} feed weights for {} feeds",
                                                           feed_weights.size(), matrix.entries.cols()));
    if (matrix.entries.rows() != static_cast<Eigen::Index>(geometry.element_count()))
        throw Error(ErrorCode::shape_mismatch, "radiation_pattern: matrix does not match geometry");

    const CVector field = matrix.entries * feed_weights;
    std::vector<double> power(azimuth_grid_deg.size());
    for (std::size_t i = 0; i < azimuth_grid_deg.size(); ++i)
    {
        const auto h = channel_upw(geometry, azimuth_grid_deg[i], elevation_deg, frequency_hz, 1.0);
        // Unit-amplitude response: divide out the common lambda / (4 pi) factor.
        power[i] = std::norm((h.gains.array() * field.array()).sum()) / std::norm(h.gains[0]);
    }

    RadiationPattern out;
    out.angles_deg.assign(azimuth_grid_deg.begin(), azimuth_grid_deg.end());
    const double peak = *std::max_element(power.begin(), power.end());
    out.degenerate = !(peak > 0.0);
    out.gain_db.resize(power.size());
    for (std::size_t i = 0; i < power.size(); ++i)
        out.gain_db[i] = out.degenerate ? -std::numeric_limits<double>::infinity() : 10.0 * std::log10(power[i] / peak);
    return out;
}

std::vector<double> angle_grid(double start_deg, double stop_deg, double step_deg)
{
    if (!(step_deg > 0.0) || stop_deg < start_deg)
        throw Error(ErrorCode::invalid_input, "angle_grid: need step > 0 and stop >= start");
    const auto n = static_cast<std::size_t>(std::floor((stop_deg - start_deg) / step_deg + 1e-9)) + 1;
    std::vector<double> grid(n);
    for (std::size_t i = 0; i < n; ++i)
        grid[i] = start_deg + static_cast<double>(i) * step_deg;
    return grid;
}

} // namespace rhsim
