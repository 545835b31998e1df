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

#include "oracle.hpp"

#include "rhsim/error.hpp"
#include "rhsim/holography.hpp"

#include <doctest.h>

using namespace rhsim;

namespace
{

const double f_carrier = 26.2e9;
const double n_s = std::sqrt(3.0);

HologramRequest single_target(double az_deg, double range = 1000.0)
{
    HologramRequest req;
    req.targets = {range * direction_from_angles(az_deg, 0.0)};
    req.models = {WavefrontModel::upw};
    return req;
}

double beam_peak(const ArrayGeometry &g, double az, HologramMode mode, std::span<const double> grid)
{
    const auto h = synthesize_hologram(g, single_target(az));
    const auto m = beamforming_matrix(h, g, f_carrier, n_s, mode);
    const auto pat = radiation_pattern(m, CVector::Ones(static_cast<Eigen::Index>(g.feed_count())), g, f_carrier, grid);
    return pat.angles_deg[pat.argmax()];
}

} // namespace

TEST_CASE("interference pattern identities")
{
    CVector obj(3), ref(3);
    obj << std::polar(1.0, 0.3), std::polar(1.0, 0.3), std::polar(1.0, 0.3);
    ref << std::polar(1.0, 0.3), std::polar(1.0, 0.3 + oracle::pi), std::polar(1.0, 0.3 + oracle::pi / 2);
    const auto p = interference_pattern(obj, ref);
    CHECK(p[0] == 1.0);
    CHECK(p[1] == 0.0);
    CHECK(p[2] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_THROWS_AS(interference_pattern(CVector::Ones(3), CVector::Ones(4)), Error);
}

TEST_CASE("interference pattern stays in [0,1] and ignores a global phase")
{
    const auto g = build_array(ArraySpec{});
    const auto ref = reference_wave(g, 3, f_carrier, n_s);
    const auto obj = object_wave(g, {120, 0, -900}, f_carrier, WavefrontModel::nusw);
    const auto p = interference_pattern(obj, ref);
    CHECK(p.minCoeff() >= 0.0);
    CHECK(p.maxCoeff() <= 1.0);
    const cdouble rot = std::polar(1.0, 1.234);
    const auto q = interference_pattern(rot * obj, rot * ref);
    CHECK((p - q).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("reference wave is unit modulus and matches a distance oracle")
{
    const auto g = build_array(ArraySpec{});
    const auto w = reference_wave(g, 0, f_carrier, n_s);
    const double k = 2.0 * oracle::pi * n_s / oracle::lambda(f_carrier);
    const auto &fp = g.feed_positions()[0];
    double worst = 0.0;
    for (std::size_t m = 0; m < g.element_count(); ++m)
    {
        const auto &r = g.element_positions()[m];
        const double d = oracle::dist({r.x, r.y, r.z}, {fp.x, fp.y, fp.z});
        const auto wm = w[static_cast<Eigen::Index>(m)];
        CHECK(std::abs(wm) == doctest::Approx(1.0).epsilon(1e-15));
        worst = std::max(worst, std::abs(oracle::phase_gap(std::arg(wm), -k * d)));
    }
    CHECK(worst < 1e-9);
}

TEST_CASE("reference wave at one guided wavelength has zero phase")
{
    ArraySpec spec;
    spec.panels = spec.elements_x = spec.elements_y = spec.feeds_per_panel = 1;
    spec.feed_layer_depth = oracle::lambda(f_carrier) / n_s;
    const auto g = build_array(spec);
    const auto w = reference_wave(g, 0, f_carrier, n_s);
    CHECK(std::abs(std::arg(w[0])) < 1e-9);
}

TEST_CASE("object wave conjugates the channel phase")
{
    const auto g = build_array(ArraySpec{});
    const auto bore = object_wave(g, {0, 0, -1000}, f_carrier, WavefrontModel::upw);
    CHECK((bore.array() - bore[0]).abs().maxCoeff() < 1e-12);

    const Vec3 p{0.4, -0.2, -5};
    const auto ch = channel_nusw(g, p, f_carrier);
    const auto obj = object_wave(g, p, f_carrier, WavefrontModel::nusw);
    for (Eigen::Index m = 0; m < obj.size(); ++m)
    {
        CHECK(std::abs(obj[m]) == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(std::abs(oracle::phase_gap(std::arg(obj[m]), -std::arg(ch.gains[m]))) < 1e-9);
    }
}

TEST_CASE("superposition")
{
    RVector a(4), b(4), c(4);
    a << 0.0, 0.25, 0.5, 1.0;
    b << 0.2, 0.9, 0.1, 0.3;
    c << 0.7, 0.7, 0.0, 0.4;

    const std::vector<RVector> one{a};
    CHECK((superimpose(one) - a).cwiseAbs().maxCoeff() < 1e-15);
    const std::vector<RVector> same{a, a, a};
    CHECK((superimpose(same) - a).cwiseAbs().maxCoeff() < 1e-15);

    const std::vector<RVector> three{a, b, c};
    RVector mean = (a + b + c) / 3.0;
    mean = (mean.array() - mean.minCoeff()) / (mean.maxCoeff() - mean.minCoeff());
    CHECK((superimpose(three) - mean).cwiseAbs().maxCoeff() < 1e-14);

    const std::vector<double> w{0.5, 0.25, 0.25};
    RVector wm = 0.5 * a + 0.25 * b + 0.25 * c;
    wm = (wm.array() - wm.minCoeff()) / (wm.maxCoeff() - wm.minCoeff());
    CHECK((superimpose(three, w) - wm).cwiseAbs().maxCoeff() < 1e-14);

    CHECK_THROWS_AS(superimpose(std::span<const RVector>{}), Error);
    const std::vector<double> bad{0.5, 0.6, 0.1};
    CHECK_THROWS_AS(superimpose(three, bad), Error);
}

TEST_CASE("binarize thresholds with ties mapped to one")
{
    RVector p(3);
    p << 0.2, 0.5, 0.8;
    CHECK(binarize(p, 0.5) == std::vector<std::uint8_t>{0, 1, 1});
    CHECK(binarize(p, 0.0) == std::vector<std::uint8_t>{1, 1, 1});
    CHECK(binarize(p, std::nextafter(0.8, 1.0)) == std::vector<std::uint8_t>{0, 0, 0});
}

TEST_CASE("binarize is idempotent")
{
    const auto g = build_array(ArraySpec{});
    const auto p = interference_pattern(object_wave(g, {300, 0, -900}, f_carrier, WavefrontModel::usw),
                                        reference_wave(g, 9, f_carrier, n_s));
    for (double t : {0.0, 0.3, 0.5, 0.9, 1.0})
    {
        const auto once = binarize(p, t);
        RVector as_real(static_cast<Eigen::Index>(once.size()));
        for (std::size_t i = 0; i < once.size(); ++i)
            as_real[static_cast<Eigen::Index>(i)] = once[i];
        CHECK(binarize(as_real, t > 0.0 ? t : 0.5) == once);
    }
}

TEST_CASE("beamforming matrix composition")
{
    const auto g = build_array(ArraySpec{});
    const auto n = static_cast<Eigen::Index>(g.element_count());

    const auto zeros = make_hologram(RVector::Zero(n), 0.5, 1);
    CHECK(zeros.active_count() == 0);
    CHECK(beamforming_matrix(zeros, g, f_carrier, n_s, HologramMode::binary).entries.cwiseAbs().maxCoeff() == 0.0);

    const auto ones = make_hologram(RVector::Ones(n), 0.5, 1);
    for (auto mode : {HologramMode::binary, HologramMode::continuous})
    {
        const auto m = beamforming_matrix(ones, g, f_carrier, n_s, mode);
        CHECK((m.entries.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-14);
        for (std::size_t f = 0; f < g.feed_count(); f += 7)
            CHECK((m.entries.col(static_cast<Eigen::Index>(f)) - reference_wave(g, f, f_carrier, n_s))
                      .cwiseAbs()
                      .maxCoeff() < 1e-15);
    }

    HologramRequest req;
    UserPlacement up;
    const auto users = place_users(up, {0, 0, 0}, 7);
    req.targets = users.positions;
    req.models.assign(users.size(), WavefrontModel::upw);
    const auto h = synthesize_hologram(g, req);
    CHECK(h.target_count == 3);
    CHECK(h.continuous_pattern.minCoeff() >= 0.0);
    CHECK(h.continuous_pattern.maxCoeff() <= 1.0);
    for (Eigen::Index m = 0; m < n; ++m)
        CHECK((h.binary_pattern[static_cast<std::size_t>(m)] == 1) == (h.continuous_pattern[m] >= h.threshold));
    for (auto mode : {HologramMode::binary, HologramMode::continuous})
    {
        const auto bm = beamforming_matrix(h, g, f_carrier, n_s, mode);
        double worst = 0.0;
        for (std::size_t f = 0; f < g.feed_count(); ++f)
        {
            const auto ref = reference_wave(g, f, f_carrier, n_s);
            for (Eigen::Index m = 0; m < n; ++m)
            {
                const double a = mode == HologramMode::binary ? h.binary_pattern[static_cast<std::size_t>(m)]
                                                              : h.continuous_pattern[m];
                worst = std::max(worst, std::abs(bm.entries(m, static_cast<Eigen::Index>(f)) - a * ref[m]));
            }
        }
        CHECK(worst < 1e-15);
        if (mode == HologramMode::binary)
        {
            const RVector mags = bm.entries.cwiseAbs().reshaped();
            for (double v : mags)
                CHECK((v == 0.0 || std::abs(v - 1.0) < 1e-14));
        }
    }

    const auto small = build_array(1, 2, 2, 1e-3, 1e-3, 1, TilingAxis::x, {});
    CHECK_THROWS_AS(beamforming_matrix(h, small, f_carrier, n_s, HologramMode::binary), Error);
}

TEST_CASE("single-user beams peak at the target")
{
    const auto g = build_array(ArraySpec{});
    const auto grid = angle_grid(-90.0, 90.0, 0.25);
    for (double az : {20.0, -45.0, -17.5, 5.0, 33.0, 50.0})
        CHECK(std::abs(beam_peak(g, az, HologramMode::binary, grid) - az) <= 1.0);
}

TEST_CASE("rotating target and grid together rotates the peak")
{
    // Single long panel: a uniform linear tiling.
    const auto g = build_array(1, 96, 4, 2.64e-3, 5.65e-3, 8, TilingAxis::x, {});
    const auto base = angle_grid(-60.0, 60.0, 0.25);
    const double p0 = beam_peak(g, 10.0, HologramMode::continuous, base);
    for (double delta : {-15.0, 7.5, 12.0})
    {
        std::vector<double> shifted;
        for (double a : base)
            shifted.push_back(a + delta);
        const double p1 = beam_peak(g, 10.0 + delta, HologramMode::continuous, shifted);
        CHECK(std::abs((p1 - p0) - delta) <= 0.25 + 1e-12);
    }
}

TEST_CASE("boresight pattern of a mirror-symmetric array is symmetric")
{
    const auto g = build_array(ArraySpec{});
    const auto grid = angle_grid(-80.0, 80.0, 0.5);
    const auto h = synthesize_hologram(g, single_target(0.0));
    const auto m = beamforming_matrix(h, g, f_carrier, n_s, HologramMode::continuous);
    const auto pat = radiation_pattern(m, CVector::Ones(static_cast<Eigen::Index>(g.feed_count())), g, f_carrier, grid);
    CHECK(pat.gain_db[pat.argmax()] == doctest::Approx(0.0));
    CHECK(std::abs(pat.angles_deg[pat.argmax()]) <= 0.5);
    const std::size_t n = grid.size();
    for (std::size_t i = 0; i < n / 2; ++i)
        if (pat.gain_db[i] > -60.0)
            CHECK(std::abs(pat.gain_db[i] - pat.gain_db[n - 1 - i]) < 1e-9);
}

TEST_CASE("radiation pattern edge cases")
{
    const auto g = build_array(1, 4, 2, 2.64e-3, 5.65e-3, 2, TilingAxis::x, {});
    const auto zeros = beamforming_matrix(make_hologram(RVector::Zero(8), 0.5, 1), g, f_carrier, n_s,
                                          HologramMode::binary);
    const auto grid = angle_grid(-10.0, 10.0, 5.0);
    const auto pat = radiation_pattern(zeros, CVector::Ones(2), g, f_carrier, grid);
    CHECK(pat.degenerate);
    for (double v : pat.gain_db)
        CHECK(std::isinf(v));
    CHECK_THROWS_AS(radiation_pattern(zeros, CVector::Ones(2), g, f_carrier, std::span<const double>{}), Error);
    CHECK_THROWS_AS(radiation_pattern(zeros, CVector::Ones(3), g, f_carrier, grid), Error);
    CHECK(angle_grid(-90.0, 90.0, 0.25).size() == 721);
}
