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
#include "rhsim/geometry.hpp"

#include <doctest.h>
#include <sstream>

using namespace rhsim;

namespace
{

std::vector<oracle::P3> points(const std::vector<Vec3> &v)
{
    std::vector<oracle::P3> out;
    for (const auto &p : v)
        out.push_back({p.x, p.y, p.z});
    return out;
}

ErrorCode code_of(auto &&fn)
{
    try
    {
        fn();
    }
    catch (const Error &e)
    {
        return e.code();
    }
    FAIL("no rhsim::Error thrown");
    return ErrorCode::io;
}

} // namespace

TEST_CASE("reference array has 1536 elements and 32 feeds")
{
    const auto g = build_array(4, 48, 8, 2.64e-3, 5.65e-3, 8, TilingAxis::x, {0, 0, 1000});
    CHECK(g.element_count() == 1536);
    CHECK(g.feed_count() == 32);
    for (std::size_t f = 0; f < g.feed_count(); ++f)
        CHECK(g.feed_panel(f) == static_cast<int>(f / 8));
}

TEST_CASE("single element sits at the panel center")
{
    const Vec3 origin{};
    const auto g = build_array(1, 1, 1, 1e-3, 1e-3, 1, TilingAxis::x, origin);
    REQUIRE(g.element_count() == 1);
    CHECK(g.element_positions()[0].x == doctest::Approx(0.0));
    CHECK(g.element_positions()[0].y == doctest::Approx(0.0));
    CHECK(g.element_positions()[0].z == doctest::Approx(0.0));
    const auto a = aperture_of(g);
    CHECK(a.degenerate);
    CHECK(a.meters == 0.0);
}

TEST_CASE("panel x extent equals 47 element pitches")
{
    const auto g = build_array(ArraySpec{});
    const double span = g.element_positions()[g.element_at(0, 47, 0)].x - g.element_positions()[g.element_at(0, 0, 0)].x;
    CHECK(span == doctest::Approx(47 * 2.64e-3).epsilon(1e-12));
    CHECK(span == doctest::Approx(0.12408).epsilon(1e-12));
}

TEST_CASE("element indexing round-trips")
{
    const auto g = build_array(ArraySpec{});
    for (std::size_t m = 0; m < g.element_count(); m += 97)
    {
        const auto idx = g.element_index(m);
        CHECK(g.element_at(idx.panel, idx.ix, idx.iy) == m);
    }
}

TEST_CASE("aperture of simple layouts")
{
    const auto pair = build_array(1, 2, 1, 0.5, 0.5, 1, TilingAxis::x, {});
    CHECK(aperture_of(pair).meters == doctest::Approx(0.5).epsilon(1e-15));
    CHECK_FALSE(aperture_of(pair).degenerate);

    const auto square = build_array(1, 2, 2, 1.0, 1.0, 1, TilingAxis::x, {});
    CHECK(aperture_of(square).meters == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("aperture of the reference array matches exhaustive pair scan")
{
    const auto g = build_array(ArraySpec{});
    const double brute = oracle::max_pairwise(points(g.element_positions()));
    CHECK(aperture_of(g).meters == doctest::Approx(brute).epsilon(1e-14));
    CHECK(brute == doctest::Approx(0.505788671383613).epsilon(1e-12));
}

TEST_CASE("rayleigh distance examples")
{
    CHECK(rayleigh_distance(0.5, 28e9) == doctest::Approx(46.6989733277413).epsilon(1e-12));
    CHECK(rayleigh_distance(0.5, 26.2e9) == doctest::Approx(43.6968964709579).epsilon(1e-12));
    CHECK(rayleigh_distance(0.5, 26.2e9) == doctest::Approx(oracle::rayleigh(0.5, 26.2e9)).epsilon(1e-14));
    const double r1 = rayleigh_distance(0.3, 26.2e9), r2 = rayleigh_distance(0.6, 26.2e9);
    CHECK(r2 / r1 == doctest::Approx(4.0).epsilon(1e-14));
    CHECK(code_of([] { rayleigh_distance(0.0, 1e9); }) == ErrorCode::invalid_input);
}

TEST_CASE("rayleigh distance is monotone in aperture and frequency")
{
    double prev = 0.0;
    for (double d = 0.01; d < 2.0; d *= 1.3)
    {
        const double r = rayleigh_distance(d, 26.2e9);
        CHECK(r > prev);
        prev = r;
    }
    prev = 0.0;
    for (double f = 1e9; f < 1e11; f *= 1.5)
    {
        const double r = rayleigh_distance(0.5, f);
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("aperture is invariant under translation")
{
    const auto g = build_array(ArraySpec{});
    const double base = aperture_of(g).meters;
    for (const Vec3 d : {Vec3{12.5, -3.0, 1000.0}, Vec3{-1e3, 2e3, 0.25}, Vec3{0.001, 0.002, -0.003}})
        CHECK(aperture_of(g.translated(d)).meters == doctest::Approx(base).epsilon(1e-12));
}

TEST_CASE("configured spacing is recovered from positions")
{
    ArraySpec spec;
    spec.platform_position = {3.0, -2.0, 1000.0};
    const auto g = build_array(spec);
    const auto &el = g.element_positions();
    for (int p = 0; p < spec.panels; ++p)
        for (int iy = 0; iy < spec.elements_y; ++iy)
            for (int ix = 0; ix + 1 < spec.elements_x; ++ix)
                CHECK(std::abs(el[g.element_at(p, ix + 1, iy)].x - el[g.element_at(p, ix, iy)].x - spec.dx) < 1e-12);
    for (int ix = 0; ix < spec.elements_x; ++ix)
        for (int iy = 0; iy + 1 < spec.elements_y; ++iy)
            CHECK(std::abs(el[g.element_at(2, ix, iy + 1)].y - el[g.element_at(2, ix, iy)].y - spec.dy) < 1e-12);
    // Edge-to-edge tiling keeps the pitch across panel boundaries.
    CHECK(std::abs(el[g.element_at(1, 0, 0)].x - el[g.element_at(0, 47, 0)].x - spec.dx) < 1e-12);
}

TEST_CASE("invalid array dimensions are rejected")
{
    CHECK(code_of([] { build_array(0, 48, 8, 1e-3, 1e-3, 8, TilingAxis::x, {}); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { build_array(4, 48, 8, -1e-3, 1e-3, 8, TilingAxis::x, {}); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { build_array(4, 48, 8, 1e-3, 0.0, 8, TilingAxis::x, {}); }) == ErrorCode::invalid_config);
    CHECK(code_of([] { build_array(4, 48, 8, 1e-3, 1e-3, 0, TilingAxis::x, {}); }) == ErrorCode::invalid_config);
}

TEST_CASE("explicit panel offsets with overlapping elements are rejected")
{
    ArraySpec spec;
    spec.panels = 2;
    spec.panel_offsets = {{0, 0, 0}, {0, 0, 0}};
    CHECK(code_of([&] { build_array(spec); }) == ErrorCode::invalid_config);
}

TEST_CASE("users are placed within the azimuth range, deterministically")
{
    UserPlacement up;
    const Vec3 platform{0, 0, 1000};
    const auto a = place_users(up, platform, 7);
    const auto b = place_users(up, platform, 7);
    REQUIRE(a.size() == 3);
    for (std::size_t k = 0; k < a.size(); ++k)
    {
        CHECK(a.azimuths_deg[k] >= -50.0);
        CHECK(a.azimuths_deg[k] <= 50.0);
        CHECK(a.positions[k] == b.positions[k]);
        CHECK(a.azimuths_deg[k] == b.azimuths_deg[k]);
        CHECK(a.positions[k].z == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(a.data_sizes_bits[k] == 50e3);
    }
    const auto c = place_users(up, platform, 8);
    CHECK_FALSE(c.azimuths_deg == a.azimuths_deg);
}

TEST_CASE("degenerate azimuth range puts the user on boresight")
{
    UserPlacement up;
    up.count = 1;
    up.azimuth_min_deg = up.azimuth_max_deg = 0.0;
    const auto u = place_users(up, {0, 0, 1000}, 1);
    CHECK(u.positions[0].x == doctest::Approx(0.0));
    CHECK(u.positions[0].y == doctest::Approx(0.0));
    CHECK(u.positions[0].z == doctest::Approx(0.0));
    CHECK(distance(u.positions[0], {0, 0, 1000}) == doctest::Approx(1000.0));
}

TEST_CASE("user placement errors")
{
    UserPlacement up;
    up.count = 0;
    CHECK(code_of([&] { place_users(up, {}, 1); }) == ErrorCode::invalid_config);
    up.count = 2;
    up.azimuth_min_deg = 10;
    up.azimuth_max_deg = -10;
    CHECK(code_of([&] { place_users(up, {}, 1); }) == ErrorCode::invalid_config);
}

TEST_CASE("angles round-trip through direction vectors")
{
    for (double az : {-50.0, -12.5, 0.0, 20.0, 49.0})
        for (double el : {-10.0, 0.0, 30.0})
        {
            const auto a = angles_of(direction_from_angles(az, el));
            CHECK(a.azimuth_deg == doctest::Approx(az).epsilon(1e-12));
            CHECK(a.elevation_deg == doctest::Approx(el).epsilon(1e-12));
        }
}

TEST_CASE("geometry csv lists every element and feed")
{
    std::ostringstream os;
    write_geometry_csv(os, build_array(ArraySpec{}));
    const auto text = os.str();
    CHECK(text.rfind("kind,panel,ix,iy,x,y,z\n", 0) == 0);
    CHECK(std::count(text.begin(), text.end(), '\n') == 1 + 1536 + 32);
}
