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

#include "rhsim/link.hpp"
#include "rhsim/error.hpp"

#include <cmath>
#include <fmt/format.h>

namespace rhsim
{

std::string_view to_string(PrecoderKind kind)
{
    return kind == PrecoderKind::zero_forcing ? "zero-forcing" : "matched-filter";
}

CMatrix effective_channel(const CMatrix &channel, const CMatrix &beamforming)
{
    if (channel.cols() != beamforming.rows())
        throw Error(ErrorCode::shape_mismatch, fmt::format("effective_channel: H is {}x{}, M is {}x{}", channel.rows(),
                                                           channel.cols(), beamforming.rows(), beamforming.cols()));
    return channel * beamforming;
}

CMatrix effective_channel(const ChannelMatrix &channel, const BeamformingMatrix &beamforming)
{
    return effective_channel(channel.gains, beamforming.entries);
}

namespace
{

std::string most_correlated_pair(const CMatrix &g)
{
    Eigen::Index bi = 0, bj = g.rows() > 1 ? 1 : 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        for (Eigen::Index j = i + 1; j < g.rows(); ++j)
        {
            const double ni = g.row(i).norm(), nj = g.row(j).norm();
            const double c = ni > 0.0 && nj > 0.0 ? std::abs(g.row(i).dot(g.row(j))) / (ni * nj) : 1.0;
            if (c > best)
            {
                best = c;
                bi = i;
                bj = j;
            }
        }
    return fmt::format("users {} and {} (correlation {:.6f})", bi, bj, best);
}

} // namespace

CMatrix precoder(const CMatrix &g, PrecoderKind kind, double condition_cap)
{
    CMatrix v;
    if (kind == PrecoderKind::matched_filter)
    {
        v = g.adjoint();
    }
    else
    {
        const CMatrix gram = g * g.adjoint();
        const Eigen::VectorXd sv = Eigen::JacobiSVD<CMatrix>(gram).singularValues();
        const double smax = sv.size() ? sv.maxCoeff() : 0.0;
        const double smin = sv.size() ? sv.minCoeff() : 0.0;
        if (!(smin > 0.0) || smax / smin > condition_cap)
            throw Error(ErrorCode::rank_deficiency,
                        fmt::format("zero-forcing Gram matrix is ill-conditioned (cond {:.3e} > cap {:.3e}); most "
                                    "correlated pair: {}",
                                    smin > 0.0 ? smax / smin : INFINITY, condition_cap, most_correlated_pair(g)));
        v = gram.ldlt().solve(g).adjoint();
    }
    const double n = v.norm();
    if (n > 0.0)
        v /= n;
    return v;
}

RVector sinr(const CMatrix &g, const CMatrix &v, double tx_power_w, double noise_w)
{
    if (g.cols() != v.rows() || g.rows() != v.cols())
        throw Error(ErrorCode::shape_mismatch, "sinr: G and V shapes do not agree");
    const Eigen::MatrixXd p = (g * v).cwiseAbs2();
    RVector out(g.rows());
    for (Eigen::Index k = 0; k < g.rows(); ++k)
    {
        const double signal = tx_power_w * p(k, k);
        const double interference = tx_power_w * (p.row(k).sum() - p(k, k));
        out[k] = signal > 0.0 ? signal / (interference + noise_w) : 0.0;
    }
    return out;
}

RVector rates(const RVector &s, double bandwidth_hz)
{
    RVector r(s.size());
    for (Eigen::Index k = 0; k < s.size(); ++k)
    {
        if (!(s[k] >= 0.0))
            throw Error(ErrorCode::invalid_input, fmt::format("rates: negative SINR for user {}", k));
        r[k] = bandwidth_hz * std::log2(1.0 + s[k]);
    }
    return r;
}

LinkState evaluate_link(const CMatrix &g, PrecoderKind kind, double tx_power_w, double noise_w, double bandwidth_hz,
                        double condition_cap)
{
    LinkState s;
    s.effective_channel = g;
    s.precoder = precoder(g, kind, condition_cap);
    s.per_user_sinr = sinr(g, s.precoder, tx_power_w, noise_w);
    s.per_user_rate = rates(s.per_user_sinr, bandwidth_hz);
    return s;
}

CVector single_antenna_channel(const Vec3 &platform, const std::vector<Vec3> &points, double frequency_hz)
{
    const double lambda = wavelength(frequency_hz);
    CVector h(static_cast<Eigen::Index>(points.size()));
    for (std::size_t k = 0; k < points.size(); ++k)
    {
        const double d = distance(platform, points[k]);
        if (!(d > 0.0))
            throw Error(ErrorCode::singular_geometry, "user coincides with the platform antenna");
        h[static_cast<Eigen::Index>(k)] = std::polar(lambda / (4.0 * pi * d), -2.0 * pi * d / lambda);
    }
    return h;
}

RVector baseline_uav_only(const CVector &channel, double tx_power_w, double noise_w, double bandwidth_hz)
{
    if (channel.size() < 1)
        throw Error(ErrorCode::invalid_input, "baseline_uav_only: no users");
    const double share = bandwidth_hz / static_cast<double>(channel.size());
    RVector r(channel.size());
    for (Eigen::Index k = 0; k < channel.size(); ++k)
        r[k] = share * std::log2(1.0 + tx_power_w * std::norm(channel[k]) / noise_w);
    return r;
}

Eigen::MatrixXd cross_gains(const CMatrix &g, const CMatrix &v)
{
    if (g.cols() != v.rows())
        throw Error(ErrorCode::shape_mismatch, "cross_gains: G and V shapes do not agree");
    CMatrix unit = v;
    for (Eigen::Index j = 0; j < unit.cols(); ++j)
    {
        const double n = unit.col(j).norm();
        if (n > 0.0)
            unit.col(j) /= n;
    }
    return (g * unit).cwiseAbs2();
}

RVector sinr_with_shares(const Eigen::MatrixXd &gamma, const RVector &shares, double tx_power_w, double noise_w)
{
    if (gamma.rows() != shares.size() || gamma.cols() != shares.size())
        throw Error(ErrorCode::shape_mismatch, "sinr_with_shares: size mismatch");
    RVector out(shares.size());
    for (Eigen::Index k = 0; k < shares.size(); ++k)
    {
        const double signal = tx_power_w * shares[k] * gamma(k, k);
        double interference = 0.0;
        for (Eigen::Index j = 0; j < shares.size(); ++j)
            if (j != k)
                interference += shares[j] * gamma(k, j);
        out[k] = signal > 0.0 ? signal / (tx_power_w * interference + noise_w) : 0.0;
    }
    return out;
}

} // namespace rhsim
