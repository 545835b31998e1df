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

#ifndef RHSIM_LINK_HPP
#define RHSIM_LINK_HPP

#include "rhsim/channel.hpp"
#include "rhsim/holography.hpp"
#include "rhsim/types.hpp"

#include <string_view>
#include <vector>

namespace rhsim
{

enum class PrecoderKind
{
    matched_filter,
    zero_forcing
};

std::string_view to_string(PrecoderKind kind);

inline constexpr double default_condition_cap = 1e12;

struct LinkState
{
    CMatrix effective_channel; // users x feeds
    CMatrix precoder;          // feeds x users, unit Frobenius norm
    RVector per_user_sinr;
    RVector per_user_rate; // bit/s
};

// G = H M
CMatrix effective_channel(const CMatrix &channel, const CMatrix &beamforming);
CMatrix effective_channel(const ChannelMatrix &channel, const BeamformingMatrix &beamforming);

// MF: V = G^H; ZF: V = G^H (G G^H)^-1; both scaled to unit total power. ZF throws Error(rank_deficiency)
// naming the most correlated user pair when cond(G G^H) exceeds `condition_cap`.
CMatrix precoder(const CMatrix &effective_channel, PrecoderKind kind, double condition_cap = default_condition_cap);

// SINR_k = P |g_k v_k|^2 / (P sum_{j != k} |g_k v_j|^2 + noise)
RVector sinr(const CMatrix &effective_channel, const CMatrix &precoder, double tx_power_w, double noise_w);

RVector rates(const RVector &sinr, double bandwidth_hz);

LinkState evaluate_link(const CMatrix &effective_channel, PrecoderKind kind, double tx_power_w, double noise_w,
                        double bandwidth_hz, double condition_cap = default_condition_cap);

// Channel from a single isotropic antenna at `platform` to each point (free-space amplitude and phase).
CVector single_antenna_channel(const Vec3 &platform, const std::vector<Vec3> &points, double frequency_hz);

// Equal-share TDMA from one isotropic antenna: R_k = B/K log2(1 + P |h_k|^2 / noise).
RVector baseline_uav_only(const CVector &channel, double tx_power_w, double noise_w, double bandwidth_hz);

// Gamma(k, j) = |g_k . v_j / |v_j||^2, the power user k receives from user j's unit-norm beam.
Eigen::MatrixXd cross_gains(const CMatrix &effective_channel, const CMatrix &precoder);

// Per-user SINR when user j's unit beam carries shares[j] of the total transmit power.
RVector sinr_with_shares(const Eigen::MatrixXd &cross_gains, const RVector &shares, double tx_power_w,
                         double noise_w);

} // namespace rhsim

#endif
