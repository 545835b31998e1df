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

#ifndef RHSIM_ENERGY_HPP
#define RHSIM_ENERGY_HPP

#include "rhsim/types.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace rhsim
{

struct PowerModel
{
    double tx_power = 0.0;        // W, radiated
    double pa_efficiency = 1.0;   // (0, 1]
    double circuit_power = 0.0;   // W
    double per_element_power = 0.0; // W per active element
    std::size_t active_element_count = 0;
};

// tx / eta + circuit + per_element * active
double total_power(const PowerModel &model);

struct TaskEnergy
{
    RVector durations; // s
    RVector energies;  // J
    double ee = 0.0;   // bit/J
};

// t_k = D_k / R_k, E_k = power t_k, EE = sum D / sum E. Throws Error(infeasible_task) naming the first user
// with data but no rate.
TaskEnergy task_energy_ee(const RVector &rates, const RVector &data_sizes, double power_w);

// Power-share allocation problem. Shares s_k >= 0 with sum s_k <= 1 (the remainder is left unused);
// user k's unit beam carries s_k of the total transmit power.
struct EeProblem
{
    Eigen::MatrixXd cross_gains; // K x K, see link.hpp
    double tx_power = 0.0;       // W, full budget
    double noise = 0.0;          // W
    double bandwidth = 0.0;      // Hz
    RVector data_sizes;          // bits
    RVector min_rates;           // bit/s
    double pa_efficiency = 1.0;
    double circuit_power = 0.0;  // W
    double static_power = 0.0;   // W, e.g. per-element control power

    std::size_t users() const { return static_cast<std::size_t>(data_sizes.size()); }

    RVector rates(const RVector &shares) const;
    // Aggregate task throughput sum D / sum (D_k / R_k); zero if any loaded user has no rate.
    double throughput(const RVector &shares) const;
    double power(const RVector &shares) const;
    double ee(const RVector &shares) const { return throughput(shares) / power(shares); }
    bool feasible(const RVector &shares) const;

    void validate() const;
};

struct DinkelbachOptions
{
    int max_iterations = 100;
    double tolerance = 1e-9; // stop once N - lambda D <= tolerance * lambda D
    int max_sweeps = 200;    // coordinate-ascent passes per inner solve
};

struct DinkelbachResult
{
    RVector shares;
    double ee = 0.0;
    double residual = 0.0; // |N - lambda D| / (lambda D) at the last inner solve
    int iterations = 0;
    bool converged = false;
    std::vector<double> lambdas;
};

// Throws Error(infeasible) when the uniform allocation misses a minimum rate. Hitting max_iterations
// is reported through `converged == false` with the best allocation found.
DinkelbachResult optimize_ee_dinkelbach(const EeProblem &problem, const DinkelbachOptions &options = {});

struct GridOracleResult
{
    RVector shares;
    double ee = 0.0;
    std::size_t evaluated = 0;
};

// Exhaustive search over shares i / (resolution - 1) with sum <= 1.
GridOracleResult grid_oracle(const EeProblem &problem, int resolution);

struct SweepSetup
{
    EeProblem rhs;               // circuit_power is overwritten per sweep point
    RVector baseline_rates;      // single-antenna TDMA rates
    double baseline_tx_power = 0.0; // W
};

struct EESweepReport
{
    std::vector<double> sweep_values; // circuit power, W
    std::vector<double> ee_rhs;       // task bit/J
    std::vector<double> ee_baseline;  // task bit/J
    std::vector<double> ee_rhs_rate_power; // sum rate / power
    std::vector<RVector> per_user_rates;
    std::vector<double> energies; // J, RHS total task energy
    std::vector<int> iterations;
    std::vector<bool> converged;
    std::vector<std::string> errors; // empty when the point succeeded
    std::string config_digest;

    std::size_t failed_points() const;
};

// Sweep points run on up to `threads` workers; rows stay in sweep order. Per-point failures are recorded
// in `errors` rather than thrown.
EESweepReport ee_sweep(const SweepSetup &setup, const std::vector<double> &circuit_powers,
                       const DinkelbachOptions &options = {}, int threads = 1);

void write_sweep_csv(std::ostream &out, const EESweepReport &report);

} // namespace rhsim

#endif
