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

#include "rhsim/energy.hpp"
#include "rhsim/error.hpp"
#include "rhsim/link.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <functional>
#include <limits>
#include <ostream>
#include <thread>

namespace rhsim
{

double total_power(const PowerModel &model)
{
    return model.tx_power / model.pa_efficiency + model.circuit_power +
           model.per_element_power * static_cast<double>(model.active_element_count);
}

TaskEnergy task_energy_ee(const RVector &rates, const RVector &data_sizes, double power_w)
{
    if (rates.size() != data_sizes.size())
        throw Error(ErrorCode::shape_mismatch, "task_energy_ee: rates and data sizes differ in length");
    if (!(power_w > 0.0))
        throw Error(ErrorCode::invalid_input, "task_energy_ee: power must be > 0");
    TaskEnergy out;
    out.durations.resize(rates.size());
    out.energies.resize(rates.size());
    for (Eigen::Index k = 0; k < rates.size(); ++k)
    {
        if (data_sizes[k] > 0.0 && !(rates[k] > 0.0))
            throw Error(ErrorCode::infeasible_task,
                        fmt::format("user {} has {} bits to send but rate {}", k, data_sizes[k], rates[k]));
        out.durations[k] = data_sizes[k] > 0.0 ? data_sizes[k] / rates[k] : 0.0;
        out.energies[k] = power_w * out.durations[k];
    }
    const double energy = out.energies.sum();
    out.ee = energy > 0.0 ? data_sizes.sum() / energy : 0.0;
    return out;
}

// ---------------------------------------------------------------------------------------------
// EeProblem

void EeProblem::validate() const
{
    const auto k = data_sizes.size();
    auto fail = [](const std::string &what) { throw Error(ErrorCode::invalid_input, "EeProblem: " + what); };
    if (k < 1)
        fail("needs at least one user");
    if (cross_gains.rows() != k || cross_gains.cols() != k)
        fail(fmt::format("cross_gains is {}x{}, expected {}x{}", cross_gains.rows(), cross_gains.cols(), k, k));
    if (min_rates.size() != k)
        fail("min_rates length differs from data_sizes");
    if ((cross_gains.array() < 0.0).any() || !cross_gains.allFinite())
        fail("cross_gains must be finite and >= 0");
    if (!(tx_power > 0.0) || !(noise > 0.0) || !(bandwidth > 0.0))
        fail("tx_power, noise and bandwidth must be > 0");
    if ((data_sizes.array() <= 0.0).any())
        fail("data sizes must be > 0");
    if ((min_rates.array() < 0.0).any())
        fail("min rates must be >= 0");
    if (!(pa_efficiency > 0.0 && pa_efficiency <= 1.0))
        fail("pa_efficiency must lie in (0, 1]");
    if (!(circuit_power >= 0.0) || !(static_power >= 0.0))
        fail("circuit and static power must be >= 0");
}

RVector EeProblem::rates(const RVector &shares) const
{
    return rhsim::rates(sinr_with_shares(cross_gains, shares, tx_power, noise), bandwidth);
}

double EeProblem::throughput(const RVector &shares) const
{
    const RVector r = rates(shares);
    double airtime = 0.0;
    for (Eigen::Index k = 0; k < r.size(); ++k)
    {
        if (!(r[k] > 0.0))
            return 0.0;
        airtime += data_sizes[k] / r[k];
    }
    return data_sizes.sum() / airtime;
}

double EeProblem::power(const RVector &shares) const
{
    return tx_power * shares.sum() / pa_efficiency + circuit_power + static_power;
}

bool EeProblem::feasible(const RVector &shares) const
{
    if ((shares.array() < 0.0).any() || shares.sum() > 1.0 + 1e-12)
        return false;
    const RVector r = rates(shares);
    for (Eigen::Index k = 0; k < r.size(); ++k)
        if (r[k] < min_rates[k] * (1.0 - 1e-12))
            return false;
    return true;
}

// ---------------------------------------------------------------------------------------------
// Dinkelbach

namespace
{

constexpr double golden = 0.6180339887498949;

// Maximises f on [a, b] (assumed unimodal) by golden-section search.
double golden_section(const std::function<double(double)> &f, double a, double b)
{
    double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < 200 && (b - a) > 1e-15 * (1.0 + std::abs(a) + std::abs(b)); ++i)
    {
        if (f1 < f2)
        {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + golden * (b - a);
            f2 = f(x2);
        }
        else
        {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - golden * (b - a);
            f1 = f(x1);
        }
    }
    return f1 > f2 ? x1 : x2;
}

class InnerSolver
{
public:
    InnerSolver(const EeProblem &problem, double lambda) : problem_(problem), lambda_(lambda) {}

    double objective(const RVector &s) const { return problem_.throughput(s) - lambda_ * problem_.power(s); }

    // Projected coordinate ascent over the share simplex (including the unused remainder).
    void maximise(RVector &s, int max_sweeps) const
    {
        const Eigen::Index k = s.size();
        double value = objective(s);
        for (int sweep = 0; sweep < max_sweeps; ++sweep)
        {
            const double before = value;
            for (Eigen::Index i = 0; i < k; ++i)
                value = line_search(s, i, -1, value);
            for (Eigen::Index i = 0; i < k; ++i)
                for (Eigen::Index j = i + 1; j < k; ++j)
                    value = line_search(s, i, j, value);
            if (value - before <= 1e-15 * (std::abs(value) + 1.0))
                break;
        }
    }

private:
    // Moves s_i by t; with j >= 0 the same amount is taken from s_j, otherwise from the unused remainder.
    double line_search(RVector &s, Eigen::Index i, Eigen::Index j, double current) const
    {
        const double lo_box = -s[i];
        const double hi_box = j >= 0 ? s[j] : 1.0 - s.sum();
        if (!(hi_box - lo_box > 0.0))
            return current;

        auto moved = [&](double t) {
            RVector x = s;
            x[i] += t;
            if (j >= 0)
                x[j] -= t;
            x = x.cwiseMax(0.0);
            return x;
        };
        auto feasible = [&](double t) { return problem_.feasible(moved(t)); };
        const double hi = feasible_edge(feasible, std::max(hi_box, 0.0));
        const double lo = feasible_edge(feasible, std::min(lo_box, 0.0));
        if (!(hi - lo > 0.0))
            return current;

        auto f = [&](double t) { return objective(moved(t)); };
        double best_t = 0.0, best = current;
        for (double t : {golden_section(f, lo, hi), lo, hi})
        {
            const double v = f(t);
            if (v > best)
            {
                best = v;
                best_t = t;
            }
        }
        if (best_t != 0.0)
            s = moved(best_t);
        return best;
    }

    // Feasibility along a line is an interval containing 0; bisect toward `edge` for its boundary.
    static double feasible_edge(const std::function<bool(double)> &feasible, double edge)
    {
        if (edge == 0.0 || feasible(edge))
            return edge;
        double ok = 0.0, bad = edge;
        for (int i = 0; i < 200 && std::abs(bad - ok) > 1e-16; ++i)
        {
            const double mid = 0.5 * (ok + bad);
            (feasible(mid) ? ok : bad) = mid;
        }
        return ok;
    }

    const EeProblem &problem_;
    double lambda_;
};

} // namespace

DinkelbachResult optimize_ee_dinkelbach(const EeProblem &problem, const DinkelbachOptions &options)
{
    problem.validate();
    const auto k = static_cast<Eigen::Index>(problem.users());
    RVector x = RVector::Constant(k, 1.0 / static_cast<double>(k));
    if (!problem.feasible(x))
    {
        const RVector r = problem.rates(x);
        for (Eigen::Index u = 0; u < k; ++u)
            if (r[u] < problem.min_rates[u])
                throw Error(ErrorCode::infeasible,
                            fmt::format("uniform allocation gives user {} {:.6g} bit/s, below the {:.6g} bit/s minimum",
                                        u, r[u], problem.min_rates[u]));
        throw Error(ErrorCode::infeasible, "uniform allocation is infeasible");
    }

    DinkelbachResult result;
    double lambda = problem.ee(x);
    result.lambdas.push_back(lambda);
    for (int it = 1; it <= options.max_iterations; ++it)
    {
        InnerSolver inner(problem, lambda);
        inner.maximise(x, options.max_sweeps);
        // Relative stopping rule: N - lambda D measured against lambda D, so it is unit-free.
        const double denominator = problem.power(x);
        const double residual = problem.throughput(x) - lambda * denominator;
        const double scale = std::max(lambda * denominator, std::numeric_limits<double>::min());
        result.iterations = it;
        result.residual = std::abs(residual) / scale;
        if (residual <= options.tolerance * scale)
        {
            result.converged = true;
            break;
        }
        lambda = problem.ee(x);
        result.lambdas.push_back(lambda);
    }
    result.shares = x;
    result.ee = problem.ee(x);
    return result;
}

// ---------------------------------------------------------------------------------------------
// Grid oracle

GridOracleResult grid_oracle(const EeProblem &problem, int resolution)
{
    problem.validate();
    if (resolution < 2)
        throw Error(ErrorCode::invalid_input, "grid_oracle: resolution must be >= 2");
    const auto k = static_cast<Eigen::Index>(problem.users());
    const int steps = resolution - 1;

    GridOracleResult best;
    best.ee = -std::numeric_limits<double>::infinity();
    std::vector<int> idx(static_cast<std::size_t>(k), 0);
    RVector s(k);

    // Odometer over index vectors with sum(idx) <= steps.
    std::function<void(Eigen::Index, int)> visit = [&](Eigen::Index dim, int remaining) {
        if (dim == k)
        {
            for (Eigen::Index i = 0; i < k; ++i)
                s[i] = static_cast<double>(idx[static_cast<std::size_t>(i)]) / steps;
            ++best.evaluated;
            if (!problem.feasible(s))
                return;
            const double p = problem.power(s);
            const double ee = p > 0.0 ? problem.throughput(s) / p : 0.0;
            if (ee > best.ee)
            {
                best.ee = ee;
                best.shares = s;
            }
            return;
        }
        for (int i = 0; i <= remaining; ++i)
        {
            idx[static_cast<std::size_t>(dim)] = i;
            visit(dim + 1, remaining - i);
        }
    };
    visit(0, steps);
    if (best.shares.size() == 0)
        best.ee = 0.0;
    return best;
}

// ---------------------------------------------------------------------------------------------
// Sweep

std::size_t EESweepReport::failed_points() const
{
    return static_cast<std::size_t>(std::count_if(errors.begin(), errors.end(), [](const auto &e) { return !e.empty(); }));
}

namespace
{

struct SweepRow
{
    double ee_rhs = std::numeric_limits<double>::quiet_NaN();
    double ee_baseline = std::numeric_limits<double>::quiet_NaN();
    double ee_rate_power = std::numeric_limits<double>::quiet_NaN();
    RVector rates;
    double energy = std::numeric_limits<double>::quiet_NaN();
    int iterations = 0;
    bool converged = false;
    std::string error;
};

SweepRow sweep_point(const SweepSetup &setup, double circuit_power, const DinkelbachOptions &options)
{
    SweepRow row;
    try
    {
        EeProblem problem = setup.rhs;
        problem.circuit_power = circuit_power;
        const auto opt = optimize_ee_dinkelbach(problem, options);
        row.iterations = opt.iterations;
        row.converged = opt.converged;
        row.rates = problem.rates(opt.shares);
        const double power = problem.power(opt.shares);
        const auto task = task_energy_ee(row.rates, problem.data_sizes, power);
        row.ee_rhs = task.ee;
        row.energy = task.energies.sum();
        row.ee_rate_power = row.rates.sum() / power;

        PowerModel baseline;
        baseline.tx_power = setup.baseline_tx_power;
        baseline.pa_efficiency = problem.pa_efficiency;
        baseline.circuit_power = circuit_power;
        row.ee_baseline = task_energy_ee(setup.baseline_rates, problem.data_sizes, total_power(baseline)).ee;
    }
    catch (const Error &e)
    {
        row.error = fmt::format("{}: {}", to_string(e.code()), e.what());
    }
    return row;
}

} // namespace

EESweepReport ee_sweep(const SweepSetup &setup, const std::vector<double> &circuit_powers,
                       const DinkelbachOptions &options, int threads)
{
    if (circuit_powers.empty())
        throw Error(ErrorCode::invalid_input, "ee_sweep: empty sweep list");
    for (std::size_t i = 0; i < circuit_powers.size(); ++i)
    {
        if (!(circuit_powers[i] >= 0.0) || !std::isfinite(circuit_powers[i]))
            throw Error(ErrorCode::invalid_input, "ee_sweep: circuit powers must be finite and >= 0");
        if (i > 0 && !(circuit_powers[i] > circuit_powers[i - 1]))
            throw Error(ErrorCode::invalid_input, "ee_sweep: sweep list must be strictly increasing");
    }
    if (setup.baseline_rates.size() != setup.rhs.data_sizes.size())
        throw Error(ErrorCode::shape_mismatch, "ee_sweep: baseline rates do not match the user count");

    std::vector<SweepRow> rows(circuit_powers.size());
    const auto workers = static_cast<std::size_t>(std::clamp<int>(threads, 1, static_cast<int>(rows.size())));
    if (workers == 1)
    {
        for (std::size_t i = 0; i < rows.size(); ++i)
            rows[i] = sweep_point(setup, circuit_powers[i], options);
    }
    else
    {
        std::vector<std::thread> pool;
        for (std::size_t w = 0; w < workers; ++w)
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < rows.size(); i += workers)
                    rows[i] = sweep_point(setup, circuit_powers[i], options);
            });
        for (auto &t : pool)
            t.join();
    }

    EESweepReport report;
    report.sweep_values = circuit_powers;
    for (auto &row : rows)
    {
        report.ee_rhs.push_back(row.ee_rhs);
        report.ee_baseline.push_back(row.ee_baseline);
        report.ee_rhs_rate_power.push_back(row.ee_rate_power);
        report.per_user_rates.push_back(row.rates.size() ? row.rates
                                                         : RVector::Constant(setup.rhs.data_sizes.size(), NAN));
        report.energies.push_back(row.energy);
        report.iterations.push_back(row.iterations);
        report.converged.push_back(row.converged);
        report.errors.push_back(std::move(row.error));
    }
    return report;
}

namespace
{
std::string csv_quote(const std::string &s)
{
    std::string out = "\"";
    for (char c : s)
    {
        if (c == '"')
            out += '"';
        out += c;
    }
    return out + "\"";
}
} // namespace

void write_sweep_csv(std::ostream &out, const EESweepReport &report)
{
    const Eigen::Index users = report.per_user_rates.empty() ? 0 : report.per_user_rates.front().size();
    out << "circuit_power_W,ee_rhs_bpj,ee_baseline_bpj";
    for (Eigen::Index k = 0; k < users; ++k)
        out << ",rate_user_" << (k + 1);
    out << ",energy_J,iterations,converged,ee_rhs_rate_power_bpj,error\n";
    for (std::size_t i = 0; i < report.sweep_values.size(); ++i)
    {
        out << fmt::format("{},{},{}", report.sweep_values[i], report.ee_rhs[i], report.ee_baseline[i]);
        for (Eigen::Index k = 0; k < users; ++k)
            out << fmt::format(",{}", report.per_user_rates[i][k]);
        out << fmt::format(",{},{},{},{},{}\n", report.energies[i], report.iterations[i],
                           report.converged[i] ? 1 : 0, report.ee_rhs_rate_power[i],
                           report.errors[i].empty() ? std::string{} : csv_quote(report.errors[i]));
    }
}

} // namespace rhsim
