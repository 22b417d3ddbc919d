// SPDX-License-Identifier: Apache-2.0
//
// isac-game: Stackelberg defense simulator for RIS-assisted ISAC links
// Copyright (C) 2026 The isac-game Authors
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


#pragma once

#include "isac/game.hpp"
#include "isac/scenario.hpp"
#include "isac/solvers.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace isac
{
    /// Everything a run needs: scene, game parameters, solver settings and the
    /// Monte-Carlo plan.
    struct ScenarioConfig
    {
        Scenario scenario;
        GameConfig game;
        SolverParams solver;
        std::uint64_t seed = 1;
        std::size_t n_trials = 50;

        void validate() const;
    };

    /// Defaults: the reference scene plus the calibrated costs below.
    ScenarioConfig default_config();

    /// Parses `key = value` lines ('#' starts a comment). Keys absent from the
    /// text keep their default; unknown keys and malformed values throw
    /// std::invalid_argument naming the line and key.
    ScenarioConfig parse_config(const std::string &text);
    ScenarioConfig load_config(const std::string &path);

    /// Fully resolved configuration in the same format parse_config reads.
    std::string format_config(const ScenarioConfig &cfg);

    /// 64-bit FNV-1a of format_config(cfg), as 16 hex digits.
    std::string config_hash(const ScenarioConfig &cfg);

    /// Cost weights that make each cost term equal in size to the defender
    /// core term |-zeta1 AAoI + zeta2 ASINR| at the nominal operating point
    /// (g = g_max/2, sigma_att2 = sigma_att2_max/2, lambda at half its range,
    /// service rate = median over `realizations` channel draws).
    struct NominalPoint
    {
        double service_rate = 0.0;
        double core = 0.0;
        double cost_bs = 0.0;
        double cost_ris = 0.0;
        double cost_att = 0.0;
    };
    NominalPoint nominal_costs(const ScenarioConfig &cfg, std::size_t realizations);

    /// splitmix64 finalizer.
    std::uint64_t splitmix64(std::uint64_t x) noexcept;

    /// Seed of trial k: splitmix64(master + (k + 1) * 0x9E3779B97F4A7C15).
    /// A bijection of k for a fixed master, so trial streams never share a seed.
    std::uint64_t trial_seed(std::uint64_t master, std::uint64_t k) noexcept;

    /// Sweepable parameters: P, M, r_user, sigma_att2_max, epsilon.
    bool is_sweep_param(const std::string &name);
    void apply_param(ScenarioConfig &cfg, const std::string &name, double value);

    struct ResultRow
    {
        std::string experiment;
        std::string param;
        double value = 0.0;
        std::string solver;
        std::uint64_t seed = 0;
        double lambda = 0.0;
        double g = 0.0;
        double sigma_att2 = 0.0;
        double u_att = 0.0;
        double u_ris = 0.0;
        double u_bs = 0.0;
        double asinr = 0.0;
        double aaoi = 0.0;
        double gamma_sense = 0.0;
        std::size_t iters = 0;
        bool converged = false;
        double ms = 0.0;

        bool operator==(const ResultRow &) const = default;
    };

    struct RunOptions
    {
        std::size_t jobs = 1;
        bool record_time = false; // otherwise ms = 0 so output bytes are reproducible
        std::vector<std::string> solvers{"stackelberg", "nash", "average", "random", "ga"};
    };

    /// One realization (trial 0 of the master seed), one row per BI iteration.
    std::vector<ResultRow> run_convergence(const ScenarioConfig &cfg, const RunOptions &opt = {});

    /// For each value x each solver x each trial, one row.
    std::vector<ResultRow> run_sweep(const ScenarioConfig &cfg, const std::string &param,
                                     const std::vector<double> &values, const RunOptions &opt = {});

    /// Stackelberg against Nash over a sweep (by default the user radius).
    std::vector<ResultRow> run_compare(const ScenarioConfig &cfg, const std::string &param,
                                       const std::vector<double> &values, const RunOptions &opt = {});

    /// Order used for emission: experiment, value, solver, seed, then the
    /// remaining columns.
    void sort_rows(std::vector<ResultRow> &rows);

    struct Stat
    {
        double mean = 0.0;
        double std = 0.0; // sample std, 0 for a single sample
    };

    struct SummaryRow
    {
        std::string experiment;
        std::string param;
        double value = 0.0;
        std::string solver;
        std::size_t count = 0;
        Stat u_att, u_ris, u_bs, asinr, aaoi;
    };

    Stat mean_std(const std::vector<double> &xs);
    std::vector<SummaryRow> summarize(const std::vector<ResultRow> &rows);

    const std::string &csv_header();
    std::string to_csv(const std::vector<ResultRow> &rows);
    std::vector<ResultRow> parse_csv(const std::string &text);
    std::string to_json(const std::vector<ResultRow> &rows, const std::string &hash);
    std::string summary_csv(const std::vector<SummaryRow> &rows);
    std::string summary_json(const std::vector<SummaryRow> &rows, const std::string &hash);

    /// Writes rows to `path` and aggregates to `<path>.summary.<csv|json>`.
    /// For CSV the config hash goes to `<path>.hash`. Throws on empty rows, an
    /// unknown format or an unwritable path.
    void emit_results(const std::vector<ResultRow> &rows, const std::string &format, const std::string &path,
                      const std::string &hash);

    /// Runs task(i) for i in [0, n) on `jobs` threads.
    void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)> &task);

} // namespace isac
