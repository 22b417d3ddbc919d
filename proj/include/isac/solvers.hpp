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

#include "isac/channel.hpp"
#include "isac/game.hpp"
#include "isac/optimizer.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace isac
{
    struct GaParams
    {
        std::size_t population = 40;
        std::size_t generations = 50; // the initial population counts as one
        std::size_t tournament = 3;
        double crossover_rate = 0.9;
        double blend_alpha = 0.5;     // BLX-alpha
        double mutation_scale = 0.1;  // std as a fraction of the box width

        void validate() const;
    };

    struct SolverParams
    {
        double tol_rel = 1e-6;        // GSSPI tolerance as a fraction of each box
        std::size_t max_evals = 200;  // per GSSPI call
        std::size_t starts = 1;
        double eps_conv = 1e-4;       // normalized strategy change
        std::size_t iter_max = 25;
        GaParams ga;

        ScalarSearchSpec search(double lo, double hi) const;
        void validate() const;
    };

    struct BsResponse
    {
        double lambda = 0.0;
        double utility = 0.0;
        bool degenerate = false; // no service capacity, lambda fixed at 0
        std::size_t evals = 0;
    };

    struct RisResponse
    {
        double g = 0.0;
        double lambda = 0.0;
        double utility = 0.0;
        bool feasible = true; // every user meets the SINR threshold
        std::size_t evals = 0;
    };

    struct AttackerResponse
    {
        double sigma_att2 = 0.0;
        double g = 0.0;
        double lambda = 0.0;
        double utility = 0.0;
        bool ris_feasible = true;
        bool strict_satisfied = true; // strict mode found an SINR-breaking attack
        std::size_t evals = 0;
    };

    /// BS best response for fixed (g, sigma_att2).
    BsResponse best_response_bs(const Game &game, double g, double sigma_att2, const SolverParams &params);
    BsResponse best_response_bs(const Game &game, const PhysicalMetrics &phys, double g, double sigma_att2,
                                const SolverParams &params);

    /// RIS best response to sigma_att2 with the BS responding inside.
    RisResponse best_response_ris(const Game &game, double sigma_att2, const SolverParams &params);

    /// RIS best response with lambda held fixed (simultaneous-move play).
    RisResponse best_response_ris_fixed(const Game &game, double lambda, double sigma_att2,
                                        const SolverParams &params);

    /// Attacker best response anticipating both followers.
    AttackerResponse best_response_attacker(const Game &game, const SolverParams &params);

    /// Attacker best response with (lambda, g) held fixed.
    AttackerResponse best_response_attacker_fixed(const Game &game, double lambda, double g,
                                                  const SolverParams &params);

    struct TraceStep
    {
        StrategyProfile profile;
        MetricsBundle metrics;
        double residual = 0.0;
    };

    struct EquilibriumTrace
    {
        std::string solver;
        std::vector<TraceStep> steps;
        bool converged = false;
        std::size_t evals = 0; // utility evaluations across all levels

        const TraceStep &last() const;
        std::size_t iterations() const noexcept { return steps.size(); }
    };

    /// Box midpoints, with lambda at half its admissible range.
    StrategyProfile midpoint_profile(const Game &game);

    /// Largest per-variable change, each normalized by its box width.
    double strategy_change(const Game &game, const StrategyProfile &a, const StrategyProfile &b);

    /// Backward induction: per iteration the BS, then the RIS (BS nested),
    /// then the attacker (both nested), until the profile settles.
    EquilibriumTrace solve_stackelberg_bi(const Game &game, const SolverParams &params);

    /// Simultaneous best responses until the profile settles.
    EquilibriumTrace solve_nash_br(const Game &game, const SolverParams &params);

    /// Every player at its box midpoint.
    EquilibriumTrace baseline_average(const Game &game);

    /// Every player uniform over its box: g, then sigma_att2, then lambda.
    EquilibriumTrace baseline_random(const Game &game, Rng &rng);

    /// Genetic search over sigma_att2 with both followers best-responding.
    EquilibriumTrace baseline_ga(const Game &game, const SolverParams &params, Rng &rng);

} // namespace isac
