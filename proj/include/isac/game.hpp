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
#include "isac/isac_metrics.hpp"
#include "isac/scenario.hpp"

#include <optional>
#include <string>
#include <vector>

namespace isac
{
    enum class AttackerMode
    {
        unconstrained,
        strict,
    };

    std::string to_string(AttackerMode m);
    AttackerMode attacker_mode_from_string(const std::string &s);

    /// Utility weights and costs.
    ///
    /// Units: zeta1 multiplies an age in seconds, zeta2 a linear SINR; cost_bs
    /// is per (update/s), cost_ris per unit gain and cost_att per sqrt(W) of
    /// injected noise amplitude.
    ///
    /// The default costs come from nominal_costs() on the default scene with
    /// 1000 realizations, rounded to two significant digits.
    struct GameConfig
    {
        double zeta1 = 1.0;
        double zeta2 = 1.0;
        double cost_bs = 5.9e16;
        double cost_ris = 6.4e8;
        double cost_att = 2.3e15;
        double sinr_threshold_db = 5.0;
        double rho_max = 0.999;
        // Upper bound of the attacker's noise power in watts; unset means the
        // ambient noise power sigma^2.
        std::optional<double> sigma_att2_max;
        // A_max = factor * AAoI(rho = 0.5) at the reference service rate.
        double aaoi_penalty_factor = 1e3;
        AttackerMode attacker_mode = AttackerMode::unconstrained;

        double sinr_threshold() const noexcept;
        void validate() const;
    };

    /// Link-level quantities that depend on (g, sigma_att2) only.
    struct PhysicalMetrics
    {
        std::vector<double> per_user_sinr;
        double asinr = 0.0;
        double sensing_sinr = 0.0;
        double gamma_sense = 0.0;  // bits/s
        double service_rate = 0.0; // updates/s
    };

    struct MetricsBundle
    {
        std::vector<double> per_user_sinr;
        double asinr = 0.0;
        double sensing_sinr = 0.0;
        double gamma_sense = 0.0;
        double service_rate = 0.0;
        double aaoi = 0.0;
        bool aaoi_penalized = false;
        double u_bs = 0.0;
        double u_ris = 0.0;
        double u_att = 0.0;
    };

    /// One channel realization bound to its scenario and game parameters.
    /// Immutable after construction; evaluation is const and thread-safe.
    class Game
    {
    public:
        Game(Scenario scenario, GameConfig config, ChannelSet channels);

        const Scenario &scenario() const noexcept { return scenario_; }
        const GameConfig &config() const noexcept { return config_; }
        const ChannelSet &channels() const noexcept { return channels_; }
        const NoisePowers &noise() const noexcept { return noise_; }

        double g_max() const noexcept { return scenario_.g_max; }
        double sigma_att2_max() const noexcept { return sigma_att2_max_; }

        /// Service rate at full RIS gain without attack; anchors A_max.
        double reference_service_rate() const noexcept { return reference_rate_; }
        double aaoi_penalty() const noexcept { return aaoi_penalty_; }

        /// Largest admissible update rate, rho_max * service_rate.
        double lambda_max(double service_rate) const noexcept { return config_.rho_max * service_rate; }

        PhysicalMetrics physical(double g, double sigma_att2) const;

        /// Same quantities through the generic matrix route; slow, used to
        /// cross-check the factored model.
        PhysicalMetrics physical_reference(double g, double sigma_att2) const;

        /// M/M/1 AAoI with the penalty applied outside 0 < lambda < lambda_max
        /// and as a cap inside it.
        double aaoi(double lambda, double service_rate, bool *penalized = nullptr) const;

        MetricsBundle evaluate(const StrategyProfile &s) const;

        /// Utilities for `s` from precomputed link metrics at (s.g, s.sigma_att2).
        MetricsBundle assemble(const StrategyProfile &s, const PhysicalMetrics &phys) const;

        /// Followers' constraint set: every user at or above the SINR threshold,
        /// lambda within [0, lambda_max] and g within [0, g_max].
        bool feasible_follower(const StrategyProfile &s) const;
        bool sinr_feasible(const PhysicalMetrics &phys) const;

        /// Throws std::invalid_argument on a profile outside the strategy boxes.
        void check_profile(const StrategyProfile &s) const;

    private:
        Scenario scenario_;
        GameConfig config_;
        ChannelSet channels_;
        NoisePowers noise_;
        std::vector<cplx> phases_;
        std::optional<LinkModel> link_;
        double sigma_att2_max_ = 0.0;
        double reference_rate_ = 0.0;
        double aaoi_penalty_ = 0.0;
    };

} // namespace isac
