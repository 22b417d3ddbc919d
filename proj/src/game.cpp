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

#include "isac/game.hpp"

#include "isac/aoi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace isac
{
    std::string to_string(AttackerMode m)
    {
        return m == AttackerMode::unconstrained ? "unconstrained" : "strict";
    }

    AttackerMode attacker_mode_from_string(const std::string &s)
    {
        if (s == "unconstrained")
            return AttackerMode::unconstrained;
        if (s == "strict")
            return AttackerMode::strict;
        throw std::invalid_argument("attacker_mode: expected unconstrained|strict, got '" + s + "'");
    }

    double GameConfig::sinr_threshold() const noexcept
    {
        return std::pow(10.0, sinr_threshold_db / 10.0);
    }

    void GameConfig::validate() const
    {
        auto require = [](bool ok, const char *field, const char *why) {
            if (!ok)
                throw std::invalid_argument(std::string(field) + ": " + why);
        };
        require(zeta1 > 0.0, "zeta1", "must be > 0");
        require(zeta2 > 0.0, "zeta2", "must be > 0");
        require(cost_bs >= 0.0, "cost_bs", "must be >= 0");
        require(cost_ris >= 0.0, "cost_ris", "must be >= 0");
        require(cost_att >= 0.0, "cost_att", "must be >= 0");
        require(std::isfinite(sinr_threshold_db), "sinr_threshold_db", "must be finite");
        require(rho_max > 0.0 && rho_max < 1.0, "rho_max", "must lie in (0, 1)");
        if (sigma_att2_max)
            require(*sigma_att2_max >= 0.0, "sigma_att2_max", "must be >= 0");
        require(aaoi_penalty_factor >= 1.0, "aaoi_penalty_factor", "must be >= 1");
    }

    Game::Game(Scenario scenario, GameConfig config, ChannelSet channels)
        : scenario_(std::move(scenario)), config_(std::move(config)), channels_(std::move(channels))
    {
        scenario_.validate();
        config_.validate();
        if (channels_.M() != scenario_.M || channels_.P() != scenario_.P || channels_.N() != scenario_.N)
            throw std::invalid_argument("Game: channel dimensions do not match the scenario");

        noise_ = noise_powers(scenario_);
        phases_ = ris_phases(scenario_);
        sigma_att2_max_ = config_.sigma_att2_max.value_or(noise_.sigma2);
        if (sigma_att2_max_ > noise_.sigma2 * (1.0 + 1e-12))
            throw std::invalid_argument("sigma_att2_max: exceeds the ambient noise power sigma^2 = " +
                                        std::to_string(noise_.sigma2) + " W");

        link_.emplace(channels_, phases_, scenario_.epsilon, scenario_.P_trans, scenario_.power_split, noise_);
        reference_rate_ = physical(scenario_.g_max, 0.0).service_rate;
        // Without any echo the reference falls back to one bit/s/Hz.
        const double anchor = reference_rate_ > 0.0 ? reference_rate_ : scenario_.eta / scenario_.L_pkt;
        aaoi_penalty_ = config_.aaoi_penalty_factor * aaoi_mm1({0.5 * anchor, anchor});
    }

    PhysicalMetrics Game::physical(double g, double sigma_att2) const
    {
        if (!(g >= 0.0 && g <= scenario_.g_max))
            throw std::invalid_argument("physical: gain " + std::to_string(g) + " outside [0, g_max]");
        if (!(sigma_att2 >= 0.0))
            throw std::invalid_argument("physical: sigma_att2 must be >= 0");

        LinkModel::Result r = link_->evaluate(g, sigma_att2);
        PhysicalMetrics pm;
        double sum = 0.0;
        for (double v : r.per_user_sinr)
            sum += v;
        pm.per_user_sinr = std::move(r.per_user_sinr);
        pm.asinr = sum / static_cast<double>(scenario_.N);
        pm.sensing_sinr = r.sensing_sinr;
        pm.gamma_sense = sensing_rate(pm.sensing_sinr, scenario_.eta);
        pm.service_rate = pm.gamma_sense / scenario_.L_pkt;
        return pm;
    }

    PhysicalMetrics Game::physical_reference(double g, double sigma_att2) const
    {
        const CMatrix phi = ris_matrix(g, phases_, scenario_.g_max);
        const BeamformingDesign bf = build_beamforming(channels_, phi, scenario_.P_trans, scenario_.power_split);

        PhysicalMetrics pm;
        pm.per_user_sinr.reserve(scenario_.N);
        double sum = 0.0;
        for (std::size_t i = 0; i < scenario_.N; ++i)
        {
            pm.per_user_sinr.push_back(
                comm_sinr(i, channels_, bf, phi, noise_.sigma2, sigma_att2, noise_.sigma_y2));
            sum += pm.per_user_sinr.back();
        }
        pm.asinr = sum / static_cast<double>(scenario_.N);

        const SensingChain chain =
            sensing_chain(channels_, phi, bf, scenario_.epsilon, noise_.sigma2, sigma_att2, noise_.sigma_r2);
        pm.sensing_sinr = sensing_sinr(chain, bf.R);
        pm.gamma_sense = sensing_rate(pm.sensing_sinr, scenario_.eta);
        pm.service_rate = pm.gamma_sense / scenario_.L_pkt;
        return pm;
    }

    double Game::aaoi(double lambda, double service_rate, bool *penalized) const
    {
        double value = aaoi_penalty_;
        bool pen = true;
        if (service_rate > 0.0 && lambda > 0.0 && lambda < lambda_max(service_rate))
        {
            const double a = aaoi_mm1({lambda, service_rate});
            if (a < aaoi_penalty_)
            {
                value = a;
                pen = false;
            }
        }
        if (penalized)
            *penalized = pen;
        return value;
    }

    MetricsBundle Game::assemble(const StrategyProfile &s, const PhysicalMetrics &phys) const
    {
        MetricsBundle mb;
        mb.per_user_sinr = phys.per_user_sinr;
        mb.asinr = phys.asinr;
        mb.sensing_sinr = phys.sensing_sinr;
        mb.gamma_sense = phys.gamma_sense;
        mb.service_rate = phys.service_rate;
        mb.aaoi = aaoi(s.lambda, phys.service_rate, &mb.aaoi_penalized);

        const double core = -config_.zeta1 * mb.aaoi + config_.zeta2 * mb.asinr;
        mb.u_bs = core - config_.cost_bs * s.lambda;
        mb.u_ris = core - config_.cost_ris * s.g;
        mb.u_att = -core - config_.cost_att * std::sqrt(s.sigma_att2);
        return mb;
    }

    MetricsBundle Game::evaluate(const StrategyProfile &s) const
    {
        check_profile(s);
        return assemble(s, physical(s.g, s.sigma_att2));
    }

    bool Game::sinr_feasible(const PhysicalMetrics &phys) const
    {
        const double thr = config_.sinr_threshold();
        return std::all_of(phys.per_user_sinr.begin(), phys.per_user_sinr.end(),
                           [thr](double v) { return v >= thr; });
    }

    bool Game::feasible_follower(const StrategyProfile &s) const
    {
        if (!(s.g >= 0.0 && s.g <= scenario_.g_max) || !(s.lambda >= 0.0))
            return false;
        if (!(s.sigma_att2 >= 0.0 && s.sigma_att2 <= sigma_att2_max_))
            return false;
        try
        {
            const PhysicalMetrics phys = physical(s.g, s.sigma_att2);
            return s.lambda <= lambda_max(phys.service_rate) && sinr_feasible(phys);
        }
        catch (const DegenerateChannel &)
        {
            // No beam can reach some user: its SINR is zero.
            return false;
        }
    }

    void Game::check_profile(const StrategyProfile &s) const
    {
        if (!(s.lambda >= 0.0) || !std::isfinite(s.lambda))
            throw std::invalid_argument("profile: lambda must be finite and >= 0");
        if (!(s.g >= 0.0 && s.g <= scenario_.g_max))
            throw std::invalid_argument("profile: g outside [0, g_max]");
        if (!(s.sigma_att2 >= 0.0 && s.sigma_att2 <= sigma_att2_max_))
            throw std::invalid_argument("profile: sigma_att2 outside [0, sigma_att2_max]");
    }

} // namespace isac
