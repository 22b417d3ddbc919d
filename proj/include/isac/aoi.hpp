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

#include <cstddef>
#include <vector>

namespace isac
{
    // Rates in updates per second.
    struct QueueParams
    {
        double lambda = 0.0; // arrival rate
        double gamma = 0.0;  // service rate

        double rho() const noexcept { return lambda / gamma; }
    };

    /// Average age of information of an FCFS M/M/1 queue:
    ///   (1/gamma) (1 + gamma/lambda + lambda^2 / (gamma^2 - lambda gamma))
    /// Throws std::domain_error unless 0 < lambda < gamma.
    double aaoi_mm1(const QueueParams &q);

    /// Generation/reception log of a single FCFS server. Update 0 is implicit:
    /// generated and delivered at t = 0.
    class AoiTrace
    {
    public:
        void push(double generated, double received);

        std::size_t size() const noexcept { return generated_.size(); }
        const std::vector<double> &generated() const noexcept { return generated_; }
        const std::vector<double> &received() const noexcept { return received_; }

        /// End of observation: reception time of the last update.
        double horizon() const noexcept { return received_.empty() ? 0.0 : received_.back(); }

        /// Age area on [0, horizon] from the trapezoid decomposition
        /// sum_i (B_i T_i + B_i^2 / 2) + T_n^2 / 2.
        double trapezoid_area() const;

        /// Age area on [0, horizon] by integrating the sawtooth piece by piece
        /// between consecutive receptions.
        double sawtooth_area() const;

        double average_age() const { return trapezoid_area() / horizon(); }

    private:
        std::vector<double> generated_;
        std::vector<double> received_;
    };

    /// Drives an FCFS single server from explicit inter-arrival and service
    /// samples (for deterministic streams in tests).
    AoiTrace run_fcfs(const std::vector<double> &inter_arrivals, const std::vector<double> &services);

    /// Time-average AoI of a simulated M/M/1 FCFS queue over n_events updates.
    /// Streams the trapezoid sum; no trace is kept.
    double simulate_mm1_aaoi(const QueueParams &q, std::size_t n_events, Rng &rng);

    struct CrossMoments
    {
        double ub = 0.0; // E[U B]: waiting time x preceding inter-arrival
        double tb = 0.0; // E[T B]: system time x preceding inter-arrival
        double ob = 0.0; // E[O B]: service time x preceding inter-arrival
        double mean_b = 0.0;
        double mean_o = 0.0;
        std::size_t samples = 0;
    };

    /// Empirical cross moments from a simulated M/M/1 FCFS queue.
    CrossMoments estimate_cross_moment(const QueueParams &q, std::size_t n_events, Rng &rng);

    /// Closed form E[U B] = rho / (gamma^2 (1 - rho)).
    double cross_moment_ub(const QueueParams &q);

} // namespace isac
