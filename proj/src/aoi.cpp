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

#include "isac/aoi.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace isac
{
    double aaoi_mm1(const QueueParams &q)
    {
        const double l = q.lambda, g = q.gamma;
        if (!(l > 0.0 && g > 0.0 && l < g))
            throw std::domain_error("aaoi_mm1: requires 0 < lambda < gamma (lambda=" + std::to_string(l) +
                                    ", gamma=" + std::to_string(g) + ")");
        return (1.0 / g) * (1.0 + g / l + l * l / (g * g - l * g));
    }

    double cross_moment_ub(const QueueParams &q)
    {
        const double rho = q.rho();
        if (!(rho > 0.0 && rho < 1.0))
            throw std::domain_error("cross_moment_ub: requires 0 < rho < 1");
        return rho / (q.gamma * q.gamma * (1.0 - rho));
    }

    void AoiTrace::push(double generated, double received)
    {
        if (received < generated)
            throw std::invalid_argument("AoiTrace: reception precedes generation");
        if (!received_.empty() && (received < received_.back() || generated < generated_.back()))
            throw std::invalid_argument("AoiTrace: FCFS order violated");
        generated_.push_back(generated);
        received_.push_back(received);
    }

    double AoiTrace::trapezoid_area() const
    {
        double area = 0.0;
        double prev_gen = 0.0;
        for (std::size_t i = 0; i < generated_.size(); ++i)
        {
            const double b = generated_[i] - prev_gen;
            const double t = received_[i] - generated_[i];
            area += b * t + 0.5 * b * b;
            prev_gen = generated_[i];
        }
        if (!generated_.empty())
        {
            const double t_last = received_.back() - generated_.back();
            area += 0.5 * t_last * t_last;
        }
        return area;
    }

    double AoiTrace::sawtooth_area() const
    {
        // On [r_{i-1}, r_i) the age is t - g_{i-1}, with g_0 = r_0 = 0.
        double area = 0.0;
        double prev_gen = 0.0, prev_rec = 0.0;
        for (std::size_t i = 0; i < generated_.size(); ++i)
        {
            const double hi = received_[i] - prev_gen;
            const double lo = prev_rec - prev_gen;
            area += 0.5 * (hi * hi - lo * lo);
            prev_gen = generated_[i];
            prev_rec = received_[i];
        }
        return area;
    }

    AoiTrace run_fcfs(const std::vector<double> &inter_arrivals, const std::vector<double> &services)
    {
        if (inter_arrivals.size() != services.size())
            throw std::invalid_argument("run_fcfs: arrival and service streams differ in length");
        AoiTrace trace;
        double t = 0.0, server_free = 0.0;
        for (std::size_t i = 0; i < inter_arrivals.size(); ++i)
        {
            t += inter_arrivals[i];
            const double start = std::max(t, server_free);
            server_free = start + services[i];
            trace.push(t, server_free);
        }
        return trace;
    }

    double simulate_mm1_aaoi(const QueueParams &q, std::size_t n_events, Rng &rng)
    {
        if (n_events == 0)
            throw std::invalid_argument("simulate_mm1_aaoi: n_events must be >= 1");
        if (!(q.lambda > 0.0 && q.gamma > 0.0))
            throw std::invalid_argument("simulate_mm1_aaoi: rates must be positive");

        std::exponential_distribution<double> arrival(q.lambda);
        std::exponential_distribution<double> service(q.gamma);

        double t = 0.0, server_free = 0.0, area = 0.0, last_system = 0.0;
        for (std::size_t i = 0; i < n_events; ++i)
        {
            const double b = arrival(rng);
            t += b;
            const double start = std::max(t, server_free);
            server_free = start + service(rng);
            last_system = server_free - t;
            area += b * last_system + 0.5 * b * b;
        }
        area += 0.5 * last_system * last_system;
        return area / server_free;
    }

    CrossMoments estimate_cross_moment(const QueueParams &q, std::size_t n_events, Rng &rng)
    {
        if (n_events == 0)
            throw std::invalid_argument("estimate_cross_moment: n_events must be >= 1");
        if (!(q.lambda > 0.0 && q.gamma > 0.0))
            throw std::invalid_argument("estimate_cross_moment: rates must be positive");

        std::exponential_distribution<double> arrival(q.lambda);
        std::exponential_distribution<double> service(q.gamma);

        // Lindley recursion: U_i = max(0, U_{i-1} + O_{i-1} - B_i), U_0 = 0.
        CrossMoments m;
        double wait = 0.0, prev_service = 0.0;
        for (std::size_t i = 0; i < n_events; ++i)
        {
            const double b = arrival(rng);
            wait = std::max(0.0, wait + prev_service - b);
            const double o = service(rng);
            m.ub += wait * b;
            m.ob += o * b;
            m.tb += (wait + o) * b;
            m.mean_b += b;
            m.mean_o += o;
            prev_service = o;
        }
        const double n = static_cast<double>(n_events);
        m.ub /= n;
        m.ob /= n;
        m.tb /= n;
        m.mean_b /= n;
        m.mean_o /= n;
        m.samples = n_events;
        return m;
    }

} // namespace isac
