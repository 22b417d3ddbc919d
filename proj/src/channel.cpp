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

#include "isac/channel.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace isac
{
    namespace
    {
        void require_unit_diagonal(const CMatrix &c, const char *name)
        {
            if (!c.is_square())
                throw std::invalid_argument(std::string(name) + ": correlation matrix must be square, got " + c.shape());
            for (std::size_t i = 0; i < c.rows(); ++i)
                if (std::abs(c(i, i) - cplx(1.0, 0.0)) > 1e-9)
                    throw std::invalid_argument(std::string(name) + ": diagonal entry " + std::to_string(i) +
                                                " deviates from 1");
        }

        double normal_sample(Rng &rng, double stddev)
        {
            std::normal_distribution<double> n(0.0, 1.0);
            return stddev * n(rng);
        }
    } // namespace

    cplx complex_normal(Rng &rng)
    {
        std::normal_distribution<double> n(0.0, std::sqrt(0.5));
        const double re = n(rng);
        const double im = n(rng);
        return {re, im};
    }

    double path_loss_db(double r_s, double f_s, const PathLossParams &p, double shadow_db)
    {
        if (!(r_s > 0.0))
            throw std::invalid_argument("path_loss_db: link distance must be positive, got " + std::to_string(r_s));
        if (!(f_s > 0.0))
            throw std::invalid_argument("path_loss_db: carrier frequency must be positive, got " + std::to_string(f_s));
        return 10.0 * p.beta1 * std::log10(r_s / p.r0) + p.beta2 + 10.0 * p.beta3 * std::log10(f_s / p.f0) + shadow_db;
    }

    double amplitude_gain(double loss_db) noexcept
    {
        return std::pow(10.0, -loss_db / 20.0);
    }

    CMatrix steering_vector(double theta, std::size_t n)
    {
        if (n == 0)
            throw std::invalid_argument("steering_vector: element count must be >= 1");
        CMatrix a(n, 1);
        const double s = std::sin(theta);
        for (std::size_t k = 0; k < n; ++k)
            a(k, 0) = std::polar(1.0, -std::numbers::pi * static_cast<double>(k) * s);
        return a;
    }

    double array_angle(const Vec3 &from, const Vec3 &to)
    {
        const double d = distance(from, to);
        if (!(d > 0.0))
            throw std::invalid_argument("array_angle: coincident endpoints");
        return std::asin((to[0] - from[0]) / d);
    }

    CMatrix exponential_correlation(std::size_t n, double rho)
    {
        CMatrix c(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
            {
                const auto d = static_cast<int>(i > j ? i - j : j - i);
                c(i, j) = d == 0 ? 1.0 : std::pow(rho, d);
            }
        return c;
    }

    CMatrix bs_drone_channel(const Geometry &geom, const PathLossParams &p, const CMatrix &corr_bs,
                             const CMatrix &corr_ris, const CMatrix &g_iid, double shadow_db,
                             std::optional<double> rician_k)
    {
        require_unit_diagonal(corr_bs, "corr_bs");
        require_unit_diagonal(corr_ris, "corr_ris");
        const std::size_t M = corr_bs.rows();
        const std::size_t P = corr_ris.rows();
        if (g_iid.rows() != P || g_iid.cols() != M)
            throw std::invalid_argument("bs_drone_channel: NLoS draw must be " + std::to_string(P) + "x" +
                                        std::to_string(M) + ", got " + g_iid.shape());

        const double theta1 = array_angle(geom.bs_pos, geom.ris_pos); // AoD at BS
        const double theta2 = array_angle(geom.ris_pos, geom.bs_pos); // AoA at drone
        const CMatrix los = steering_vector(theta2, P) * hermitian(steering_vector(theta1, M));
        const CMatrix nlos = hermitian_sqrt(corr_ris) * g_iid * hermitian_sqrt(corr_bs);

        double w_los = 1.0, w_nlos = 1.0;
        if (rician_k)
        {
            w_los = std::sqrt(*rician_k / (*rician_k + 1.0));
            w_nlos = std::sqrt(1.0 / (*rician_k + 1.0));
        }

        const double loss = path_loss_db(distance(geom.bs_pos, geom.ris_pos), geom.carrier_freq, p, shadow_db);
        return amplitude_gain(loss) * (w_los * los + w_nlos * nlos);
    }

    CMatrix sample_bs_drone_channel(const Geometry &geom, const PathLossParams &p, const CMatrix &corr_bs,
                                    const CMatrix &corr_ris, Rng &rng, std::optional<double> rician_k)
    {
        const double shadow = normal_sample(rng, p.beta4);
        CMatrix g(corr_ris.rows(), corr_bs.rows());
        for (auto &v : g.data())
            v = complex_normal(rng);
        return bs_drone_channel(geom, p, corr_bs, corr_ris, g, shadow, rician_k);
    }

    CMatrix sample_rayleigh_vector(std::size_t n, double gain_db, Rng &rng)
    {
        if (n == 0)
            throw std::invalid_argument("sample_rayleigh_vector: element count must be >= 1");
        const double sigma = std::sqrt(std::pow(10.0, -gain_db / 10.0));
        CMatrix h(n, 1);
        for (auto &v : h.data())
            v = sigma * complex_normal(rng);
        return h;
    }

    TargetResponse target_channel(const Geometry &geom, double radar_cross_section, double theta3, std::size_t P)
    {
        const double R = distance(geom.ris_pos, geom.target_pos);
        if (!(R > 0.0))
            throw std::invalid_argument("target_channel: RIS-target distance must be positive");
        if (!(radar_cross_section > 0.0))
            throw std::invalid_argument("target_channel: radar cross section must be positive");

        const double w = geom.wavelength();
        const double four_pi = 4.0 * std::numbers::pi;
        const double beta5 = std::sqrt(w * w * radar_cross_section / (four_pi * four_pi * four_pi * R * R * R * R));
        const CMatrix a3 = steering_vector(theta3, P);
        return {beta5 * gram(a3), beta5};
    }

    std::vector<Vec3> sample_user_positions(const Vec3 &center, double r_user, std::size_t n, Rng &rng)
    {
        if (!(r_user >= 0.0))
            throw std::invalid_argument("sample_user_positions: r_user must be >= 0");
        std::uniform_real_distribution<double> u(0.0, 1.0);
        std::vector<Vec3> out;
        out.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
        {
            // sqrt for area-uniform radius
            const double r = r_user * std::sqrt(u(rng));
            const double phi = 2.0 * std::numbers::pi * u(rng);
            out.push_back({center[0] + r * std::cos(phi), center[1] + r * std::sin(phi), center[2]});
        }
        return out;
    }

    ChannelSet sample_channel_set(const Scenario &sc, Rng &rng)
    {
        sc.validate();
        const auto &geom = sc.geometry;

        ChannelSet cs;
        cs.user_positions = sample_user_positions(geom.user_center, geom.r_user, sc.N, rng);

        const CMatrix corr_bs = exponential_correlation(sc.M, sc.corr_rho_bs);
        const CMatrix corr_ris = exponential_correlation(sc.P, sc.corr_rho_ris);
        cs.H = sample_bs_drone_channel(geom, sc.path_loss, corr_bs, corr_ris, rng, sc.rician_k);

        for (const auto &u : cs.user_positions)
        {
            // Users drawn exactly on top of an array would give r = 0; the
            // disk sits well away from both with default geometry.
            const double loss1 =
                path_loss_db(distance(geom.ris_pos, u), geom.carrier_freq, sc.path_loss, normal_sample(rng, sc.path_loss.beta4));
            cs.h1.push_back(sample_rayleigh_vector(sc.P, loss1, rng));
            const double loss2 =
                path_loss_db(distance(geom.bs_pos, u), geom.carrier_freq, sc.path_loss, normal_sample(rng, sc.path_loss.beta4));
            cs.h2.push_back(sample_rayleigh_vector(sc.M, loss2, rng));
        }

        const double theta3 = array_angle(geom.ris_pos, geom.target_pos);
        auto target = target_channel(geom, sc.radar_cross_section, theta3, sc.P);
        cs.T = std::move(target.T);
        cs.beta5 = target.beta5;
        return cs;
    }

} // namespace isac
