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

#include "isac/linalg.hpp"
#include "isac/scenario.hpp"

#include <random>
#include <vector>

namespace isac
{
    using Rng = std::mt19937_64;

    /// One realization of every channel in the scene.
    ///   H  : P x M, BS -> RIS
    ///   h1 : N of P x 1, RIS -> user i
    ///   h2 : N of M x 1, BS -> user i
    ///   T  : P x P, RIS -> target -> RIS single-bounce response
    struct ChannelSet
    {
        CMatrix H;
        std::vector<CMatrix> h1;
        std::vector<CMatrix> h2;
        CMatrix T;
        double beta5 = 0.0;
        std::vector<Vec3> user_positions;

        std::size_t M() const noexcept { return H.cols(); }
        std::size_t P() const noexcept { return H.rows(); }
        std::size_t N() const noexcept { return h1.size(); }
    };

    struct TargetResponse
    {
        CMatrix T;
        double beta5 = 0.0;
    };

    double path_loss_db(double r_s, double f_s, const PathLossParams &p, double shadow_db);

    /// Linear amplitude factor 10^(-loss/20).
    double amplitude_gain(double loss_db) noexcept;

    /// Half-wavelength ULA response; entry k is exp(-j pi k sin(theta)).
    CMatrix steering_vector(double theta, std::size_t n);

    /// Angle of the link from -> to, measured from array broadside for an
    /// array laid along the global x axis: sin(theta) = dx / |to - from|.
    double array_angle(const Vec3 &from, const Vec3 &to);

    /// Correlation matrix with entries rho^|i-j|; rho = 0 gives the identity.
    CMatrix exponential_correlation(std::size_t n, double rho);

    /// BS->RIS channel for a given i.i.d. CN(0,1) draw `g_iid` (P x M) and
    /// shadowing sample. Deterministic; the sampler below feeds it.
    CMatrix bs_drone_channel(const Geometry &geom, const PathLossParams &p, const CMatrix &corr_bs,
                             const CMatrix &corr_ris, const CMatrix &g_iid, double shadow_db,
                             std::optional<double> rician_k = std::nullopt);

    CMatrix sample_bs_drone_channel(const Geometry &geom, const PathLossParams &p, const CMatrix &corr_bs,
                                    const CMatrix &corr_ris, Rng &rng, std::optional<double> rician_k = std::nullopt);

    /// i.i.d. CN(0, 10^(-gain_db/10)) entries. gain_db = +inf yields zeros.
    CMatrix sample_rayleigh_vector(std::size_t n, double gain_db, Rng &rng);

    /// beta5 = sqrt(wavelength^2 S / ((4 pi)^3 R^4)), T = beta5 a3 a3^H.
    TargetResponse target_channel(const Geometry &geom, double radar_cross_section, double theta3, std::size_t P);

    /// Uniform points on the horizontal disk of radius r_user around center.
    std::vector<Vec3> sample_user_positions(const Vec3 &center, double r_user, std::size_t n, Rng &rng);

    /// Draws a full ChannelSet. Stream consumption order: user positions,
    /// BS-RIS shadowing and NLoS draw, then per user (RIS-user, BS-user).
    ChannelSet sample_channel_set(const Scenario &sc, Rng &rng);

    /// One standard complex Gaussian sample, CN(0, 1).
    cplx complex_normal(Rng &rng);

} // namespace isac
