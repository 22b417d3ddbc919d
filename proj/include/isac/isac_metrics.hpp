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
#include "isac/linalg.hpp"
#include "isac/scenario.hpp"

#include <stdexcept>
#include <vector>

namespace isac
{
    /// The three decision variables: sensing update rate (BS), RIS amplitude
    /// gain (drone) and injected noise power in watts (attacker).
    struct StrategyProfile
    {
        double lambda = 0.0;
        double g = 0.0;
        double sigma_att2 = 0.0;

        bool operator==(const StrategyProfile &) const = default;
    };

    /// Ambient noise powers in watts.
    struct NoisePowers
    {
        double sigma2 = 0.0;   // RIS input / echo path
        double sigma_y2 = 0.0; // user receivers
        double sigma_r2 = 0.0; // BS sensing receiver
    };

    double dbm_per_hz_to_watts(double psd_dbm_hz, double bandwidth_hz);
    double watts_to_dbm(double watts);
    NoisePowers noise_powers(const Scenario &sc);

    struct BeamformingDesign
    {
        CMatrix B_r;              // M x M
        CMatrix B_c;              // M x N, column i is b_{c,i}
        CMatrix R;                // M x M transmit covariance
        std::vector<CMatrix> R_i; // per-user b_{c,i} b_{c,i}^H
    };

    struct SensingChain
    {
        CMatrix F; // desired echo channel, M x M
        CMatrix X; // M x P
        CMatrix C; // residual SI, M x M
        CMatrix Z; // equivalent noise covariance
        CMatrix J; // interference plus noise covariance
    };

    /// Thrown when a user's equivalent channel vanishes and no matched-filter
    /// beam can be formed.
    class DegenerateChannel : public std::domain_error
    {
    public:
        using std::domain_error::domain_error;
    };

    /// Unit-modulus per-element phases of the RIS for the configured profile.
    std::vector<cplx> ris_phases(const Scenario &sc);

    /// Phi = g * I_P.
    CMatrix ris_matrix(double g, std::size_t P, double g_max);

    /// Phi = g * Diag(phases).
    CMatrix ris_matrix(double g, const std::vector<cplx> &phases, double g_max);

    /// h_i = H^H Phi^H h1_i + h2_i, i.e. the column form of h1^H Phi H + h2^H.
    CMatrix equivalent_channel(const ChannelSet &ch, std::size_t i, const CMatrix &phi);

    /// Matched-filter communication beams against the equivalent channels and
    /// an isotropic sensing beam, splitting power_budget as split : 1 - split.
    BeamformingDesign build_beamforming(const ChannelSet &ch, const CMatrix &phi, double power_budget, double split);

    double comm_sinr(std::size_t i, const ChannelSet &ch, const BeamformingDesign &bf, const CMatrix &phi,
                     double sigma2, double sigma_att2, double sigma_y2);

    double asinr(const ChannelSet &ch, const BeamformingDesign &bf, const CMatrix &phi, double sigma2,
                 double sigma_att2, double sigma_y2);

    SensingChain sensing_chain(const ChannelSet &ch, const CMatrix &phi, const BeamformingDesign &bf, double epsilon,
                               double sigma2, double sigma_att2, double sigma_r2);

    /// Re Tr(F R F^H J^-1), computed through a Cholesky solve against J.
    double sensing_sinr(const SensingChain &chain, const CMatrix &R);

    /// eta * log2(1 + sinr), bits/s.
    double sensing_rate(double sinr, double eta);

    /// Link metrics for Phi = g * Diag(phases) with everything that does not
    /// depend on (g, sigma_att2) factored out once per channel realization.
    /// With D = Diag(phases) unitary and Hd = D H:
    ///   F = g^2 Hd^H T Hd,  X X^H = g^4 Hd^H T T^H Hd,  C = eps g H^H D H,
    ///   Z = s (g^3 (E + E^H) + g^4 X1 + 2 g^2 H^H H) + (sigma_r2 + sigma_att2) I,
    /// where E = H^H T Hd and s = sigma2 + sigma_att2. Agrees with the generic
    /// sensing_chain / comm_sinr route to rounding.
    class LinkModel
    {
    public:
        struct Result
        {
            std::vector<double> per_user_sinr;
            double sensing_sinr = 0.0;
        };

        LinkModel(const ChannelSet &ch, std::vector<cplx> phases, double epsilon, double power_budget, double split,
                  NoisePowers noise);

        Result evaluate(double g, double sigma_att2) const;

    private:
        std::size_t M_ = 0, N_ = 0;
        double epsilon_ = 0.0, p_c_ = 0.0, p_r_ = 0.0;
        NoisePowers noise_;
        CMatrix F1_;   // Hd^H T Hd
        CMatrix XX1_;  // Hd^H T T^H Hd
        CMatrix E1_;   // H^H T Hd + its Hermitian
        CMatrix G1_;   // H^H H
        CMatrix K1_;   // H^H D H
        std::vector<CMatrix> v_;  // H^H D^H h1_i
        std::vector<CMatrix> h2_;
        std::vector<double> h1_norm2_;
    };

} // namespace isac
