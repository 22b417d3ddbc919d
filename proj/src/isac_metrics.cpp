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

#include "isac/isac_metrics.hpp"

#include <cmath>
#include <numbers>

namespace isac
{
    double dbm_per_hz_to_watts(double psd_dbm_hz, double bandwidth_hz)
    {
        if (!(bandwidth_hz > 0.0))
            throw std::invalid_argument("dbm_per_hz_to_watts: bandwidth must be positive");
        const double dbm = psd_dbm_hz + 10.0 * std::log10(bandwidth_hz);
        return std::pow(10.0, (dbm - 30.0) / 10.0);
    }

    double watts_to_dbm(double watts)
    {
        return 10.0 * std::log10(watts) + 30.0;
    }

    NoisePowers noise_powers(const Scenario &sc)
    {
        return {dbm_per_hz_to_watts(sc.sigma2_dbm_hz, sc.eta), dbm_per_hz_to_watts(sc.sigma_y2_dbm_hz, sc.eta),
                dbm_per_hz_to_watts(sc.sigma_r2_dbm_hz, sc.eta)};
    }

    std::vector<cplx> ris_phases(const Scenario &sc)
    {
        if (sc.phase_profile == PhaseProfile::zero)
            return std::vector<cplx>(sc.P, cplx(1.0, 0.0));

        // Element p takes the conjugate phase of the target steering entry p.
        const double theta3 = array_angle(sc.geometry.ris_pos, sc.geometry.target_pos);
        const CMatrix a3 = steering_vector(theta3, sc.P);
        std::vector<cplx> out(sc.P);
        for (std::size_t p = 0; p < sc.P; ++p)
            out[p] = std::conj(a3(p, 0)) / std::abs(a3(p, 0));
        return out;
    }

    CMatrix ris_matrix(double g, std::size_t P, double g_max)
    {
        return ris_matrix(g, std::vector<cplx>(P, cplx(1.0, 0.0)), g_max);
    }

    CMatrix ris_matrix(double g, const std::vector<cplx> &phases, double g_max)
    {
        if (!(g >= 0.0 && g <= g_max))
            throw std::invalid_argument("ris_matrix: gain " + std::to_string(g) + " outside [0, " +
                                        std::to_string(g_max) + "]");
        CMatrix phi(phases.size(), phases.size());
        for (std::size_t p = 0; p < phases.size(); ++p)
            phi(p, p) = g * phases[p];
        return phi;
    }

    CMatrix equivalent_channel(const ChannelSet &ch, std::size_t i, const CMatrix &phi)
    {
        if (i >= ch.N())
            throw std::out_of_range("equivalent_channel: user index " + std::to_string(i) + " out of range");
        return hermitian(ch.H) * (hermitian(phi) * ch.h1[i]) + ch.h2[i];
    }

    BeamformingDesign build_beamforming(const ChannelSet &ch, const CMatrix &phi, double power_budget, double split)
    {
        if (!(split >= 0.0 && split <= 1.0))
            throw std::invalid_argument("build_beamforming: split must lie in [0, 1]");
        if (!(power_budget > 0.0))
            throw std::invalid_argument("build_beamforming: power budget must be positive");

        const std::size_t M = ch.M();
        const std::size_t N = ch.N();
        const double p_c = split * power_budget;
        const double p_r = (1.0 - split) * power_budget;

        BeamformingDesign bf;
        bf.B_r = std::sqrt(p_r / static_cast<double>(M)) * CMatrix::identity(M);
        bf.B_c = CMatrix(M, N);
        bf.R = gram(bf.B_r);

        const double per_user = std::sqrt(p_c / static_cast<double>(N));
        for (std::size_t i = 0; i < N; ++i)
        {
            const CMatrix h = equivalent_channel(ch, i, phi);
            const double nrm = h.norm();
            if (!(nrm > 0.0))
                throw DegenerateChannel("build_beamforming: equivalent channel of user " + std::to_string(i) +
                                        " is zero");
            for (std::size_t m = 0; m < M; ++m)
                bf.B_c(m, i) = per_user * h(m, 0) / nrm;

            CMatrix b(M, 1);
            for (std::size_t m = 0; m < M; ++m)
                b(m, 0) = bf.B_c(m, i);
            bf.R_i.push_back(gram(b));
            bf.R += bf.R_i.back();
        }
        return bf;
    }

    double comm_sinr(std::size_t i, const ChannelSet &ch, const BeamformingDesign &bf, const CMatrix &phi,
                     double sigma2, double sigma_att2, double sigma_y2)
    {
        if (i >= bf.R_i.size())
            throw std::out_of_range("comm_sinr: user index " + std::to_string(i) + " out of range");

        const CMatrix h = equivalent_channel(ch, i, phi);
        const double signal = std::max(0.0, quad_form(h, bf.R_i[i]).real());
        const double interference = std::max(0.0, quad_form(h, bf.R - bf.R_i[i]).real());
        const double ris_noise_gain = squared_norm(hermitian(phi) * ch.h1[i]); // h1^H Phi Phi^H h1
        const double denom = interference + (sigma2 + sigma_att2) * ris_noise_gain + (sigma_att2 + sigma_y2);
        if (!(denom > 0.0))
            throw std::domain_error("comm_sinr: zero interference-plus-noise for user " + std::to_string(i));
        return signal / denom;
    }

    double asinr(const ChannelSet &ch, const BeamformingDesign &bf, const CMatrix &phi, double sigma2,
                 double sigma_att2, double sigma_y2)
    {
        const std::size_t N = ch.N();
        if (N == 0)
            throw std::invalid_argument("asinr: no users");
        double sum = 0.0;
        for (std::size_t i = 0; i < N; ++i)
            sum += comm_sinr(i, ch, bf, phi, sigma2, sigma_att2, sigma_y2);
        return sum / static_cast<double>(N);
    }

    SensingChain sensing_chain(const ChannelSet &ch, const CMatrix &phi, const BeamformingDesign &bf, double epsilon,
                               double sigma2, double sigma_att2, double sigma_r2)
    {
        if (!(epsilon >= 0.0 && epsilon <= 1.0))
            throw std::invalid_argument("sensing_chain: epsilon must lie in [0, 1]");

        const std::size_t M = ch.M();
        const CMatrix Hh = hermitian(ch.H);
        const CMatrix phi_h = hermitian(phi);
        const CMatrix phi_phi_h = phi * phi_h;

        const CMatrix T_phi = ch.T * phi;          // T Phi
        const CMatrix Hh_phi_h = Hh * phi_h;       // H^H Phi^H

        SensingChain sc;
        sc.X = Hh_phi_h * T_phi;                    // H^H Phi^H T Phi
        sc.F = sc.X * ch.H;                         // H^H Phi^H T Phi H
        sc.C = epsilon * (Hh * phi * ch.H);         // eps H^H Phi H

        const double s_in = sigma2 + sigma_att2;
        const CMatrix term_a = Hh * phi_phi_h * T_phi * ch.H;     // H^H Phi Phi^H T Phi H
        const CMatrix term_b = sc.X * phi_h * ch.H;               // H^H Phi^H T Phi Phi^H H
        const CMatrix term_c = Hh_phi_h * phi * ch.H;             // H^H Phi^H Phi H

        sc.Z = s_in * (term_a + term_b) + s_in * gram(sc.X) + (2.0 * s_in) * term_c +
               (sigma_r2 + sigma_att2) * CMatrix::identity(M);
        sc.J = sc.Z + sc.C * bf.R * hermitian(sc.C);
        return sc;
    }

    double sensing_sinr(const SensingChain &chain, const CMatrix &R)
    {
        const CMatrix signal = chain.F * R * hermitian(chain.F);
        if (signal.max_abs() == 0.0)
            return 0.0;
        const cplx tr = trace(solve_hpd(chain.J, signal));
        if (std::abs(tr.imag()) > 1e-9 * std::max(std::abs(tr), 1e-300))
            throw std::logic_error("sensing_sinr: trace has a non-negligible imaginary part");
        return std::max(0.0, tr.real());
    }

    double sensing_rate(double sinr, double eta)
    {
        // log1p keeps full precision for the very small SINRs of weak echoes.
        return eta * std::log1p(sinr) / std::numbers::ln2;
    }

} // namespace isac

namespace isac
{
    LinkModel::LinkModel(const ChannelSet &ch, std::vector<cplx> phases, double epsilon, double power_budget,
                         double split, NoisePowers noise)
        : M_(ch.M()), N_(ch.N()), epsilon_(epsilon), p_c_(split * power_budget), p_r_((1.0 - split) * power_budget),
          noise_(noise)
    {
        if (phases.size() != ch.P())
            throw std::invalid_argument("LinkModel: phase vector length does not match P");
        if (!(power_budget > 0.0) || !(split >= 0.0 && split <= 1.0))
            throw std::invalid_argument("LinkModel: invalid power budget or split");

        const CMatrix D = CMatrix::diagonal(phases);
        const CMatrix Hh = hermitian(ch.H);
        const CMatrix Hd = D * ch.H;
        const CMatrix Hdh = hermitian(Hd);
        const CMatrix THd = ch.T * Hd;

        F1_ = Hdh * THd;
        XX1_ = hermitian(THd) * THd; // Hd^H T^H T Hd, T Hermitian
        const CMatrix E = Hh * THd;
        E1_ = E + hermitian(E);
        G1_ = Hh * ch.H;
        K1_ = Hh * Hd;
        for (std::size_t i = 0; i < N_; ++i)
        {
            v_.push_back(Hdh * ch.h1[i]);
            h2_.push_back(ch.h2[i]);
            h1_norm2_.push_back(squared_norm(ch.h1[i]));
        }
    }

    LinkModel::Result LinkModel::evaluate(double g, double sigma_att2) const
    {
        const std::size_t M = M_;
        const double g2 = g * g, g3 = g2 * g, g4 = g2 * g2;

        // Equivalent channels and matched-filter beams.
        std::vector<CMatrix> h(N_), b(N_);
        CMatrix R = (p_r_ / static_cast<double>(M)) * CMatrix::identity(M);
        const double per_user = std::sqrt(p_c_ / static_cast<double>(N_));
        for (std::size_t i = 0; i < N_; ++i)
        {
            h[i] = g * v_[i] + h2_[i];
            const double nrm = h[i].norm();
            if (!(nrm > 0.0))
                throw DegenerateChannel("LinkModel: equivalent channel of user " + std::to_string(i) + " is zero");
            b[i] = (per_user / nrm) * h[i];
            R += gram(b[i]);
        }

        Result out;
        out.per_user_sinr.resize(N_);
        for (std::size_t i = 0; i < N_; ++i)
        {
            const double total = std::max(0.0, quad_form(h[i], R).real());
            cplx hb = 0.0;
            for (std::size_t m = 0; m < M; ++m)
                hb += std::conj(h[i](m, 0)) * b[i](m, 0);
            const double signal = std::norm(hb);
            const double interference = std::max(0.0, total - signal);
            const double denom = interference + (noise_.sigma2 + sigma_att2) * g2 * h1_norm2_[i] +
                                 (sigma_att2 + noise_.sigma_y2);
            if (!(denom > 0.0))
                throw std::domain_error("LinkModel: zero interference-plus-noise for user " + std::to_string(i));
            out.per_user_sinr[i] = signal / denom;
        }

        if (g == 0.0)
            return out; // F = 0

        const double s_in = noise_.sigma2 + sigma_att2;
        CMatrix J = (s_in * g3) * E1_ + (s_in * g4) * XX1_ + (2.0 * s_in * g2) * G1_ +
                    (noise_.sigma_r2 + sigma_att2) * CMatrix::identity(M);
        J += (epsilon_ * epsilon_ * g2) * (K1_ * R * hermitian(K1_));

        const CMatrix signal = (g4) * (F1_ * R * hermitian(F1_));
        const cplx tr = trace(solve_hpd(J, signal));
        out.sensing_sinr = std::max(0.0, tr.real());
        return out;
    }

} // namespace isac
