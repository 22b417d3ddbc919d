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

#include <array>
#include <cstddef>
#include <optional>
#include <string>

namespace isac
{
    using Vec3 = std::array<double, 3>;

    inline constexpr double speed_of_light = 299792458.0;

    double distance(const Vec3 &a, const Vec3 &b) noexcept;

    // Positions in meters, frequency in Hz.
    struct Geometry
    {
        Vec3 bs_pos{0.0, 0.0, 1.5};
        Vec3 ris_pos{5.0, 10.0, 1.5};
        Vec3 target_pos{0.0, 60.0, 1.5};
        Vec3 user_center{30.0, 10.0, 1.5};
        double r_user = 10.0;
        double carrier_freq = 3e9;

        double wavelength() const noexcept { return speed_of_light / carrier_freq; }

        /// Throws std::invalid_argument with the offending field.
        void validate() const;
    };

    // Large-scale loss model: 10 b1 log10(r/r0) + b2 + 10 b3 log10(f/f0) + shadow,
    // with shadow ~ N(0, b4^2) dB drawn per link.
    struct PathLossParams
    {
        double beta1 = 2.0;
        double beta2 = 32.4;
        double beta3 = 2.0;
        double beta4 = 4.0;
        double r0 = 1.0;
        double f0 = 1e9;

        void validate() const;
    };

    enum class PhaseProfile
    {
        zero,
        sensing_aligned,
    };

    std::string to_string(PhaseProfile p);
    PhaseProfile phase_profile_from_string(const std::string &s);

    /// Physical-layer description of one scene. Everything needed to draw a
    /// channel realization and evaluate link metrics for a strategy profile.
    struct Scenario
    {
        std::size_t M = 4;  // BS antennas
        std::size_t N = 2;  // users
        std::size_t P = 16; // RIS elements

        Geometry geometry;
        PathLossParams path_loss;

        double radar_cross_section = 1.0; // m^2

        // Optional Rician K factor for the BS-drone link; unset means H = H_LoS + H_NLoS.
        std::optional<double> rician_k;
        double corr_rho_bs = 0.0;  // exponential correlation coefficient, 0 -> identity
        double corr_rho_ris = 0.0;

        double epsilon = 0.1;      // residual self-interference fraction
        double eta = 1e7;          // bandwidth, Hz
        double P_trans = 0.9;      // W
        double power_split = 0.5;  // fraction of P_trans on communication beams

        // Noise densities in dBm/Hz; converted to watts with eta.
        double sigma2_dbm_hz = -174.0;
        double sigma_y2_dbm_hz = -174.0;
        double sigma_r2_dbm_hz = -174.0;

        double g_max = 1.0;
        PhaseProfile phase_profile = PhaseProfile::zero;

        double L_pkt = 1e5; // bits per sensing update

        void validate() const;
    };

} // namespace isac
